//! Exact scalars, λ-polynomials and sparse tensor-leg matrices.

mod grid;
mod legmatrix;
mod poly;
mod rational;

pub use grid::{grid_verify_identity, Affine, Expr, GridOutcome, GridWitness};
pub use legmatrix::{digits_to_index, index_to_digits, EntryDiff, LegMatrix, PartialOp};
pub use poly::Poly;
pub use rational::{ParseRationalError, Rational};
