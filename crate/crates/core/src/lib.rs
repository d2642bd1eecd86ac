//! Exact verification of set-theoretic Yang-Baxter solutions from braces, their
//! Baxterized R-matrices, periodic transfer matrices, symmetries and quadratic
//! algebras.

#![allow(clippy::needless_range_loop)]

pub mod brace;
pub mod chain;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod qalgebra;
pub mod report;
pub mod rmatrix;
pub mod solution;
pub mod symmetry;

pub use error::{Error, Result};
