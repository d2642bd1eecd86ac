use rayon::prelude::*;
use serde::Serialize;

use super::{LegMatrix, Rational};
use crate::error::{Error, Result};

/// An integer affine form `Σ coeffs[i]·μ_i + constant` in the grid parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl Affine {
    pub fn new(coeffs: Vec<i64>, constant: i64) -> Self {
        Affine { coeffs, constant }
    }

    /// The parameter `μ_var` among `nparams` parameters.
    pub fn var(var: usize, nparams: usize) -> Self {
        let mut coeffs = vec![0; nparams];
        coeffs[var] = 1;
        Affine { coeffs, constant: 0 }
    }

    /// `μ_a − μ_b`.
    pub fn diff(a: usize, b: usize, nparams: usize) -> Self {
        let mut coeffs = vec![0; nparams];
        coeffs[a] += 1;
        coeffs[b] -= 1;
        Affine { coeffs, constant: 0 }
    }

    pub fn eval(&self, point: &[i64]) -> Rational {
        let v: i64 = self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum::<i64>() + self.constant;
        Rational::from(v)
    }

    fn uses(&self, var: usize) -> bool {
        self.coeffs.get(var).is_some_and(|c| *c != 0)
    }
}

/// An expression tree over matrices whose entries are polynomials in λ.
#[derive(Debug, Clone)]
pub enum Expr {
    /// A matrix independent of the parameters.
    Leaf(LegMatrix),
    /// A λ-polynomial matrix evaluated at λ = an affine form in the parameters.
    Spectral { mat: LegMatrix, arg: Affine },
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
}

impl Expr {
    pub fn spectral(mat: LegMatrix, arg: Affine) -> Self {
        Expr::Spectral { mat, arg }
    }

    /// An upper bound on the degree in parameter `var`.
    pub fn degree_bound(&self, var: usize) -> u32 {
        match self {
            Expr::Leaf(_) => 0,
            Expr::Spectral { mat, arg } => {
                if arg.uses(var) {
                    mat.max_degree().unwrap_or(0)
                } else {
                    0
                }
            }
            Expr::Product(fs) => fs.iter().map(|f| f.degree_bound(var)).sum(),
            Expr::Sum(ts) => ts.iter().map(|t| t.degree_bound(var)).max().unwrap_or(0),
        }
    }

    /// Leg count and leg dimension, checked to be uniform.
    pub fn shape(&self) -> Result<(usize, usize)> {
        let shapes: Vec<(usize, usize)> = match self {
            Expr::Leaf(m) | Expr::Spectral { mat: m, .. } => return Ok((m.legs(), m.dim())),
            Expr::Product(v) | Expr::Sum(v) => v.iter().map(Expr::shape).collect::<Result<_>>()?,
        };
        let first = *shapes
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty product or sum".into()))?;
        if shapes.iter().any(|s| *s != first) {
            return Err(Error::DimensionMismatch(format!("mixed operand shapes {shapes:?}")));
        }
        Ok(first)
    }

    pub fn eval(&self, point: &[i64]) -> LegMatrix {
        match self {
            Expr::Leaf(m) => m.clone(),
            Expr::Spectral { mat, arg } => mat.evaluate(&arg.eval(point)),
            Expr::Product(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().expect("empty product").eval(point);
                for f in it {
                    acc = acc.mul(&f.eval(point));
                }
                acc
            }
            Expr::Sum(ts) => {
                let mut it = ts.iter();
                let mut acc = it.next().expect("empty sum").eval(point);
                for t in it {
                    acc = &acc + &t.eval(point);
                }
                acc
            }
        }
    }
}

/// A grid point and entry where two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridWitness {
    pub point: Vec<i64>,
    pub row: usize,
    pub col: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridOutcome {
    pub pass: bool,
    pub points: usize,
    pub witness: Option<GridWitness>,
}

/// Compares two expressions on the integer grid `{0..=bound}^nparams`.
///
/// When both sides have degree at most `bound` in every parameter, agreement
/// on the grid is equivalent to equality as polynomials; a bound below the
/// structural degree of either side is rejected.
pub fn grid_verify_identity(lhs: &Expr, rhs: &Expr, nparams: usize, bound: u32) -> Result<GridOutcome> {
    let (ls, rs) = (lhs.shape()?, rhs.shape()?);
    if ls != rs {
        return Err(Error::DimensionMismatch(format!("sides have shapes {ls:?} and {rs:?}")));
    }
    for var in 0..nparams {
        let degree = lhs.degree_bound(var).max(rhs.degree_bound(var));
        if degree > bound {
            return Err(Error::GridBoundTooSmall { var, degree, bound });
        }
    }
    let side = bound as usize + 1;
    let points: Vec<Vec<i64>> = (0..side.pow(nparams as u32))
        .map(|mut k| {
            let mut p = vec![0i64; nparams];
            for slot in p.iter_mut().rev() {
                *slot = (k % side) as i64;
                k /= side;
            }
            p
        })
        .collect();
    let witness = points.par_iter().find_map_first(|p| {
        let (a, b) = (lhs.eval(p), rhs.eval(p));
        a.first_difference(&b).map(|d| GridWitness {
            point: p.clone(),
            row: d.row,
            col: d.col,
            lhs: d.lhs.coeff(0),
            rhs: d.rhs.coeff(0),
        })
    });
    Ok(GridOutcome { pass: witness.is_none(), points: points.len(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn check_of(n: usize, map: impl Fn(usize, usize) -> (usize, usize)) -> LegMatrix {
        let entries = (0..n).flat_map(|x| {
            (0..n).map({
                let map = &map;
                move |y| {
                    let (u, v) = map(x, y);
                    (x * n + y, u * n + v, Poly::one())
                }
            })
        });
        LegMatrix::from_entries(2, n, entries.collect::<Vec<_>>()).unwrap()
    }

    fn baxterize(check: &LegMatrix) -> LegMatrix {
        &check.scale_poly(&Poly::lambda()) + &LegMatrix::identity(2, check.dim())
    }

    fn ybe1(check: &LegMatrix) -> (Expr, Expr) {
        let sp = baxterize(check);
        let a12 = LegMatrix::tensor_embed(&sp, (0, 1), 3).unwrap();
        let a23 = LegMatrix::tensor_embed(&sp, (1, 2), 3).unwrap();
        let d = Affine::diff(0, 1, 2);
        let (l1, l2) = (Affine::var(0, 2), Affine::var(1, 2));
        let lhs = Expr::Product(vec![
            Expr::spectral(a12.clone(), d.clone()),
            Expr::spectral(a23.clone(), l1.clone()),
            Expr::spectral(a12.clone(), l2.clone()),
        ]);
        let rhs = Expr::Product(vec![
            Expr::spectral(a23.clone(), l2),
            Expr::spectral(a12, l1),
            Expr::spectral(a23, d),
        ]);
        (lhs, rhs)
    }

    #[test]
    fn ybe_flip_passes() {
        let (l, r) = ybe1(&LegMatrix::permutation(2));
        let out = grid_verify_identity(&l, &r, 2, 3).unwrap();
        assert!(out.pass);
        assert_eq!(out.points, 16);
    }

    #[test]
    fn ybe_lyubashenko3_passes() {
        let (l, r) = ybe1(&check_of(3, |x, y| ((y + 1) % 3, (x + 2) % 3)));
        assert!(grid_verify_identity(&l, &r, 2, 3).unwrap().pass);
    }

    #[test]
    fn corrupted_check_fails_with_witness() {
        // move the image of (0,0) from (1,1) to (0,0) in the m = 2 Lyubashenko matrix
        let bad = check_of(2, |x, y| if (x, y) == (0, 0) { (0, 0) } else { ((y + 1) % 2, (x + 1) % 2) });
        let (l, r) = ybe1(&bad);
        let out = grid_verify_identity(&l, &r, 2, 3).unwrap();
        assert!(!out.pass);
        let w = out.witness.unwrap();
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn bound_below_degree_is_rejected() {
        let (l, r) = ybe1(&LegMatrix::permutation(2));
        assert!(matches!(
            grid_verify_identity(&l, &r, 2, 1),
            Err(Error::GridBoundTooSmall { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let l = Expr::Leaf(LegMatrix::identity(2, 2));
        let r = Expr::Leaf(LegMatrix::identity(3, 2));
        assert!(matches!(grid_verify_identity(&l, &r, 1, 1), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn agrees_with_symbolic_unitarity() {
        // R(λ)·P R(−λ) P for the flip, compared symbolically and on the grid
        let p = LegMatrix::permutation(3);
        let r = &LegMatrix::identity(2, 3).scale_poly(&Poly::lambda()) + &p;
        let r21 = p.mul(&r).mul(&p);
        let neg = r21.compose_affine(&Rational::from(-1), &Rational::zero());
        let symbolic = r.mul(&neg);
        let expect = LegMatrix::identity(2, 3).scale_poly(&Poly::from_terms([
            (0, Rational::one()),
            (2, Rational::from(-1)),
        ]));
        assert_eq!(symbolic, expect);
        let lhs = Expr::Product(vec![
            Expr::spectral(r, Affine::var(0, 1)),
            Expr::spectral(r21, Affine::new(vec![-1], 0)),
        ]);
        let rhs = Expr::spectral(expect, Affine::var(0, 1));
        assert!(grid_verify_identity(&lhs, &rhs, 1, 2).unwrap().pass);
    }
}
