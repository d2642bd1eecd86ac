use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Rows at or above this size are multiplied in parallel.
const PAR_ROWS: usize = 64;

/// A square sparse matrix over `Poly` acting on `dim^legs` basis states.
///
/// Basis states are ordered lexicographically with leg 0 most significant, so
/// `e_{i,j} ⊗ e_{k,l}` sits at row `i·dim + k`, column `j·dim + l`. Only
/// nonzero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LegMatrix {
    legs: usize,
    dim: usize,
    rows: Vec<BTreeMap<usize, Poly>>,
}

/// The partial operations on a matrix acting on two or more legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialOp {
    /// Transposition on the first tensor factor.
    TransposeLeg1,
    /// Transposition on the second tensor factor.
    TransposeLeg2,
    /// Trace over the given leg, removing it.
    TraceLeg(usize),
}

/// A single entry where two matrices differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDiff {
    pub row: usize,
    pub col: usize,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl LegMatrix {
    pub fn zeros(legs: usize, dim: usize) -> Self {
        let size = dim.pow(legs as u32);
        LegMatrix { legs, dim, rows: vec![BTreeMap::new(); size] }
    }

    pub fn identity(legs: usize, dim: usize) -> Self {
        let mut m = LegMatrix::zeros(legs, dim);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.insert(i, Poly::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries<I>(legs: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Poly)>,
    {
        let mut m = LegMatrix::zeros(legs, dim);
        let size = m.size();
        for (r, c, v) in entries {
            if r >= size || c >= size {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside a {size}x{size} matrix"
                )));
            }
            m.add_to(r, c, &v);
        }
        Ok(m)
    }

    /// The single-leg matrix unit `e_{i,j}`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        assert!(i < dim && j < dim, "matrix unit index out of range");
        let mut m = LegMatrix::zeros(1, dim);
        m.rows[i].insert(j, Poly::one());
        m
    }

    /// A single-leg diagonal matrix.
    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = LegMatrix::zeros(1, values.len());
        for (i, v) in values.iter().enumerate() {
            m.add_to(i, i, &Poly::constant(v.clone()));
        }
        m
    }

    /// The flip operator `P = Σ e_{i,j} ⊗ e_{j,i}` on two legs.
    pub fn permutation(dim: usize) -> Self {
        let mut m = LegMatrix::zeros(2, dim);
        for a in 0..dim {
            for b in 0..dim {
                m.rows[a * dim + b].insert(b * dim + a, Poly::one());
            }
        }
        m
    }

    /// The matrix of a map on basis states: column `s` has a single 1 in row `map[s]`.
    pub fn from_basis_map(legs: usize, dim: usize, map: &[usize]) -> Result<Self> {
        let mut m = LegMatrix::zeros(legs, dim);
        if map.len() != m.size() {
            return Err(Error::DimensionMismatch(format!(
                "basis map of length {} for {} states",
                map.len(),
                m.size()
            )));
        }
        for (s, &t) in map.iter().enumerate() {
            if t >= map.len() {
                return Err(Error::DimensionMismatch(format!("image {t} out of range")));
            }
            m.add_to(t, s, &Poly::one());
        }
        Ok(m)
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Poly> {
        self.rows.get(row)?.get(&col)
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &Poly)> {
        self.rows[row].iter().map(|(c, v)| (*c, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Splits a basis index into per-leg digits, leg 0 first.
    pub fn digits(&self, index: usize) -> Vec<usize> {
        index_to_digits(index, self.legs, self.dim)
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits_to_index(digits, self.dim)
    }

    fn add_to(&mut self, r: usize, c: usize, v: &Poly) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(e) => {
                e.add_assign_ref(v);
                if e.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    fn same_shape(&self, other: &LegMatrix) -> bool {
        self.legs == other.legs && self.dim == other.dim
    }

    fn assert_shape(&self, other: &LegMatrix, op: &str) {
        assert!(
            self.same_shape(other),
            "{op}: shape mismatch ({} legs of dim {} vs {} legs of dim {})",
            self.legs,
            self.dim,
            other.legs,
            other.dim
        );
    }

    pub fn check_shape(&self, other: &LegMatrix) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{} legs of dim {} vs {} legs of dim {}",
                self.legs, self.dim, other.legs, other.dim
            )))
        }
    }

    pub fn map_entries<F: Fn(&Poly) -> Poly + Sync>(&self, f: F) -> LegMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((*c, w))
                    })
                    .collect()
            })
            .collect();
        LegMatrix { legs: self.legs, dim: self.dim, rows }
    }

    pub fn scale(&self, c: &Rational) -> LegMatrix {
        self.map_entries(|v| v.scale(c))
    }

    pub fn scale_poly(&self, p: &Poly) -> LegMatrix {
        self.map_entries(|v| v * p)
    }

    pub fn transpose(&self) -> LegMatrix {
        let mut out = LegMatrix::zeros(self.legs, self.dim);
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v.clone());
        }
        out
    }

    /// Matrix product. Panics when the shapes differ; use [`LegMatrix::try_mul`]
    /// for a checked variant.
    pub fn mul(&self, other: &LegMatrix) -> LegMatrix {
        self.assert_shape(other, "mul");
        let row_product = |row: &BTreeMap<usize, Poly>| {
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    acc.entry(*c).or_default().add_product(a, b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            acc
        };
        let rows = if self.size() >= PAR_ROWS {
            self.rows.par_iter().map(row_product).collect()
        } else {
            self.rows.iter().map(row_product).collect()
        };
        LegMatrix { legs: self.legs, dim: self.dim, rows }
    }

    pub fn try_mul(&self, other: &LegMatrix) -> Result<LegMatrix> {
        self.check_shape(other)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, n: u32) -> LegMatrix {
        let mut acc = LegMatrix::identity(self.legs, self.dim);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &LegMatrix) -> LegMatrix {
        &self.mul(other) - &other.mul(self)
    }

    /// Tensor product; `self` occupies the leading legs.
    pub fn kron(&self, other: &LegMatrix) -> LegMatrix {
        assert_eq!(self.dim, other.dim, "kron: leg dimensions differ");
        let inner = other.size();
        let mut out = LegMatrix::zeros(self.legs + other.legs, self.dim);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.rows[r1 * inner + r2].insert(c1 * inner + c2, a * b);
            }
        }
        out
    }

    /// `self ⊗ self ⊗ … ⊗ self` with `n` factors.
    pub fn kron_power(&self, n: usize) -> LegMatrix {
        let mut acc = LegMatrix::identity(0, self.dim);
        for _ in 0..n {
            acc = acc.kron(self);
        }
        acc
    }

    /// Places `op` (acting on `positions.len()` legs) on the given legs of a
    /// `total`-leg space, identity elsewhere. Leg `k` of `op` acts on leg
    /// `positions[k]`; positions need not be adjacent or increasing.
    pub fn embed(op: &LegMatrix, positions: &[usize], total: usize) -> Result<LegMatrix> {
        if positions.len() != op.legs {
            return Err(Error::DimensionMismatch(format!(
                "operator on {} legs placed on {} positions",
                op.legs,
                positions.len()
            )));
        }
        for (k, &p) in positions.iter().enumerate() {
            if p >= total {
                return Err(Error::InvalidLegs(format!("position {p} not below {total}")));
            }
            if positions[..k].contains(&p) {
                return Err(Error::InvalidLegs(format!("position {p} repeated")));
            }
        }
        let dim = op.dim;
        let strides: Vec<usize> = (0..total).map(|l| dim.pow((total - 1 - l) as u32)).collect();
        let rest: Vec<usize> = (0..total).filter(|l| !positions.contains(l)).collect();
        let op_digits: Vec<Vec<usize>> = (0..op.size()).map(|i| op.digits(i)).collect();
        let place = |digits: &[usize]| -> usize {
            digits.iter().zip(positions).map(|(d, p)| d * strides[*p]).sum()
        };
        let mut out = LegMatrix::zeros(total, dim);
        let n_rest = dim.pow(rest.len() as u32);
        for k in 0..n_rest {
            let rest_digits = index_to_digits(k, rest.len(), dim);
            let base: usize = rest_digits.iter().zip(&rest).map(|(d, l)| d * strides[*l]).sum();
            for (r, c, v) in op.entries() {
                out.rows[base + place(&op_digits[r])].insert(base + place(&op_digits[c]), v.clone());
            }
        }
        Ok(out)
    }

    /// Two-leg embedding `A_{ij}`: leg 0 of `op` acts on leg `i`, leg 1 on leg `j`.
    pub fn tensor_embed(op: &LegMatrix, positions: (usize, usize), total: usize) -> Result<LegMatrix> {
        if op.legs != 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected a two-leg operator, got {} legs",
                op.legs
            )));
        }
        LegMatrix::embed(op, &[positions.0, positions.1], total)
    }

    /// Transposition on a single leg.
    pub fn partial_transpose(&self, leg: usize) -> Result<LegMatrix> {
        if leg >= self.legs {
            return Err(Error::InvalidLegs(format!("leg {leg} of {}", self.legs)));
        }
        let mut out = LegMatrix::zeros(self.legs, self.dim);
        for (r, c, v) in self.entries() {
            let mut rd = self.digits(r);
            let mut cd = self.digits(c);
            std::mem::swap(&mut rd[leg], &mut cd[leg]);
            out.rows[self.index_of(&rd)].insert(self.index_of(&cd), v.clone());
        }
        Ok(out)
    }

    /// Trace over one leg; the result acts on the remaining legs in order.
    pub fn partial_trace(&self, leg: usize) -> Result<LegMatrix> {
        if leg >= self.legs {
            return Err(Error::InvalidLegs(format!("leg {leg} of {}", self.legs)));
        }
        let mut out = LegMatrix::zeros(self.legs - 1, self.dim);
        for (r, c, v) in self.entries() {
            let mut rd = self.digits(r);
            let mut cd = self.digits(c);
            if rd[leg] != cd[leg] {
                continue;
            }
            rd.remove(leg);
            cd.remove(leg);
            let (ri, ci) = (out.index_of(&rd), out.index_of(&cd));
            out.add_to(ri, ci, v);
        }
        Ok(out)
    }

    pub fn partial_op(&self, op: PartialOp) -> Result<LegMatrix> {
        match op {
            PartialOp::TransposeLeg1 | PartialOp::TransposeLeg2 if self.legs != 2 => Err(
                Error::InvalidLegs(format!("partial transpose needs 2 legs, got {}", self.legs)),
            ),
            PartialOp::TransposeLeg1 => self.partial_transpose(0),
            PartialOp::TransposeLeg2 => self.partial_transpose(1),
            PartialOp::TraceLeg(l) => self.partial_trace(l),
        }
    }

    /// The constant matrix of `λ^k` coefficients.
    pub fn coefficient(&self, k: u32) -> LegMatrix {
        self.map_entries(|v| Poly::constant(v.coeff(k)))
    }

    pub fn evaluate(&self, at: &Rational) -> LegMatrix {
        self.map_entries(|v| Poly::constant(v.eval(at)))
    }

    /// Substitutes `λ ↦ a·λ + b` in every entry.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> LegMatrix {
        self.map_entries(|v| v.compose_affine(a, b))
    }

    /// Largest degree among the entries; `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries().filter_map(|(_, _, v)| v.degree()).max()
    }

    /// The first entry (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &LegMatrix) -> Option<EntryDiff> {
        self.assert_shape(other, "compare");
        for r in 0..self.size() {
            if self.rows[r] == other.rows[r] {
                continue;
            }
            let cols: std::collections::BTreeSet<usize> =
                self.rows[r].keys().chain(other.rows[r].keys()).copied().collect();
            for c in cols {
                let lhs = self.rows[r].get(&c).cloned().unwrap_or_default();
                let rhs = other.rows[r].get(&c).cloned().unwrap_or_default();
                if lhs != rhs {
                    return Some(EntryDiff { row: r, col: c, lhs, rhs });
                }
            }
        }
        None
    }

    /// If this is a 0/1 permutation matrix, the map sending each column to
    /// the row holding its 1.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let mut image = vec![usize::MAX; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 {
                return None;
            }
            let (c, v) = row.iter().next()?;
            if *v != Poly::one() || image[*c] != usize::MAX {
                return None;
            }
            image[*c] = r;
        }
        Some(image)
    }
}

pub fn index_to_digits(mut index: usize, legs: usize, dim: usize) -> Vec<usize> {
    let mut d = vec![0; legs];
    for slot in d.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    d
}

pub fn digits_to_index(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, d| acc * dim + d)
}

impl Add for &LegMatrix {
    type Output = LegMatrix;
    fn add(self, rhs: &LegMatrix) -> LegMatrix {
        self.assert_shape(rhs, "add");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v);
        }
        out
    }
}

impl Sub for &LegMatrix {
    type Output = LegMatrix;
    fn sub(self, rhs: &LegMatrix) -> LegMatrix {
        self.assert_shape(rhs, "sub");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, &-v);
        }
        out
    }
}

impl Mul for &LegMatrix {
    type Output = LegMatrix;
    fn mul(self, rhs: &LegMatrix) -> LegMatrix {
        LegMatrix::mul(self, rhs)
    }
}

impl Neg for &LegMatrix {
    type Output = LegMatrix;
    fn neg(self) -> LegMatrix {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Debug for LegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LegMatrix({} legs, dim {}, {} nonzero)", self.legs, self.dim, self.nnz())?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  [{r}, {c}] = {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lam_plus(m: &LegMatrix, c: &LegMatrix) -> LegMatrix {
        &m.scale_poly(&Poly::lambda()) + c
    }

    #[test]
    fn permutation_small_cases() {
        assert_eq!(LegMatrix::permutation(1), LegMatrix::identity(2, 1));
        let p2 = LegMatrix::permutation(2);
        // (0,1) <-> (1,0) are indices 1 and 2
        assert_eq!(p2.get(1, 2), Some(&Poly::one()));
        assert_eq!(p2.get(2, 1), Some(&Poly::one()));
        assert_eq!(p2.get(0, 0), Some(&Poly::one()));
        assert_eq!(p2.nnz(), 4);
        for n in 2..=4 {
            let p = LegMatrix::permutation(n);
            assert_eq!(p.mul(&p), LegMatrix::identity(2, n));
        }
    }

    #[test]
    fn embed_identity_cases() {
        let p = LegMatrix::permutation(2);
        assert_eq!(LegMatrix::tensor_embed(&p, (0, 1), 2).unwrap(), p);
        assert_eq!(LegMatrix::tensor_embed(&p, (1, 0), 2).unwrap(), p);
    }

    #[test]
    fn embed_errors() {
        let p = LegMatrix::permutation(2);
        assert!(matches!(LegMatrix::tensor_embed(&p, (1, 1), 3), Err(Error::InvalidLegs(_))));
        assert!(matches!(LegMatrix::tensor_embed(&p, (0, 3), 3), Err(Error::InvalidLegs(_))));
        let one = LegMatrix::unit(2, 0, 1);
        assert!(matches!(LegMatrix::tensor_embed(&one, (0, 1), 3), Err(Error::DimensionMismatch(_))));
    }

    /// Brute-force embedding built entry by entry from index arithmetic.
    fn brute_embed(op: &LegMatrix, i: usize, j: usize, total: usize) -> LegMatrix {
        let n = op.dim();
        let size = n.pow(total as u32);
        let mut entries = Vec::new();
        for r in 0..size {
            for c in 0..size {
                let rd = index_to_digits(r, total, n);
                let cd = index_to_digits(c, total, n);
                if (0..total).any(|l| l != i && l != j && rd[l] != cd[l]) {
                    continue;
                }
                if let Some(v) = op.get(rd[i] * n + rd[j], cd[i] * n + cd[j]) {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        LegMatrix::from_entries(total, n, entries).unwrap()
    }

    fn lyubashenko2_check() -> LegMatrix {
        // ř(i,j) = (j+1, i-1) mod 2 as Σ e_{x,σ_x(y)} ⊗ e_{y,τ_y(x)}
        let n = 2;
        let entries = (0..n).flat_map(|x| {
            (0..n).map(move |y| (x * n + y, ((y + 1) % n) * n + (x + n - 1) % n, Poly::one()))
        });
        LegMatrix::from_entries(2, n, entries).unwrap()
    }

    #[test]
    fn embed_on_reversed_distant_legs() {
        let r = lyubashenko2_check();
        let e = LegMatrix::tensor_embed(&r, (2, 0), 3).unwrap();
        assert_eq!(e, brute_embed(&r, 2, 0, 3));
        // basis vector (0,1,0): the pair (leg2, leg0) = (0,0) maps to ř(0,0) = (1,1),
        // so the image is (leg0, leg1, leg2) = (1, 1, 1).
        let src = digits_to_index(&[0, 1, 0], 2);
        let images: Vec<usize> = (0..8).filter(|&r| e.get(r, src).is_some()).collect();
        assert_eq!(images, vec![digits_to_index(&[1, 1, 1], 2)]);
    }

    #[test]
    fn partial_transpose_of_flip() {
        for n in [2usize, 3] {
            let pt = LegMatrix::permutation(n).partial_transpose(0).unwrap();
            assert_eq!(pt.mul(&pt), pt.scale(&Rational::from(n)));
        }
    }

    #[test]
    fn trace_of_identity() {
        let t = LegMatrix::identity(2, 3).partial_trace(0).unwrap();
        assert_eq!(t, LegMatrix::identity(1, 3).scale(&Rational::from(3)));
        assert!(LegMatrix::identity(2, 3).partial_trace(2).is_err());
    }

    #[test]
    fn partial_op_dispatch() {
        let m = LegMatrix::identity(3, 2);
        assert!(m.partial_op(PartialOp::TransposeLeg1).is_err());
        assert_eq!(m.partial_op(PartialOp::TraceLeg(1)).unwrap().legs(), 2);
    }

    #[test]
    fn coefficient_extraction() {
        let r = lyubashenko2_check();
        let spectral = lam_plus(&r, &LegMatrix::identity(2, 2));
        assert_eq!(spectral.coefficient(1), r);
        assert_eq!(spectral.coefficient(0), LegMatrix::identity(2, 2));
        assert!(spectral.coefficient(5).is_zero());
        let p = LegMatrix::permutation(2);
        let rr = lam_plus(&p.mul(&r), &p);
        assert_eq!(rr.coefficient(0), p);
    }

    #[test]
    fn kron_matches_embedding() {
        let a = LegMatrix::unit(3, 0, 2);
        let b = LegMatrix::unit(3, 1, 1);
        let ab = a.kron(&b);
        let ea = LegMatrix::embed(&a, &[0], 2).unwrap();
        let eb = LegMatrix::embed(&b, &[1], 2).unwrap();
        assert_eq!(ab, ea.mul(&eb));
    }

    #[test]
    fn permutation_detection() {
        assert_eq!(LegMatrix::permutation(2).as_permutation(), Some(vec![0, 2, 1, 3]));
        assert_eq!(LegMatrix::identity(2, 2).scale(&Rational::from(2)).as_permutation(), None);
    }

    fn arb_two_leg(n: usize) -> impl Strategy<Value = LegMatrix> {
        let size = n * n;
        proptest::collection::vec((0..size, 0..size, -3i64..4, 0u32..2), 0..8).prop_map(
            move |v| {
                LegMatrix::from_entries(
                    2,
                    n,
                    v.into_iter().map(|(r, c, x, d)| (r, c, Poly::monomial(Rational::from(x), d))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn transpose_is_involution(a in arb_two_leg(2)) {
            let t = a.partial_transpose(0).unwrap().partial_transpose(0).unwrap();
            prop_assert_eq!(&t, &a);
            let t2 = a.partial_transpose(1).unwrap().partial_transpose(1).unwrap();
            prop_assert_eq!(&t2, &a);
            let full = a.partial_transpose(0).unwrap().partial_transpose(1).unwrap();
            prop_assert_eq!(full, a.transpose());
        }

        #[test]
        fn disjoint_embeddings_commute(a in arb_two_leg(2), b in arb_two_leg(2)) {
            let ea = LegMatrix::tensor_embed(&a, (0, 2), 4).unwrap();
            let eb = LegMatrix::tensor_embed(&b, (3, 1), 4).unwrap();
            prop_assert!(ea.commutator(&eb).is_zero());
        }

        #[test]
        fn embedding_matches_brute_force(a in arb_two_leg(2), i in 0usize..3, j in 0usize..3) {
            prop_assume!(i != j);
            prop_assert_eq!(LegMatrix::tensor_embed(&a, (i, j), 3).unwrap(), brute_embed(&a, i, j, 3));
        }

        #[test]
        fn trace_is_basis_independent(a in arb_two_leg(2), b in arb_two_leg(2)) {
            // tr_0(A_{01} B_{02}) computed directly and after relabelling legs 1 <-> 2
            // through conjugation by the flip on those legs.
            let a01 = LegMatrix::tensor_embed(&a, (0, 1), 3).unwrap();
            let b02 = LegMatrix::tensor_embed(&b, (0, 2), 3).unwrap();
            let direct = a01.mul(&b02).partial_trace(0).unwrap();
            let a02 = LegMatrix::tensor_embed(&a, (0, 2), 3).unwrap();
            let b01 = LegMatrix::tensor_embed(&b, (0, 1), 3).unwrap();
            let swapped = a02.mul(&b01).partial_trace(0).unwrap();
            let p = LegMatrix::permutation(2);
            prop_assert_eq!(direct, p.mul(&swapped).mul(&p));
        }
    }
}
