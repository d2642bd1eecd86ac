use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::Rational;

/// A univariate polynomial in the spectral parameter λ with exact rational
/// coefficients. Only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(c, 0)
    }

    /// The polynomial λ.
    pub fn lambda() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Poly { coeffs }
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (d, c) in terms {
            p.add_term(d, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            _ => None,
        }
    }

    fn add_term(&mut self, degree: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (d, c) in &other.coeffs {
            self.add_term(*d, c);
        }
    }

    /// `self += a * b` without allocating the intermediate product.
    pub fn add_product(&mut self, a: &Poly, b: &Poly) {
        for (da, ca) in &a.coeffs {
            for (db, cb) in &b.coeffs {
                self.add_term(da + db, &(ca * cb));
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|(d, x)| (*d, x * c)).collect(),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        // Horner over the sparse table, highest degree first.
        let mut acc = Rational::zero();
        let mut prev: Option<u32> = None;
        for (d, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                for _ in *d..p {
                    acc = &acc * at;
                }
            }
            acc += c;
            prev = Some(*d);
        }
        if let Some(p) = prev {
            for _ in 0..p {
                acc = &acc * at;
            }
        }
        acc
    }

    /// Substitutes λ ↦ a·λ + b.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Poly {
        let inner = Poly::from_terms([(1, a.clone()), (0, b.clone())]);
        let mut out = Poly::zero();
        let mut power = Poly::one();
        let top = self.degree().unwrap_or(0);
        for d in 0..=top {
            let c = self.coeff(d);
            if !c.is_zero() {
                out.add_assign_ref(&power.scale(&c));
            }
            if d < top {
                power = &power * &inner;
            }
        }
        out
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(Rational::from(c))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, &-c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "λ")?,
                (1, false) => write!(f, "{mag}λ")?,
                (_, true) => write!(f, "λ^{d}")?,
                (_, false) => write!(f, "{mag}λ^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(u32, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(d, c)| (d, Rational::from(c))))
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[(2, 1), (2, -1)]).degree(), None);
        assert!(p(&[(3, 0)]).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(2, -1), (0, 1)]).to_string(), "-λ^2 + 1");
        assert_eq!(p(&[(1, 3), (0, -2)]).to_string(), "3λ - 2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn compose_affine_negates() {
        // (λ + 1) at λ -> -λ - 2 is -λ - 1
        let q = p(&[(1, 1), (0, 1)]).compose_affine(&Rational::from(-1), &Rational::from(-2));
        assert_eq!(q, p(&[(1, -1), (0, -1)]));
    }

    #[test]
    fn eval_sparse() {
        let q = p(&[(3, 2), (0, -1)]);
        assert_eq!(q.eval(&Rational::from(2)), Rational::from(15));
        assert_eq!(Poly::zero().eval(&Rational::from(5)), Rational::zero());
    }

    fn arb() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((0u32..5, -5i64..5), 0..5)
            .prop_map(|v| Poly::from_terms(v.into_iter().map(|(d, c)| (d, Rational::from(c)))))
    }

    proptest! {
        #[test]
        fn eval_is_ring_hom(a in arb(), b in arb(), x in -6i64..6) {
            let x = Rational::from(x);
            prop_assert_eq!((&a * &b).eval(&x), &a.eval(&x) * &b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), &a.eval(&x) + &b.eval(&x));
        }

        #[test]
        fn compose_matches_eval(a in arb(), s in -3i64..3, t in -3i64..3, x in -4i64..4) {
            let (s, t, x) = (Rational::from(s), Rational::from(t), Rational::from(x));
            let composed = a.compose_affine(&s, &t);
            prop_assert_eq!(composed.eval(&x), a.eval(&(&(&s * &x) + &t)));
        }
    }
}
