//! Constant and Baxterized R-matrices of a set-theoretic solution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{grid_verify_identity, Affine, Expr, LegMatrix, Poly, Rational};
use crate::report::{CheckResult, Witness};
use crate::solution::SetSolution;

/// Grid bound per parameter for triple products of degree-one factors.
pub const YBE_GRID_BOUND: u32 = 3;

#[derive(Debug, Clone)]
pub struct RBundle {
    pub sol: SetSolution,
    /// `ř = Σ e_{x,σ_x(y)} ⊗ e_{y,τ_y(x)}`
    pub check: LegMatrix,
    /// `r = Σ e_{y,σ_x(y)} ⊗ e_{x,τ_y(x)}`
    pub r: LegMatrix,
    pub perm: LegMatrix,
    /// `Ř(λ) = λř + 𝕀`
    pub check_spec: LegMatrix,
    /// `R(λ) = λr + 𝒫`
    pub r_spec: LegMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub ybe_braid: CheckResult,
    pub ybe_standard: CheckResult,
    pub unitarity: CheckResult,
    pub unitarity_grid: CheckResult,
    pub crossing: CheckResult,
    pub t1t2: CheckResult,
    pub p3: Vec<CheckResult>,
}

impl SpectralReport {
    pub fn checks(&self) -> Vec<CheckResult> {
        let mut v = vec![
            self.ybe_braid.clone(),
            self.ybe_standard.clone(),
            self.unitarity.clone(),
            self.unitarity_grid.clone(),
            self.crossing.clone(),
            self.t1t2.clone(),
        ];
        v.extend(self.p3.iter().cloned());
        v
    }

    pub fn pass(&self) -> bool {
        self.checks().iter().all(|c| c.pass)
    }
}

fn lambda_times(m: &LegMatrix) -> LegMatrix {
    m.scale_poly(&Poly::lambda())
}

impl RBundle {
    pub fn build(sol: &SetSolution) -> Result<Self> {
        sol.require_valid()?;
        Ok(RBundle::build_unchecked(sol))
    }

    /// Builds the matrices from the tables without validating the solution.
    pub fn build_unchecked(sol: &SetSolution) -> Self {
        let n = sol.size;
        let mut check = Vec::with_capacity(n * n);
        let mut r = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (s, t) = sol.apply(x, y);
                check.push((x * n + y, s * n + t, Poly::one()));
                r.push((y * n + x, s * n + t, Poly::one()));
            }
        }
        let check = LegMatrix::from_entries(2, n, check).expect("indices in range");
        let r = LegMatrix::from_entries(2, n, r).expect("indices in range");
        let perm = LegMatrix::permutation(n);
        let id = LegMatrix::identity(2, n);
        let check_spec = &lambda_times(&check) + &id;
        let r_spec = &lambda_times(&r) + &perm;
        RBundle { sol: sol.clone(), check, r, perm, check_spec, r_spec }
    }

    pub fn dim(&self) -> usize {
        self.sol.size
    }

    /// `r = Σ e_{τ_y(x),x} ⊗ e_{σ_x(y),y}`, built directly from the tables.
    pub fn r_alternative(&self) -> LegMatrix {
        let n = self.dim();
        let entries = (0..n).flat_map(|x| {
            (0..n).map(move |y| {
                let (s, t) = self.sol.apply(x, y);
                (t * n + s, x * n + y, Poly::one())
            })
        });
        LegMatrix::from_entries(2, n, entries.collect::<Vec<_>>()).expect("indices in range")
    }

    /// Both matrix forms of `r` agree.
    pub fn dual_forms(&self) -> CheckResult {
        CheckResult::equal("dual_forms", &self.r, &self.r_alternative())
    }

    /// `ř² = 𝕀`, `r = 𝒫ř`, `Ř = 𝒫R` and exactly `𝒩²` nonzero entries in `ř`.
    pub fn structure_checks(&self) -> Vec<CheckResult> {
        let n = self.dim();
        let nnz = self.check.nnz();
        let count = if nnz == n * n {
            CheckResult::pass("check_nnz")
        } else {
            CheckResult::fail("check_nnz", Witness::note(format!("{nnz} nonzero entries, expected {}", n * n)))
        };
        vec![
            CheckResult::equal("check_squared", &self.check.mul(&self.check), &LegMatrix::identity(2, n)),
            CheckResult::equal("r_is_perm_check", &self.r, &self.perm.mul(&self.check)),
            CheckResult::equal("check_spec_is_perm_r_spec", &self.check_spec, &self.perm.mul(&self.r_spec)),
            count,
        ]
    }

    /// `R₂₁(λ) = 𝒫 R₁₂(λ) 𝒫`.
    pub fn r21_spec(&self) -> LegMatrix {
        self.perm.mul(&self.r_spec).mul(&self.perm)
    }

    /// Hecke relations at q = 1 for `g_i = ř_{i,i+1}` on `sites` legs.
    pub fn verify_hecke(&self, sites: usize) -> Result<Vec<CheckResult>> {
        if sites < 3 {
            return Err(Error::Precondition(format!("Hecke check needs at least 3 sites, got {sites}")));
        }
        let n = self.dim();
        let g: Vec<LegMatrix> = (0..sites - 1)
            .map(|i| LegMatrix::tensor_embed(&self.check, (i, i + 1), sites))
            .collect::<Result<_>>()?;
        let id = LegMatrix::identity(sites, n);
        let first_failure = |pairs: Vec<(usize, usize)>, f: &dyn Fn(usize, usize) -> (LegMatrix, LegMatrix)| {
            pairs.into_iter().find_map(|(i, j)| {
                let (a, b) = f(i, j);
                a.first_difference(&b)
                    .map(|d| Witness::from(d).with_note(format!("generators g{} g{}", i + 1, j + 1)))
            })
        };
        let braid = first_failure((0..sites - 2).map(|i| (i, i + 1)).collect(), &|i, j| {
            (g[i].mul(&g[j]).mul(&g[i]), g[j].mul(&g[i]).mul(&g[j]))
        });
        let far: Vec<(usize, usize)> =
            (0..g.len()).flat_map(|i| (i + 2..g.len()).map(move |j| (i, j))).collect();
        let commute = first_failure(far, &|i, j| (g[i].mul(&g[j]), g[j].mul(&g[i])));
        let quad = first_failure((0..g.len()).map(|i| (i, i)).collect(), &|i, _| (g[i].mul(&g[i]), id.clone()));
        Ok(vec![
            CheckResult::from_option("hecke_braid", braid),
            CheckResult::from_option("hecke_far_commute", commute),
            CheckResult::from_option("hecke_quadratic", quad),
        ])
    }

    pub fn verify_spectral(&self) -> Result<SpectralReport> {
        let n = self.dim();
        let id = LegMatrix::identity(2, n);
        let (l1, l2, d) = (Affine::var(0, 2), Affine::var(1, 2), Affine::diff(0, 1, 2));

        let c12 = LegMatrix::tensor_embed(&self.check_spec, (0, 1), 3)?;
        let c23 = LegMatrix::tensor_embed(&self.check_spec, (1, 2), 3)?;
        let sp = |m: &LegMatrix, a: &Affine| Expr::spectral(m.clone(), a.clone());
        let lhs = Expr::Product(vec![sp(&c12, &d), sp(&c23, &l1), sp(&c12, &l2)]);
        let rhs = Expr::Product(vec![sp(&c23, &l2), sp(&c12, &l1), sp(&c23, &d)]);
        let ybe_braid = CheckResult::from_grid("ybe_braid", grid_verify_identity(&lhs, &rhs, 2, YBE_GRID_BOUND)?);

        let r12 = LegMatrix::tensor_embed(&self.r_spec, (0, 1), 3)?;
        let r13 = LegMatrix::tensor_embed(&self.r_spec, (0, 2), 3)?;
        let r23 = LegMatrix::tensor_embed(&self.r_spec, (1, 2), 3)?;
        let lhs = Expr::Product(vec![sp(&r12, &d), sp(&r13, &l1), sp(&r23, &l2)]);
        let rhs = Expr::Product(vec![sp(&r23, &l2), sp(&r13, &l1), sp(&r12, &d)]);
        let ybe_standard =
            CheckResult::from_grid("ybe_standard", grid_verify_identity(&lhs, &rhs, 2, YBE_GRID_BOUND)?);

        let neg = Rational::from(-1);
        let r21_neg = self.r21_spec().compose_affine(&neg, &Rational::zero());
        let one_minus_sq = Poly::from_terms([(0, Rational::one()), (2, Rational::from(-1))]);
        let unit_rhs = id.scale_poly(&one_minus_sq);
        let unitarity = CheckResult::equal("unitarity", &self.r_spec.mul(&r21_neg), &unit_rhs);
        let lhs = Expr::Product(vec![
            Expr::spectral(self.r_spec.clone(), Affine::var(0, 1)),
            Expr::spectral(self.r21_spec(), Affine::new(vec![-1], 0)),
        ]);
        let rhs = Expr::spectral(unit_rhs, Affine::var(0, 1));
        let unitarity_grid = CheckResult::from_grid("unitarity_grid", grid_verify_identity(&lhs, &rhs, 1, 2)?);

        let big_n = Rational::from(n);
        let rt1 = self.r_spec.partial_transpose(0)?;
        let rt2_shift = self.r_spec.partial_transpose(1)?.compose_affine(&neg, &-&big_n);
        let cross_rhs = id.scale_poly(&Poly::from_terms([(2, neg.clone()), (1, -&big_n)]));
        let crossing = CheckResult::equal("crossing_unitarity", &rt1.mul(&rt2_shift), &cross_rhs);

        let t12 = self.r_spec.partial_transpose(0)?.partial_transpose(1)?;
        let t1t2 = CheckResult::equal("t1t2", &t12, &self.r21_spec());

        let pt1 = self.perm.partial_transpose(0)?;
        let r_t1 = self.r.partial_transpose(0)?;
        let r_t2 = self.r.partial_transpose(1)?;
        let absorb_left = r_t1.mul(&pt1);
        let absorb_right = pt1.mul(&r_t2);
        let absorb = CheckResult::from_option(
            "p3_absorb",
            absorb_left
                .first_difference(&pt1)
                .map(|d| Witness::from(d).with_note("r^t1 P^t1 vs P^t1"))
                .or_else(|| {
                    absorb_right.first_difference(&pt1).map(|d| Witness::from(d).with_note("P^t1 r^t2 vs P^t1"))
                }),
        );
        let p3 = vec![
            CheckResult::equal("p3_perm_square", &pt1.mul(&pt1), &pt1.scale(&big_n)),
            absorb,
            CheckResult::equal("p3_inverse", &r_t1.mul(&r_t2), &id),
        ];
        Ok(SpectralReport { ybe_braid, ybe_standard, unitarity, unitarity_grid, crossing, t1t2, p3 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{ring_to_brace, scaled_mod_ring, truncated_poly_ring};

    fn corpus() -> Vec<SetSolution> {
        let mut v: Vec<SetSolution> = (2..=4).map(SetSolution::trivial).collect();
        v.extend((2..=4).map(SetSolution::lyubashenko));
        let b = ring_to_brace(&scaled_mod_ring(4, 2)).unwrap();
        v.push(SetSolution::from_brace(&b, &[0, 1, 2, 3], "b42").unwrap());
        let t = ring_to_brace(&truncated_poly_ring(2, 3)).unwrap();
        v.push(SetSolution::from_brace(&t, &[0, 1, 2, 3], "t").unwrap());
        v
    }

    #[test]
    fn trivial_is_yang() {
        for n in 2..=3 {
            let b = RBundle::build(&SetSolution::trivial(n)).unwrap();
            assert_eq!(b.check, LegMatrix::permutation(n));
            assert_eq!(b.r, LegMatrix::identity(2, n));
            let yang = &lambda_times(&LegMatrix::identity(2, n)) + &LegMatrix::permutation(n);
            assert_eq!(b.r_spec, yang);
        }
    }

    #[test]
    fn lyubashenko2_matrix() {
        let b = RBundle::build(&SetSolution::lyubashenko(2)).unwrap();
        assert_ne!(b.check, b.perm);
        assert_eq!(b.check.mul(&b.check), LegMatrix::identity(2, 2));
    }

    #[test]
    fn corpus_structure() {
        for s in corpus() {
            let b = RBundle::build(&s).unwrap();
            assert!(b.dual_forms().pass, "{}", s.name);
            for c in b.structure_checks() {
                assert!(c.pass, "{} {}", s.name, c.check);
            }
            let rep = b.verify_spectral().unwrap();
            for c in rep.checks() {
                assert!(c.pass, "{} {} {:?}", s.name, c.check, c.witness);
            }
        }
    }

    #[test]
    fn crossing_for_dim_two() {
        let b = RBundle::build(&SetSolution::lyubashenko(2)).unwrap();
        let rt1 = b.r_spec.partial_transpose(0).unwrap();
        let rt2 = b.r_spec.partial_transpose(1).unwrap().compose_affine(&Rational::from(-1), &Rational::from(-2));
        let expect = LegMatrix::identity(2, 2).scale_poly(&Poly::from_terms([
            (2, Rational::from(-1)),
            (1, Rational::from(-2)),
        ]));
        assert_eq!(rt1.mul(&rt2), expect);
    }

    #[test]
    fn p3_for_trivial3() {
        let b = RBundle::build(&SetSolution::trivial(3)).unwrap();
        let pt = b.perm.partial_transpose(0).unwrap();
        assert_eq!(pt.mul(&pt), pt.scale(&Rational::from(3)));
    }

    #[test]
    fn hecke() {
        let cases = [(SetSolution::trivial(2), 3), (SetSolution::lyubashenko(3), 3), (corpus()[6].clone(), 4)];
        for (s, n) in cases {
            let b = RBundle::build(&s).unwrap();
            for c in b.verify_hecke(n).unwrap() {
                assert!(c.pass, "{} {}", s.name, c.check);
            }
        }
        assert!(RBundle::build(&SetSolution::trivial(2)).unwrap().verify_hecke(2).is_err());
    }

    #[test]
    fn corrupted_solution_fails_spectral() {
        let mut s = SetSolution::lyubashenko(3);
        s.sigma[0][0] = 0;
        s.sigma[0][2] = 1;
        let b = RBundle::build_unchecked(&s);
        assert!(!b.verify_spectral().unwrap().pass());
        assert!(RBundle::build(&s).is_err());
    }
}
