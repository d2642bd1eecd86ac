//! Symmetries of the periodic transfer matrix.
//!
//! Every check is exact. A [`SymmetryReport`] records, for each charge
//! `t^(k)`, whether the generator commutes with it and whether that
//! commutation is asserted or only recorded.

pub mod cocycle;
pub mod snf;

use rayon::prelude::*;
use serde::Serialize;

pub use cocycle::{cocycle_violation, relation_matrix, require_automorphism, solve_cocycle, CocycleSolution, DiagonalSymmetry};
pub use snf::{smith_normal_form, Smith};

use crate::brace::FiniteBrace;
use crate::chain::ChainSystem;
use crate::error::{Error, Result};
use crate::exact::{LegMatrix, Poly, Rational};
use crate::report::{CheckResult, Witness};
use crate::solution::SetSolution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub generator: String,
    pub kind: String,
    /// `[G, t^(k)] = 0` for `k = 0..=N`.
    pub per_k: Vec<bool>,
    /// Which entries of `per_k` count towards [`SymmetryReport::pass`].
    pub asserted: Vec<bool>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl SymmetryReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.per_k.iter().zip(&self.asserted).all(|(&ok, &a)| ok || !a)
    }
}

/// Commutation of `op` with each charge; the witness is the first asserted failure, else the first failure.
pub fn commutes_with_charges(chain: &ChainSystem, op: &LegMatrix, asserted: &[bool]) -> (Vec<bool>, Option<Witness>) {
    let diffs: Vec<Option<Witness>> = chain
        .t
        .par_iter()
        .enumerate()
        .map(|(k, t)| {
            op.mul(t).first_difference(&t.mul(op)).map(|d| Witness::from(d).with_note(format!("k = {k}")))
        })
        .collect();
    let per_k = diffs.iter().map(Option::is_none).collect();
    let witness = diffs
        .iter()
        .zip(asserted)
        .find_map(|(w, &a)| if a { w.clone() } else { None })
        .or_else(|| diffs.iter().find_map(Clone::clone));
    (per_k, witness)
}

fn report(chain: &ChainSystem, generator: String, kind: &str, op: &LegMatrix, asserted: Vec<bool>, checks: Vec<CheckResult>) -> SymmetryReport {
    let (per_k, witness) = commutes_with_charges(chain, op, &asserted);
    SymmetryReport { generator, kind: kind.into(), per_k, asserted, checks, witness }
}

fn all_k(chain: &ChainSystem) -> Vec<bool> {
    vec![true; chain.sites + 1]
}

fn none_k(chain: &ChainSystem) -> Vec<bool> {
    vec![false; chain.sites + 1]
}

fn require_one_leg(b: &LegMatrix, dim: usize) -> Result<()> {
    if b.legs() != 1 || b.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "expected a {dim}×{dim} single-leg matrix, got {} legs of dimension {}",
            b.legs(),
            b.dim()
        )));
    }
    Ok(())
}

/// `(B⊗B)R(λ) = R(λ)(B⊗B)`, then `(B⊗B^⊗N)T(λ) = T(λ)(B⊗B^⊗N)`.
///
/// `[B^⊗N, t^(k)]` is recorded for every `k` without being asserted.
pub fn lift_check(b: &LegMatrix, chain: &ChainSystem) -> Result<SymmetryReport> {
    require_one_leg(b, chain.dim())?;
    let r = &chain.bundle.r_spec;
    let bb = b.kron(b);
    let mut checks = vec![CheckResult::equal("rsym1", &bb.mul(r), &r.mul(&bb))];
    if checks[0].pass {
        let big = b.kron_power(chain.sites + 1);
        checks.push(CheckResult::equal("tsym1", &big.mul(&chain.monodromy), &chain.monodromy.mul(&big)));
    }
    let op = b.kron_power(chain.sites);
    Ok(report(chain, "B".into(), "lift", &op, none_k(chain), checks))
}

/// `M = Σ α_x e_{x,f(x)}`
pub fn m_matrix(sym: &DiagonalSymmetry) -> LegMatrix {
    let n = sym.f.len();
    let entries = sym.f.iter().zip(&sym.alpha).enumerate().map(|(x, (&fx, a))| (x, fx, Poly::constant(a.clone())));
    LegMatrix::from_entries(1, n, entries).expect("automorphism indices in range")
}

pub fn verify_m_symmetry(chain: &ChainSystem, sym: &DiagonalSymmetry) -> Result<SymmetryReport> {
    let sol = chain.sol();
    if sym.f.len() != sol.size || sym.alpha.len() != sol.size {
        return Err(Error::DimensionMismatch(format!("f and alpha must have {} entries", sol.size)));
    }
    require_automorphism(sol, &sym.f)?;
    if let Some(x) = sym.alpha.iter().position(Rational::is_zero) {
        return Err(Error::Precondition(format!("alpha[{x}] is zero")));
    }
    if let Some((x, y)) = cocycle_violation(sol, &sym.alpha) {
        return Err(Error::CocycleViolation { x, y });
    }
    let m = m_matrix(sym);
    let mm = m.kron(&m);
    let r = &chain.bundle.r;
    let checks = vec![CheckResult::equal("m_r_level", &mm.mul(r), &r.mul(&mm))];
    let generator = format!("f = {:?}, alpha = [{}]", sym.f, join(&sym.alpha));
    Ok(report(chain, generator, "m_symmetry", &m.kron_power(chain.sites), all_k(chain), checks))
}

fn join(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Every `(f, α)` from the automorphism group and the cocycle instantiations.
pub fn character_symmetries(sol: &SetSolution) -> Result<Vec<DiagonalSymmetry>> {
    let mut out = Vec::new();
    for f in crate::solution::automorphisms(sol)? {
        let cocycle = solve_cocycle(sol, &f)?;
        out.extend(cocycle.instantiations.into_iter().map(|alpha| DiagonalSymmetry { f: f.clone(), alpha }));
    }
    Ok(out)
}

/// Orbit-multidegree components of `M^⊗N` for `M = Σ_j α_j Σ_{i∈Q_j} e_{i,i}`.
///
/// The component of multidegree `d` is the diagonal projector onto basis
/// states whose orbit content is `d`.
pub fn orbit_projector_symmetry(chain: &ChainSystem) -> Vec<SymmetryReport> {
    let orbits = chain.sol().orbits();
    let n = chain.dim();
    let mut label = vec![0; n];
    for (j, q) in orbits.iter().enumerate() {
        for &x in q {
            label[x] = j;
        }
    }
    let sites = chain.sites;
    let states = n.pow(sites as u32);
    let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for s in 0..states {
        let mut degree = vec![0; orbits.len()];
        for d in crate::exact::index_to_digits(s, sites, n) {
            degree[label[d]] += 1;
        }
        groups.entry(degree).or_default().push(s);
    }
    groups
        .into_iter()
        .map(|(degree, basis)| {
            let op = LegMatrix::from_entries(sites, n, basis.into_iter().map(|s| (s, s, Poly::one()))).expect("basis in range");
            report(chain, format!("orbit multidegree {degree:?} over {orbits:?}"), "orbit_projector", &op, all_k(chain), vec![])
        })
        .collect()
}

/// `Σ_n (op)_n` on `sites` legs.
pub fn coproduct(op: &LegMatrix, sites: usize) -> LegMatrix {
    let mut sum = LegMatrix::zeros(sites, op.dim());
    for n in 0..sites {
        sum = &sum + &LegMatrix::embed(op, &[n], sites).expect("site in range");
    }
    sum
}

/// Elementary symmetric sums `S_n = Σ_{m₁<⋯<m_n} (e)_{m₁}⋯(e)_{m_n}` for `n = 1..=sites`.
pub fn elementary_sums(e: &LegMatrix, sites: usize) -> Vec<LegMatrix> {
    let mut s = vec![LegMatrix::identity(sites, e.dim())];
    s.extend((0..sites).map(|_| LegMatrix::zeros(sites, e.dim())));
    for m in 0..sites {
        let em = LegMatrix::embed(e, &[m], sites).expect("site in range");
        for n in (1..=m + 1).rev() {
            s[n] = &s[n] + &s[n - 1].mul(&em);
        }
    }
    s.remove(0);
    s
}

/// `gl_α` generated by `Δ^(N)(e_{x,y})` over the fixed elements.
pub fn fixed_element_gl(chain: &ChainSystem) -> Vec<SymmetryReport> {
    let fixed = chain.sol().fixed_elements();
    let n = chain.dim();
    let sites = chain.sites;
    let r = &chain.bundle.r;
    let mut out = Vec::new();
    for &x in &fixed {
        for &y in &fixed {
            let e = LegMatrix::unit(n, x, y);
            let delta = coproduct(&e, 2);
            let ee = e.kron(&e);
            let mut checks = vec![
                CheckResult::equal("a1", &delta.mul(r), &r.mul(&delta)),
                CheckResult::equal("k1", &ee.mul(r), &r.mul(&ee)),
            ];
            for (i, s) in elementary_sums(&e, sites).iter().enumerate() {
                let (per_k, w) = commutes_with_charges(chain, s, &all_k(chain));
                let name = format!("k2_s{}", i + 1);
                checks.push(if per_k.iter().all(|&b| b) { CheckResult::pass(name) } else { CheckResult::fail(name, w.unwrap_or_default()) });
            }
            out.push(report(chain, format!("Δ(e_{{{x},{y}}})"), "fixed_gl", &coproduct(&e, sites), all_k(chain), checks));
        }
    }
    out
}

/// `e_{x,y}^⊗N` over square-free points; `k = 0` is recorded only.
pub fn square_free_symmetry(chain: &ChainSystem) -> Vec<SymmetryReport> {
    let points = chain.sol().square_free_points();
    let n = chain.dim();
    let sites = chain.sites;
    let check = &chain.bundle.check;
    let mut asserted = all_k(chain);
    asserted[0] = false;
    let mut out = Vec::new();
    for &x in &points {
        for &y in &points {
            let e = LegMatrix::unit(n, x, y);
            let ee = e.kron(&e);
            let big = e.kron_power(sites);
            let mut checks = vec![CheckResult::equal("two_site", &ee.mul(check), &check.mul(&ee))];
            for a in 1..sites {
                let c = chain.check_on(a, a + 1);
                checks.push(CheckResult::equal(format!("cc1_{a}"), &big.mul(&c), &c.mul(&big)));
            }
            if sites >= 2 {
                let c = chain.check_on(1, sites);
                checks.push(CheckResult::equal("cc2", &big.mul(&c), &c.mul(&big)));
            }
            out.push(report(chain, format!("e_{{{x},{y}}}^⊗{sites}"), "square_free", &big, asserted.clone(), checks));
        }
    }
    out
}

/// `[e_{x,y}^⊗N, t^(k)] = 0` for `x = σ_b(a)`, `y = σ_c(a)` with `a` central,
/// `a + a = 0`, `a∘a = 0` and `N` odd. `elements` lists the brace elements of `X`.
pub fn central_symmetry(
    brace: &FiniteBrace,
    elements: &[usize],
    (a, b, c): (usize, usize, usize),
    sites: usize,
    budget: usize,
) -> Result<SymmetryReport> {
    if let Some(why) = brace.central_involutive_failure(a) {
        return Err(Error::Precondition(why.into()));
    }
    if sites.is_multiple_of(2) {
        return Err(Error::Precondition(format!("N must be odd, got {sites}")));
    }
    if b >= brace.size || c >= brace.size {
        return Err(Error::Precondition("b and c must be brace elements".into()));
    }
    let (x, y) = (brace.sigma(b, a), brace.sigma(c, a));
    let position = |v: usize| {
        elements.iter().position(|&e| e == v).ok_or_else(|| Error::Precondition(format!("element {v} is not in X")))
    };
    let (xi, yi) = (position(x)?, position(y)?);
    let sol = SetSolution::from_brace(brace, elements, "central")?;
    let chain = ChainSystem::build(&sol, sites, budget)?;
    let op = LegMatrix::unit(sol.size, xi, yi).kron_power(sites);
    Ok(report(&chain, format!("e_{{{x},{y}}}^⊗{sites}"), "central", &op, all_k(&chain), vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{ring_to_brace, scaled_mod_ring, truncated_poly_ring};
    use crate::chain::DEFAULT_BUDGET;

    fn chain(sol: &SetSolution, n: usize) -> ChainSystem {
        ChainSystem::build(sol, n, DEFAULT_BUDGET).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn brace_solution(ring: &crate::brace::FiniteRing) -> (FiniteBrace, SetSolution) {
        let b = ring_to_brace(ring).unwrap();
        let all: Vec<usize> = (0..b.size).collect();
        let s = SetSolution::from_brace(&b, &all, "brace").unwrap();
        (b, s)
    }

    #[test]
    fn m_symmetry_examples() {
        let c = chain(&SetSolution::trivial(2), 2);
        let r = verify_m_symmetry(&c, &DiagonalSymmetry { f: vec![0, 1], alpha: q(&[1, 3]) }).unwrap();
        assert!(r.pass() && r.per_k.len() == 3);

        let c = chain(&SetSolution::lyubashenko(2), 2);
        let ok = verify_m_symmetry(&c, &DiagonalSymmetry { f: vec![0, 1], alpha: q(&[2, 2]) }).unwrap();
        assert!(ok.pass());
        let bad = verify_m_symmetry(&c, &DiagonalSymmetry { f: vec![0, 1], alpha: q(&[1, 2]) });
        assert!(matches!(bad, Err(Error::CocycleViolation { .. })));
        let zero = verify_m_symmetry(&c, &DiagonalSymmetry { f: vec![0, 1], alpha: q(&[0, 0]) });
        assert!(matches!(zero, Err(Error::Precondition(_))));
    }

    #[test]
    fn sign_character_commutes_but_wrong_sign_pattern_is_rejected() {
        let c = chain(&SetSolution::lyubashenko(2), 3);
        let r = verify_m_symmetry(&c, &DiagonalSymmetry { f: vec![0, 1], alpha: q(&[1, -1]) }).unwrap();
        assert!(r.pass());
        // the commutator itself fails
        let m = m_matrix(&DiagonalSymmetry { f: vec![0, 1], alpha: q(&[1, 2]) });
        let (per_k, w) = commutes_with_charges(&c, &m.kron_power(3), &all_k(&c));
        assert!(per_k.iter().any(|&b| !b) && w.is_some());
    }

    #[test]
    fn all_character_symmetries_commute() {
        let (_, brace_sol) = brace_solution(&scaled_mod_ring(4, 2));
        for sol in [SetSolution::trivial(2), SetSolution::lyubashenko(2), SetSolution::lyubashenko(3), brace_sol] {
            let c = chain(&sol, 2);
            let syms = character_symmetries(&sol).unwrap();
            assert!(!syms.is_empty());
            for s in &syms {
                assert!(verify_m_symmetry(&c, s).unwrap().pass(), "{} {:?}", sol.name, s);
            }
        }
    }

    #[test]
    fn lift_examples() {
        let c = chain(&SetSolution::trivial(2), 2);
        let b = LegMatrix::from_entries(1, 2, [(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 5)].map(|(i, j, v)| (i, j, Poly::constant(Rational::from(v))))).unwrap();
        let r = lift_check(&b, &c).unwrap();
        assert!(r.pass() && r.checks.len() == 2 && r.per_k.iter().all(|&k| k));

        let c = chain(&SetSolution::lyubashenko(2), 2);
        let r = lift_check(&b, &c).unwrap();
        assert!(!r.pass() && r.checks.len() == 1 && r.checks[0].witness.is_some());

        let id = LegMatrix::identity(1, 2);
        assert!(lift_check(&id, &c).unwrap().pass());
        assert!(lift_check(&LegMatrix::identity(2, 2), &c).is_err());
    }

    #[test]
    fn orbit_components_are_symmetrized() {
        let c = chain(&SetSolution::trivial(2), 2);
        let reps = orbit_projector_symmetry(&c);
        assert_eq!(reps.len(), 3);
        assert!(reps.iter().all(SymmetryReport::pass));
        // a single unsymmetrized projector fails
        let p = LegMatrix::unit(2, 0, 0).kron(&LegMatrix::unit(2, 1, 1));
        let (per_k, _) = commutes_with_charges(&c, &p, &all_k(&c));
        assert!(!per_k[2]);

        let (_, s) = brace_solution(&scaled_mod_ring(4, 2));
        assert_eq!(s.orbits(), vec![vec![0], vec![1, 3], vec![2]]);
        for n in 2..=3 {
            let reps = orbit_projector_symmetry(&chain(&s, n));
            assert!(reps.iter().all(SymmetryReport::pass));
        }
        assert_eq!(orbit_projector_symmetry(&chain(&SetSolution::lyubashenko(3), 2)).len(), 1);
    }

    #[test]
    fn fixed_elements_recover_gl() {
        for n in 2..=3 {
            let reps = fixed_element_gl(&chain(&SetSolution::trivial(n), 3));
            assert_eq!(reps.len(), n * n);
            assert!(reps.iter().all(SymmetryReport::pass));
        }
        assert!(fixed_element_gl(&chain(&SetSolution::lyubashenko(2), 2)).is_empty());
    }

    #[test]
    fn fixed_elements_in_mixed_solution() {
        // x = 0 is fixed while 1, 2 are swapped by σ
        let sigma = vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]];
        let sol = SetSolution::derive_tau("mixed", sigma).unwrap();
        assert_eq!(sol.fixed_elements(), vec![0]);
        let reps = fixed_element_gl(&chain(&sol, 3));
        assert_eq!(reps.len(), 1);
        assert!(reps[0].pass(), "{:?}", reps[0]);
    }

    #[test]
    fn elementary_sums_match_expansion() {
        let e = LegMatrix::unit(2, 0, 1);
        let s = elementary_sums(&e, 3);
        assert_eq!(s[0], coproduct(&e, 3));
        assert_eq!(s[2], e.kron_power(3));
        let e01 = LegMatrix::embed(&e, &[0], 3).unwrap();
        let e1 = LegMatrix::embed(&e, &[1], 3).unwrap();
        let e2 = LegMatrix::embed(&e, &[2], 3).unwrap();
        let pairs = &(&e01.mul(&e1) + &e01.mul(&e2)) + &e1.mul(&e2);
        assert_eq!(s[1], pairs);
    }

    #[test]
    fn square_free_examples() {
        let reps = square_free_symmetry(&chain(&SetSolution::trivial(2), 3));
        assert_eq!(reps.len(), 4);
        assert!(reps.iter().all(SymmetryReport::pass));
        assert!(square_free_symmetry(&chain(&SetSolution::lyubashenko(2), 2)).is_empty());

        let (_, s) = brace_solution(&scaled_mod_ring(4, 2));
        assert_eq!(s.square_free_points(), vec![0, 2]);
        for n in 2..=3 {
            let reps = square_free_symmetry(&chain(&s, n));
            assert_eq!(reps.len(), 4);
            assert!(reps.iter().all(SymmetryReport::pass));
        }
    }

    #[test]
    fn central_element_examples() {
        let (b, _) = brace_solution(&truncated_poly_ring(2, 3));
        let all: Vec<usize> = (0..b.size).collect();
        // t² has index 2
        assert_eq!(b.central_involutive_elements(), vec![0, 2]);
        for bb in 0..4 {
            for cc in 0..4 {
                assert_eq!(b.sigma(bb, 2), 2);
                let r = central_symmetry(&b, &all, (2, bb, cc), 3, DEFAULT_BUDGET).unwrap();
                assert!(r.pass() && r.per_k.len() == 4 && r.asserted.iter().all(|&a| a));
            }
        }
        assert!(central_symmetry(&b, &all, (0, 1, 3), 3, DEFAULT_BUDGET).unwrap().pass());
        let even = central_symmetry(&b, &all, (2, 0, 0), 2, DEFAULT_BUDGET);
        assert!(matches!(even, Err(Error::Precondition(m)) if m.contains("odd")));
        let not_central = central_symmetry(&b, &all, (1, 0, 0), 3, DEFAULT_BUDGET);
        assert!(matches!(not_central, Err(Error::Precondition(_))));
    }
}
