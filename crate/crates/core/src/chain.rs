//! Periodic chains: monodromy, transfer-matrix charges and their closed forms.
//!
//! Leg 0 is the auxiliary space; quantum sites `1..=N` sit on legs `1..=N` of
//! the monodromy and on legs `0..N` of the charges.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{grid_verify_identity, index_to_digits, Affine, Expr, LegMatrix, Poly, Rational};
use crate::report::{CheckResult, Witness};
use crate::rmatrix::RBundle;
use crate::solution::SetSolution;

/// Default cap on the number of basis states of the largest matrix.
pub const DEFAULT_BUDGET: usize = 4096;

#[derive(Debug, Clone)]
pub struct ChainSystem {
    pub bundle: RBundle,
    pub sites: usize,
    /// `T₀(λ) = R₀N(λ) ⋯ R₀₁(λ)`
    pub monodromy: LegMatrix,
    /// `t^(k)` for `k = 0..=N`, the coefficient of `λ^(N−k)` in `tr₀ T₀(λ)`.
    pub t: Vec<LegMatrix>,
    /// `Π = 𝒫₁₂𝒫₂₃⋯𝒫_{N−1,N}`
    pub shift: LegMatrix,
    /// `H^(k)` for `k = 1..=N`, stored at index `k − 1`.
    pub hams: Vec<LegMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutingReport {
    pub pairs_checked: usize,
    pub result: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub h_nm1: CheckResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_nm2: Option<CheckResult>,
    pub h1: CheckResult,
    pub t_n: CheckResult,
    pub t0: CheckResult,
}

impl ClosedFormReport {
    pub fn checks(&self) -> Vec<CheckResult> {
        let mut v = vec![self.h_nm1.clone()];
        v.extend(self.h_nm2.clone());
        v.extend([self.h1.clone(), self.t_n.clone(), self.t0.clone()]);
        v
    }
}

fn check_budget(dim: usize, legs: usize, budget: usize) -> Result<()> {
    let needed = dim.checked_pow(legs as u32).unwrap_or(usize::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// `T_a(λ) = R_{a,q_last}(λ) ⋯ R_{a,q_first}(λ)` on `total` legs.
fn monodromy_on(r_spec: &LegMatrix, aux: usize, quantum: &[usize], total: usize) -> Result<LegMatrix> {
    let mut t = LegMatrix::identity(total, r_spec.dim());
    for &q in quantum.iter().rev() {
        t = t.mul(&LegMatrix::tensor_embed(r_spec, (aux, q), total)?);
    }
    Ok(t)
}

impl ChainSystem {
    pub fn build(sol: &SetSolution, sites: usize, budget: usize) -> Result<Self> {
        ChainSystem::from_bundle(RBundle::build(sol)?, sites, budget)
    }

    pub fn from_bundle(bundle: RBundle, sites: usize, budget: usize) -> Result<Self> {
        if sites == 0 {
            return Err(Error::Precondition("a chain needs at least one site".into()));
        }
        let n = bundle.dim();
        check_budget(n, sites + 1, budget)?;
        let quantum: Vec<usize> = (1..=sites).collect();
        let monodromy = monodromy_on(&bundle.r_spec, 0, &quantum, sites + 1)?;
        let transfer = monodromy.partial_trace(0)?;
        let t: Vec<LegMatrix> = (0..=sites).map(|k| transfer.coefficient((sites - k) as u32)).collect();
        let perm = LegMatrix::permutation(n);
        let mut shift = LegMatrix::identity(sites, n);
        for i in 0..sites - 1 {
            shift = shift.mul(&LegMatrix::tensor_embed(&perm, (i, i + 1), sites)?);
        }
        let shift_inv = shift.transpose();
        let mut hams: Vec<LegMatrix> = (1..sites).map(|k| t[k].mul(&shift_inv)).collect();
        hams.push(shift.clone());
        Ok(ChainSystem { bundle, sites, monodromy, t, shift, hams })
    }

    pub fn dim(&self) -> usize {
        self.bundle.dim()
    }

    pub fn sol(&self) -> &SetSolution {
        &self.bundle.sol
    }

    pub fn hamiltonian(&self, k: usize) -> &LegMatrix {
        &self.hams[k - 1]
    }

    pub fn check_on(&self, a: usize, b: usize) -> LegMatrix {
        check_on(&self.bundle.check, self.sites, a, b)
    }

    pub fn word(&self, n: usize, m: usize) -> LegMatrix {
        word(&self.bundle.check, self.sites, n, m)
    }

    /// `[t^(k), t^(l)] = 0` for all `k ≤ l`.
    pub fn verify_commuting(&self) -> CommutingReport {
        let pairs: Vec<(usize, usize)> =
            (0..=self.sites).flat_map(|k| (k..=self.sites).map(move |l| (k, l))).collect();
        let failure = pairs.par_iter().find_map_first(|&(k, l)| {
            let a = self.t[k].mul(&self.t[l]);
            let b = self.t[l].mul(&self.t[k]);
            a.first_difference(&b).map(|d| Witness::from(d).with_note(format!("t^({k}) t^({l})")))
        });
        CommutingReport { pairs_checked: pairs.len(), result: CheckResult::from_option("commuting", failure) }
    }

    /// `Σ_k t^(k) λ^(N−k)` at `λ = at` against the trace of the evaluated monodromy.
    pub fn trace_consistency(&self, at: &Rational) -> CheckResult {
        let direct = self.monodromy.evaluate(at).partial_trace(0).expect("leg 0 exists");
        let mut series = LegMatrix::zeros(self.sites, self.dim());
        for (k, tk) in self.t.iter().enumerate() {
            let p = at.pow((self.sites - k) as i64).expect("nonnegative power");
            series = &series + &tk.scale(&p);
        }
        CheckResult::equal("trace_consistency", &series, &direct)
    }

    /// `Π^N = 𝕀`.
    pub fn shift_order(&self) -> CheckResult {
        CheckResult::equal("shift_order", &self.shift.pow(self.sites as u32), &LegMatrix::identity(self.sites, self.dim()))
    }

    fn wrap(&self) -> LegMatrix {
        self.check_on(self.sites, 1)
    }

    /// `Σ_{n=1}^{N−1} ř_{n,n+1} + ř_{N1}`.
    pub fn closed_h_nm1(&self) -> LegMatrix {
        let mut h = self.wrap();
        for n in 1..self.sites {
            h = &h + &self.check_on(n, n + 1);
        }
        h
    }

    /// `Σ_{1≤m<n≤N−1} ř_{n,n+1}ř_{m,m+1} + Σ_{n=1}^{N−2} ř_{n,n+1}ř_{N1} + ř_{N1}ř_{N−1,N}`.
    pub fn closed_h_nm2(&self) -> LegMatrix {
        let big_n = self.sites;
        let wrap = self.wrap();
        let mut h = wrap.mul(&self.check_on(big_n - 1, big_n));
        for n in 1..big_n {
            for m in 1..n {
                h = &h + &self.check_on(n, n + 1).mul(&self.check_on(m, m + 1));
            }
        }
        for n in 1..big_n - 1 {
            h = &h + &self.check_on(n, n + 1).mul(&wrap);
        }
        h
    }

    /// `Σ_{n=1}^{N−1} ℜ_{n;1} ř_{N1} ℜ_{N;n+1} + ℜ_{N;1}`.
    pub fn closed_h1(&self) -> LegMatrix {
        let big_n = self.sites;
        let wrap = self.wrap();
        let mut h = self.word(big_n, 1);
        for n in 1..big_n {
            h = &h + &self.word(n, 1).mul(&wrap).mul(&self.word(big_n, n + 1));
        }
        h
    }

    /// `Σ ⊗_n e_{x_n, τ_{y_n}(x_n)}` over tuples with `y_n = σ_{x_{n+1}}(y_{n+1})`, indices mod N.
    pub fn closed_t0(&self) -> LegMatrix {
        let (n, big_n) = (self.dim(), self.sites);
        let sol = self.sol();
        let mut entries = Vec::new();
        for code in 0..n.pow(2 * big_n as u32) {
            let d = index_to_digits(code, 2 * big_n, n);
            let (x, y) = d.split_at(big_n);
            if (0..big_n).all(|i| y[i] == sol.sigma[x[(i + 1) % big_n]][y[(i + 1) % big_n]]) {
                let row = x.iter().fold(0, |acc, v| acc * n + v);
                let col = (0..big_n).fold(0, |acc, i| acc * n + sol.tau[y[i]][x[i]]);
                entries.push((row, col, Poly::one()));
            }
        }
        LegMatrix::from_entries(big_n, n, entries).expect("indices in range")
    }

    pub fn verify_closed_forms(&self) -> Result<ClosedFormReport> {
        let big_n = self.sites;
        if big_n < 2 {
            return Err(Error::Precondition("closed forms need at least 2 sites".into()));
        }
        let h_nm2 = (big_n >= 3).then(|| CheckResult::equal("h_nm2", self.hamiltonian(big_n - 2), &self.closed_h_nm2()));
        Ok(ClosedFormReport {
            h_nm1: CheckResult::equal("h_nm1", self.hamiltonian(big_n - 1), &self.closed_h_nm1()),
            h_nm2,
            h1: CheckResult::equal("h1", self.hamiltonian(1), &self.closed_h1()),
            t_n: CheckResult::equal("t_n", &self.t[big_n], &self.shift),
            t0: CheckResult::equal("t0", &self.t[0], &self.closed_t0()),
        })
    }

    pub fn summary(&self, commuting: Option<&CommutingReport>, closed: Option<&ClosedFormReport>) -> serde_json::Value {
        let closed_forms: serde_json::Map<String, serde_json::Value> = closed
            .map(|c| c.checks().into_iter().map(|r| (r.check.clone(), serde_json::json!(r.pass))).collect())
            .unwrap_or_default();
        serde_json::json!({
            "sites": self.sites,
            "dim": self.dim().pow(self.sites as u32),
            "commuting_pairs_checked": commuting.map_or(0, |c| c.pairs_checked),
            "closed_forms": closed_forms,
        })
    }
}

/// Shift-action identities of `ℜ_{N;1}` on two-site `ř` embeddings, `N ≥ 4`.
pub fn verify_shift_action(bundle: &RBundle, sites: usize, budget: usize) -> Result<Vec<CheckResult>> {
    if sites < 4 {
        return Err(Error::Precondition(format!("shift action needs at least 4 sites, got {sites}")));
    }
    check_budget(bundle.dim(), sites, budget)?;
    let c = &bundle.check;
    let big = word(c, sites, sites, 1);
    let mut bulk = None;
    for n in 2..=sites - 2 {
        let lhs = big.mul(&check_on(c, sites, n, n + 1));
        let rhs = check_on(c, sites, n - 1, n).mul(&big);
        if let Some(d) = lhs.first_difference(&rhs) {
            bulk = Some(Witness::from(d).with_note(format!("n = {n}")));
            break;
        }
    }
    Ok(vec![
        CheckResult::from_option("shift_bulk", bulk),
        CheckResult::equal("shift_first", &big.mul(&check_on(c, sites, 1, 2)), &word(c, sites, sites, 2)),
        CheckResult::equal(
            "shift_last",
            &check_on(c, sites, sites - 1, sites).mul(&big),
            &word(c, sites, sites - 1, 1),
        ),
    ])
}

/// `ř` on quantum sites `a`, `b` (1-based, in that order) of a `sites`-leg space.
pub fn check_on(check: &LegMatrix, sites: usize, a: usize, b: usize) -> LegMatrix {
    LegMatrix::tensor_embed(check, (a - 1, b - 1), sites).expect("sites in range")
}

/// `ℜ_{n;m} = ř_{n−1,n} ř_{n−2,n−1} ⋯ ř_{m,m+1}`, the identity when `n = m`.
pub fn word(check: &LegMatrix, sites: usize, n: usize, m: usize) -> LegMatrix {
    let mut w = LegMatrix::identity(sites, check.dim());
    for j in (m..n).rev() {
        w = w.mul(&check_on(check, sites, j, j + 1));
    }
    w
}

/// `Ř₁₂(λ₁−λ₂) T₁(λ₁) T₂(λ₂) = T₁(λ₂) T₂(λ₁) Ř₁₂(λ₁−λ₂)` with two auxiliary legs.
pub fn verify_rtt(bundle: &RBundle, sites: usize, budget: usize) -> Result<CheckResult> {
    if sites == 0 {
        return Err(Error::Precondition("RTT needs at least one site".into()));
    }
    let total = sites + 2;
    check_budget(bundle.dim(), total, budget)?;
    let quantum: Vec<usize> = (2..total).collect();
    let t1 = monodromy_on(&bundle.r_spec, 0, &quantum, total)?;
    let t2 = monodromy_on(&bundle.r_spec, 1, &quantum, total)?;
    let c12 = LegMatrix::tensor_embed(&bundle.check_spec, (0, 1), total)?;
    let (l1, l2, d) = (Affine::var(0, 2), Affine::var(1, 2), Affine::diff(0, 1, 2));
    let sp = |m: &LegMatrix, a: &Affine| Expr::spectral(m.clone(), a.clone());
    let lhs = Expr::Product(vec![sp(&c12, &d), sp(&t1, &l1), sp(&t2, &l2)]);
    let rhs = Expr::Product(vec![sp(&t1, &l2), sp(&t2, &l1), sp(&c12, &d)]);
    let outcome = grid_verify_identity(&lhs, &rhs, 2, sites as u32 + 1)?;
    Ok(CheckResult::from_grid("rtt", outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{ring_to_brace, scaled_mod_ring, truncated_poly_ring};

    fn chain(sol: &SetSolution, n: usize) -> ChainSystem {
        ChainSystem::build(sol, n, DEFAULT_BUDGET).unwrap()
    }

    fn brace_sol(b: crate::brace::FiniteBrace) -> SetSolution {
        let all: Vec<usize> = (0..b.size).collect();
        SetSolution::from_brace(&b, &all, "b").unwrap()
    }

    #[test]
    fn trivial2_two_sites() {
        let c = chain(&SetSolution::trivial(2), 2);
        let two = Rational::from(2);
        assert_eq!(c.t[0], LegMatrix::identity(2, 2).scale(&two));
        assert_eq!(c.t[1], LegMatrix::identity(2, 2).scale(&two));
        assert_eq!(c.t[2], LegMatrix::permutation(2));
        assert_eq!(c.closed_h_nm1(), LegMatrix::permutation(2).scale(&two));
        assert_eq!(c.hamiltonian(1), &LegMatrix::permutation(2).scale(&two));
    }

    #[test]
    fn single_site() {
        for s in [SetSolution::lyubashenko(3), SetSolution::trivial(2)] {
            let c = chain(&s, 1);
            assert_eq!(c.monodromy, c.bundle.r_spec);
            assert_eq!(c.t[1], LegMatrix::identity(1, s.size));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = ChainSystem::build(&SetSolution::trivial(4), 6, DEFAULT_BUDGET).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 4usize.pow(7), budget: DEFAULT_BUDGET });
    }

    #[test]
    fn commuting_counts() {
        let rep = chain(&SetSolution::trivial(2), 3).verify_commuting();
        assert!(rep.result.pass);
        assert_eq!(rep.pairs_checked, 10);
        assert!(chain(&SetSolution::lyubashenko(3), 3).verify_commuting().result.pass);
    }

    #[test]
    fn closed_forms_small() {
        let sols = [
            SetSolution::trivial(2),
            SetSolution::lyubashenko(2),
            SetSolution::lyubashenko(3),
            brace_sol(ring_to_brace(&scaled_mod_ring(4, 2)).unwrap()),
            brace_sol(ring_to_brace(&truncated_poly_ring(2, 3)).unwrap()),
        ];
        for s in &sols {
            for n in 2..=3 {
                let c = chain(s, n);
                for r in c.verify_closed_forms().unwrap().checks() {
                    assert!(r.pass, "{} N={n} {} {:?}", s.name, r.check, r.witness);
                }
                assert!(c.trace_consistency(&Rational::from(2)).pass);
                assert!(c.shift_order().pass);
            }
        }
    }

    #[test]
    fn trivial_t0_is_dim_identity() {
        for n in 2..=3 {
            let c = chain(&SetSolution::trivial(n), 2);
            assert_eq!(c.closed_t0(), LegMatrix::identity(2, n).scale(&Rational::from(n)));
        }
    }

    #[test]
    fn reversed_h1_words_fail() {
        // the H^(1) display with its word order reversed is not the chain Hamiltonian
        let c = chain(&SetSolution::lyubashenko(2), 3);
        let wrap = c.check_on(3, 1);
        let mut alt = c.word(3, 1);
        for n in 1..3 {
            alt = &alt + &c.word(3, n + 1).mul(&wrap).mul(&c.word(n, 1));
        }
        assert_ne!(&alt, c.hamiltonian(1));
        assert_eq!(&c.closed_h1(), c.hamiltonian(1));
    }

    #[test]
    fn shift_action() {
        for s in [SetSolution::trivial(2), SetSolution::lyubashenko(2), SetSolution::lyubashenko(3)] {
            let b = RBundle::build(&s).unwrap();
            for r in verify_shift_action(&b, 4, DEFAULT_BUDGET).unwrap() {
                assert!(r.pass, "{} {}", s.name, r.check);
            }
        }
        let b = RBundle::build(&SetSolution::trivial(2)).unwrap();
        assert!(verify_shift_action(&b, 3, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn rtt() {
        for s in [SetSolution::trivial(2), SetSolution::lyubashenko(2)] {
            let b = RBundle::build(&s).unwrap();
            for n in 1..=2 {
                assert!(verify_rtt(&b, n, DEFAULT_BUDGET).unwrap().pass, "{} N={n}", s.name);
            }
        }
    }

    #[test]
    fn corrupted_chain_breaks_commutativity() {
        let mut s = SetSolution::lyubashenko(2);
        s.sigma[0] = vec![0, 1];
        let c = ChainSystem::from_bundle(RBundle::build_unchecked(&s), 3, DEFAULT_BUDGET).unwrap();
        let rep = c.verify_commuting();
        assert!(!rep.result.pass);
        assert!(rep.result.witness.unwrap().note.unwrap().starts_with("t^("));
    }

    #[test]
    fn summary_shape() {
        let c = chain(&SetSolution::trivial(2), 3);
        let com = c.verify_commuting();
        let cf = c.verify_closed_forms().unwrap();
        let v = c.summary(Some(&com), Some(&cf));
        assert_eq!(v["sites"], 3);
        assert_eq!(v["dim"], 8);
        assert_eq!(v["commuting_pairs_checked"], 10);
        assert_eq!(v["closed_forms"]["t0"], true);
    }
}
