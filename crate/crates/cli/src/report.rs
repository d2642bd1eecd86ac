use serde::Serialize;
use serde_json::Value;
use ybl_core::report::{CheckResult, Witness};
use ybl_core::symmetry::SymmetryReport;

/// The statement a check verifies.
pub fn anchor(check: &str) -> &'static str {
    let base = check.rsplit('/').next().unwrap_or(check);
    match base {
        "nondegenerate" => "σ_x and τ_y are bijections",
        "involutive" => "ř(ř(x, y)) = (x, y)",
        "braid" => "ř₁₂ř₂₃ř₁₂ = ř₂₃ř₁₂ř₂₃ on X³",
        "abelian_add" => "(B, +) is an abelian group",
        "associative_mul" => "a(bc) = (ab)c",
        "distributive" => "a(b + c) = ab + ac and (a + b)c = ac + bc",
        "nilpotent" => "B^k = 0 for some k",
        "additive_group" => "(B, +) is an abelian group",
        "circle_group" => "(B, ∘) is a group",
        "compatibility" => "a∘(b + c) + a = a∘b + a∘c",
        "ideal" => "J is an additive subgroup, normal in (B, ∘) and σ-invariant",
        "hom" => "ř′(f(x), f(y)) = (f × f)(ř(x, y)) and f is onto",
        "iso" => "a bijective homomorphism exists",
        "dual_forms" => "Σ e_{y,σ_x(y)} ⊗ e_{x,τ_y(x)} = Σ e_{τ_y(x),x} ⊗ e_{σ_x(y),y}",
        "check_squared" => "ř² = 𝕀",
        "r_is_perm_check" => "r = 𝒫ř",
        "check_spec_is_perm_r_spec" => "R(λ) = 𝒫Ř(λ)",
        "check_nnz" => "ř is a permutation matrix",
        "ybe_braid" => "Ř₁₂(λ₁−λ₂)Ř₂₃(λ₁)Ř₁₂(λ₂) = Ř₂₃(λ₂)Ř₁₂(λ₁)Ř₂₃(λ₁−λ₂)",
        "ybe_standard" => "R₁₂(λ₁−λ₂)R₁₃(λ₁)R₂₃(λ₂) = R₂₃(λ₂)R₁₃(λ₁)R₁₂(λ₁−λ₂)",
        "unitarity" | "unitarity_grid" => "R₁₂(λ)R₂₁(−λ) = (1 − λ²)𝕀",
        "crossing_unitarity" => "R^{t₁}(λ)R^{t₂}(−λ−𝒩) = λ(−λ−𝒩)𝕀",
        "t1t2" => "R^{t₁t₂}(λ) = R₂₁(λ)",
        "p3_perm_square" => "(𝒫^{t₁})² = 𝒩𝒫^{t₁}",
        "p3_absorb" => "r^{t₁}𝒫^{t₁} = 𝒫^{t₁}r^{t₂} = 𝒫^{t₁}",
        "p3_inverse" => "r^{t₁}r^{t₂} = 𝕀",
        "hecke_braid" => "g_n g_{n+1} g_n = g_{n+1} g_n g_{n+1}",
        "hecke_far_commute" => "g_n g_m = g_m g_n for |n − m| > 1",
        "hecke_quadratic" => "g_n² = 𝕀",
        "commuting" => "[t^(k), t^(l)] = 0",
        "trace_consistency" => "tr₀T₀(λ) = Σ_k t^(k) λ^(N−k)",
        "shift_order" => "Π^N = 𝕀",
        "h_nm1" => "H^(N−1) = Σ_n ř_{n,n+1} + ř_{N1}",
        "h_nm2" => "H^(N−2) = Σ_{m<n} ř_{n,n+1}ř_{m,m+1} + Σ_n ř_{n,n+1}ř_{N1} + ř_{N1}ř_{N−1,N}",
        "h1" => "H^(1) = Σ_n ℜ_{n;1}ř_{N1}ℜ_{N;n+1} + ℜ_{N;1}",
        "t_n" => "t^(N) = 𝒫₁₂𝒫₂₃⋯𝒫_{N−1,N}",
        "t0" => "t^(0) = Σ ⊗_n e_{x_n,τ_{y_n}(x_n)} over y_n = σ_{x_{n+1}}(y_{n+1})",
        "shift_bulk" => "ℜ_{N;1}ř_{n,n+1} = ř_{n−1,n}ℜ_{N;1}",
        "shift_first" => "ℜ_{N;1}ř_{12} = ℜ_{N;2}",
        "shift_last" => "ř_{N−1,N}ℜ_{N;1} = ℜ_{N−1;1}",
        "rtt" | "rtt_single_site" => "Ř₁₂(λ₁−λ₂)T₁(λ₁)T₂(λ₂) = T₁(λ₂)T₂(λ₁)Ř₁₂(λ₁−λ₂)",
        "rsym1" => "(B⊗B)R(λ) = R(λ)(B⊗B)",
        "tsym1" => "(B⊗B^⊗N)T(λ) = T(λ)(B⊗B^⊗N)",
        "m_r_level" => "(M⊗M)r = r(M⊗M)",
        "a1" => "Δ(e_{x,y})r = rΔ(e_{x,y})",
        "k1" => "(e_{x,y}⊗e_{x,y})r = r(e_{x,y}⊗e_{x,y})",
        "two_site" => "(e_{x,y}⊗e_{x,y})ř = ř(e_{x,y}⊗e_{x,y})",
        "cc2" => "[e_{x,y}^⊗N, ř_{1N}] = 0",
        "charges" => "[G, t^(k)] = 0 for every asserted k",
        "cocycle" => "α_x α_y = α_{σ_x(y)} α_{τ_y(x)}",
        "yangian_match" => "relations of the trivial solution are the Yangian relations",
        "induce_hom" => "L^(k)_{x,y} ↦ L^(k)_{f(x),f(y)} maps relations onto relations",
        "y1_identity_level0" => "ř₁₂L₁^(0)L₂^(m) = L₁^(m)L₂^(0)ř₁₂ with L^(0) = 𝕀",
        "a2_gl_termwise" | "a2_gl_table" => "[𝔏_{ij}, 𝔏_{kl}] = 𝔏_{kj}δ_{il} − 𝔏_{il}δ_{kj}",
        "rep_constant" => "L^(n)_{x,y} ↦ x is a representation",
        "rep_tensor" => "L^(n)_{x,y} ↦ x ⊗ y is a representation",
        "rep_graded" => "L^(n)_{x,y} ↦ x ⊗ c_n is a representation",
        "rep_linearPoly" => "L^(n)_{x,y} ↦ x ⊗ c_n with c_k = 0 for k ≥ 2 is a representation",
        "rep_graded_no_nf" => "without xy = ř(x, y) the graded map leaves residues",
        s if s.starts_with("cc1_") => "[e_{x,y}^⊗N, ř_{n,n+1}] = 0",
        s if s.starts_with("k2_s") => "[Σ_{m₁<⋯<m_n} (e)_{m₁}⋯(e)_{m_n}, t(λ)] = 0",
        _ => "",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchoredCheck {
    pub check: String,
    pub anchor: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl From<CheckResult> for AnchoredCheck {
    fn from(c: CheckResult) -> Self {
        AnchoredCheck { anchor: anchor(&c.check), check: c.check, pass: c.pass, witness: c.witness }
    }
}

pub fn anchored(checks: impl IntoIterator<Item = CheckResult>) -> Vec<AnchoredCheck> {
    checks.into_iter().map(AnchoredCheck::from).collect()
}

pub fn prefixed(prefix: &str, checks: impl IntoIterator<Item = CheckResult>) -> Vec<CheckResult> {
    checks.into_iter().map(|mut c| {
        c.check = format!("{prefix}/{}", c.check);
        c
    }).collect()
}

/// The checks of a symmetry report plus one `charges` check for the asserted commutators.
pub fn symmetry_checks(r: &SymmetryReport) -> Vec<CheckResult> {
    let mut v = r.checks.clone();
    let ok = r.per_k.iter().zip(&r.asserted).all(|(&p, &a)| p || !a);
    v.push(if ok {
        CheckResult::pass("charges")
    } else {
        CheckResult::fail("charges", r.witness.clone().unwrap_or_default())
    });
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<AnchoredCheck>,
    pub data: Value,
    pub pass: bool,
    pub exit_status: i32,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, checks: Vec<CheckResult>, data: Value) -> Self {
        let checks = anchored(checks);
        let pass = checks.iter().all(|c| c.pass);
        RunReport {
            command: command.into(),
            inputs,
            checks,
            data,
            pass,
            exit_status: if pass { 0 } else { 1 },
            wall_time_s: 0.0,
        }
    }
}
