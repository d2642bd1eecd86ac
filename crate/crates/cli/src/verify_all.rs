use serde_json::{json, Value};
use ybl_core::brace::{ring_to_brace, truncated_poly_ring};
use ybl_core::chain::{verify_rtt, verify_shift_action, ChainSystem};
use ybl_core::corpus::Corpus;
use ybl_core::qalgebra::{check_representation, generate_relations, yangian_form, RepKind, RepSpec, DEFAULT_MAX_LEVEL};
use ybl_core::report::{CheckResult, Witness};
use ybl_core::rmatrix::RBundle;
use ybl_core::solution::SetSolution;
use ybl_core::symmetry::{
    central_symmetry, character_symmetries, fixed_element_gl, orbit_projector_symmetry, square_free_symmetry,
    verify_m_symmetry,
};
use ybl_core::Result;

use crate::report::{prefixed, symmetry_checks};

fn fits(dim: usize, legs: usize, budget: usize) -> bool {
    dim.checked_pow(legs as u32).is_some_and(|n| n <= budget)
}

fn entry_checks(sol: &SetSolution, max_sites: usize, budget: usize, skipped: &mut Vec<String>) -> Result<Vec<CheckResult>> {
    let mut out = sol.validate().checks();
    let n = sol.size;
    let bundle = RBundle::build(sol)?;
    out.push(bundle.dual_forms());
    out.extend(bundle.structure_checks());
    out.extend(bundle.verify_spectral()?.checks());
    for sites in 3..=max_sites {
        if fits(n, sites, budget) {
            out.extend(prefixed(&format!("N={sites}"), bundle.verify_hecke(sites)?));
        } else {
            skipped.push(format!("hecke N={sites}"));
        }
    }
    for sites in 1..=max_sites {
        if !fits(n, sites + 1, budget) {
            skipped.push(format!("chain N={sites}"));
            continue;
        }
        let chain = ChainSystem::from_bundle(bundle.clone(), sites, budget)?;
        let mut here = vec![chain.verify_commuting().result];
        if sites >= 2 {
            here.extend(chain.verify_closed_forms()?.checks());
        }
        if sites >= 4 {
            here.extend(verify_shift_action(&bundle, sites, budget)?);
        }
        if sites <= 2 && n <= 3 && fits(n, sites + 2, budget) {
            here.push(verify_rtt(&bundle, sites, budget)?);
        }
        out.extend(prefixed(&format!("N={sites}"), here));
    }
    let sym_sites = max_sites.min(3);
    if sym_sites >= 1 && fits(n, sym_sites + 1, budget) {
        let chain = ChainSystem::from_bundle(bundle.clone(), sym_sites, budget)?;
        let mut sym = Vec::new();
        for (i, s) in character_symmetries(sol)?.iter().enumerate() {
            sym.extend(prefixed(&format!("m_sym{i}"), symmetry_checks(&verify_m_symmetry(&chain, s)?)));
        }
        for (label, reports) in [
            ("orbit", orbit_projector_symmetry(&chain)),
            ("fixed_gl", fixed_element_gl(&chain)),
            ("square_free", square_free_symmetry(&chain)),
        ] {
            for (i, r) in reports.iter().enumerate() {
                sym.extend(prefixed(&format!("{label}{i}"), symmetry_checks(r)));
            }
        }
        out.extend(prefixed(&format!("N={sym_sites}"), sym));
    } else {
        skipped.push("symmetries".into());
    }
    let rels = generate_relations(sol, DEFAULT_MAX_LEVEL);
    for kind in RepKind::ALL {
        out.push(check_representation(sol, &rels, RepSpec::new(kind)).result);
    }
    let ablation = check_representation(sol, &rels, RepSpec { kind: RepKind::Graded, disable_nf: true });
    out.push(if ablation.nonzero > 0 {
        CheckResult::pass("rep_graded_no_nf")
    } else {
        CheckResult::fail("rep_graded_no_nf", Witness::note("no residue without the structure relations"))
    });
    Ok(out)
}

/// Checks on every corpus entry, plus corpus-independent Yangian and central-element checks.
pub fn verify_all(corpus: &Corpus, max_sites: usize, budget: usize) -> Result<(Vec<CheckResult>, Value)> {
    let mut checks = Vec::new();
    let mut entries = Vec::new();
    for e in &corpus.entries {
        let mut skipped = Vec::new();
        let c = entry_checks(&e.solution, max_sites, budget, &mut skipped)?;
        entries.push(json!({ "name": e.name, "size": e.solution.size, "checks": c.len(), "skipped": skipped }));
        checks.extend(prefixed(&e.name, c));
    }
    for n in 1..=3 {
        let (_, m) = yangian_form(n, DEFAULT_MAX_LEVEL);
        let w = (!m.pass()).then(|| Witness::note(format!("mismatched tags {:?}", m.mismatches)));
        checks.push(CheckResult::from_option(format!("yangian/n={n}/yangian_match"), w));
    }
    let brace = ring_to_brace(&truncated_poly_ring(2, 3))?;
    let all: Vec<usize> = (0..brace.size).collect();
    if fits(brace.size, 4, budget) {
        for b in 0..brace.size {
            for c in 0..brace.size {
                let r = central_symmetry(&brace, &all, (2, b, c), 3, budget)?;
                checks.extend(prefixed(&format!("central/b={b},c={c}"), symmetry_checks(&r)));
            }
        }
    }
    checks.sort_by(|a, b| a.check.cmp(&b.check));
    Ok((checks, json!({ "entries": entries })))
}
