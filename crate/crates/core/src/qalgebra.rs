//! Formal defining relations of the quantum algebra `𝔄(X, ř)` and their images
//! in representations built from the structure algebra `A_(X,ř)`.
//!
//! A relation is the six-term combination `Q − P` of order-preserving products
//! of two generators `L^(level)_{z,w}`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::chain::{verify_rtt, DEFAULT_BUDGET};
use crate::error::Result;
use crate::exact::Rational;
use crate::report::{CheckResult, Witness};
use crate::rmatrix::RBundle;
use crate::solution::{check_hom, SetSolution, SolutionHom};

pub const DEFAULT_MAX_LEVEL: usize = 2;

/// `L^(level)_{z,w}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QAGenerator {
    pub z: usize,
    pub w: usize,
    pub level: usize,
}

impl Serialize for QAGenerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.z)?;
        seq.serialize_element(&self.w)?;
        seq.serialize_element(&self.level)?;
        seq.end()
    }
}

fn g(z: usize, w: usize, level: usize) -> QAGenerator {
    QAGenerator { z, w, level }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QATerm {
    pub coef: Rational,
    pub left: QAGenerator,
    pub right: QAGenerator,
}

/// `(x, j, y, i, n, m)`
pub type Tag = [usize; 6];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QARelation {
    pub tag: Tag,
    pub terms: Vec<QATerm>,
}

/// Words in the generators with rational coefficients, zero coefficients dropped.
pub type FormalSum = BTreeMap<Vec<QAGenerator>, Rational>;

fn add_word(sum: &mut FormalSum, word: Vec<QAGenerator>, coef: &Rational) {
    let entry = sum.entry(word.clone()).or_insert_with(Rational::zero);
    *entry += coef;
    if entry.is_zero() {
        sum.remove(&word);
    }
}

/// Fixes the overall sign so that the first coefficient is positive.
fn sign_normalized(mut sum: FormalSum) -> FormalSum {
    if sum.values().next().is_some_and(Rational::is_negative) {
        for c in sum.values_mut() {
            *c = -c.clone();
        }
    }
    sum
}

impl QARelation {
    fn from_terms(tag: Tag, terms: [(i64, QAGenerator, QAGenerator); 6]) -> Self {
        let terms = terms.into_iter().map(|(c, left, right)| QATerm { coef: Rational::from(c), left, right }).collect();
        QARelation { tag, terms }
    }

    /// Like terms collected.
    pub fn collected(&self) -> FormalSum {
        let mut sum = FormalSum::new();
        for t in &self.terms {
            add_word(&mut sum, vec![t.left, t.right], &t.coef);
        }
        sum
    }

    /// Like terms collected, up to an overall sign.
    pub fn normalized(&self) -> FormalSum {
        sign_normalized(self.collected())
    }

    pub fn rename(&self, f: &[usize]) -> QARelation {
        let r = |q: QAGenerator| g(f[q.z], f[q.w], q.level);
        let [x, j, y, i, n, m] = self.tag;
        QARelation {
            tag: [f[x], f[j], f[y], f[i], n, m],
            terms: self.terms.iter().map(|t| QATerm { coef: t.coef.clone(), left: r(t.left), right: r(t.right) }).collect(),
        }
    }
}

/// `Q − P` for one index tuple.
pub fn relation(sol: &SetSolution, tag: Tag) -> QARelation {
    let [x, j, y, i, n, m] = tag;
    let (xy, yx) = sol.apply(x, y);
    let (ji, ij) = sol.apply(j, i);
    QARelation::from_terms(
        tag,
        [
            (1, g(xy, j, n + 1), g(yx, i, m)),
            (-1, g(xy, j, n), g(yx, i, m + 1)),
            (1, g(x, j, n), g(y, i, m)),
            (-1, g(x, ji, m), g(y, ij, n + 1)),
            (1, g(x, ji, m + 1), g(y, ij, n)),
            (-1, g(x, j, m), g(y, i, n)),
        ],
    )
}

fn tags(size: usize, max_level: usize) -> Vec<Tag> {
    let mut out = Vec::with_capacity(size.pow(4) * (max_level + 1).pow(2));
    for x in 0..size {
        for j in 0..size {
            for y in 0..size {
                for i in 0..size {
                    for n in 0..=max_level {
                        for m in 0..=max_level {
                            out.push([x, j, y, i, n, m]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// One relation per `(x, j, y, i) ∈ X⁴` and `(n, m) ∈ [0, max_level]²`, sorted by tag.
pub fn generate_relations(sol: &SetSolution, max_level: usize) -> Vec<QARelation> {
    tags(sol.size, max_level).into_iter().map(|t| relation(sol, t)).collect()
}

/// `[L^(n+1)_{ij}, L^(m)_{kl}] − [L^(n)_{ij}, L^(m+1)_{kl}] − L^(m)_{kj}L^(n)_{il} + L^(n)_{kj}L^(m)_{il}`
pub fn yangian_relation(tag: Tag) -> QARelation {
    let [i, j, k, l, n, m] = tag;
    QARelation::from_terms(
        tag,
        [
            (1, g(i, j, n + 1), g(k, l, m)),
            (-1, g(k, l, m), g(i, j, n + 1)),
            (-1, g(i, j, n), g(k, l, m + 1)),
            (1, g(k, l, m + 1), g(i, j, n)),
            (-1, g(k, j, m), g(i, l, n)),
            (1, g(k, j, n), g(i, l, m)),
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YangianMatch {
    pub relations: usize,
    /// Tags `(x, j, y, i, n, m)` whose relation differs from the Yangian one at `(y, j, x, i, n, m)`.
    pub mismatches: Vec<Tag>,
    pub same_set: bool,
}

impl YangianMatch {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.same_set
    }
}

/// Compares generated relations of the trivial solution with the Yangian list.
pub fn match_yangian(generated: &[QARelation], yangian: &[QARelation]) -> YangianMatch {
    let by_tag: BTreeMap<Tag, &QARelation> = yangian.iter().map(|r| (r.tag, r)).collect();
    let mismatches = generated
        .iter()
        .filter(|r| {
            let [x, j, y, i, n, m] = r.tag;
            by_tag.get(&[y, j, x, i, n, m]).is_none_or(|y| y.normalized() != r.normalized())
        })
        .map(|r| r.tag)
        .collect();
    let set = |rs: &[QARelation]| -> BTreeSet<Vec<(Vec<QAGenerator>, Rational)>> {
        rs.iter().map(|r| r.normalized().into_iter().collect::<Vec<_>>()).filter(|v| !v.is_empty()).collect()
    };
    YangianMatch { relations: generated.len(), mismatches, same_set: set(generated) == set(yangian) }
}

pub fn yangian_form(size: usize, max_level: usize) -> (Vec<QARelation>, YangianMatch) {
    let yangian: Vec<QARelation> = tags(size, max_level).into_iter().map(yangian_relation).collect();
    let generated = generate_relations(&SetSolution::trivial(size), max_level);
    let report = match_yangian(&generated, &yangian);
    (yangian, report)
}

/// Canonical representative of `{(x, y), ř(x, y)}` in degree two of `A_(X,ř)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Deg2Class {
    pub u: usize,
    pub v: usize,
}

pub fn structure_nf(sol: &SetSolution, x: usize, y: usize) -> Deg2Class {
    let (u, v) = (x, y).min(sol.apply(x, y));
    Deg2Class { u, v }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum RepKind {
    /// `L^(n)_{x,y} ↦ x`
    Constant,
    /// `L^(n)_{x,y} ↦ x ⊗ y`
    Tensor,
    /// `L^(n)_{x,y} ↦ x ⊗ c_n`
    Graded,
    /// `Graded` with `c_k = 0` for `k ≥ 2`
    LinearPoly,
}

impl RepKind {
    pub const ALL: [RepKind; 4] = [RepKind::Constant, RepKind::Tensor, RepKind::Graded, RepKind::LinearPoly];

    pub fn name(self) -> &'static str {
        match self {
            RepKind::Constant => "constant",
            RepKind::Tensor => "tensor",
            RepKind::Graded => "graded",
            RepKind::LinearPoly => "linearPoly",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepSpec {
    pub kind: RepKind,
    /// Compare raw degree-two words instead of structure-algebra classes.
    pub disable_nf: bool,
}

impl RepSpec {
    pub fn new(kind: RepKind) -> Self {
        RepSpec { kind, disable_nf: false }
    }
}

/// Basis element of the image of a product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct ImageKey {
    a: (usize, usize),
    b: Option<(usize, usize)>,
    c: Option<(usize, usize)>,
}

fn image(sol: &SetSolution, spec: RepSpec, rel: &QARelation) -> BTreeMap<ImageKey, Rational> {
    let nf = |x: usize, y: usize| {
        if spec.disable_nf {
            (x, y)
        } else {
            let c = structure_nf(sol, x, y);
            (c.u, c.v)
        }
    };
    let mut out: BTreeMap<ImageKey, Rational> = BTreeMap::new();
    for t in &rel.terms {
        let (l, r) = (t.left, t.right);
        let a = nf(l.z, r.z);
        let key = match spec.kind {
            RepKind::Constant => ImageKey { a, b: None, c: None },
            RepKind::Tensor => ImageKey { a, b: Some(nf(l.w, r.w)), c: None },
            RepKind::Graded | RepKind::LinearPoly => {
                if spec.kind == RepKind::LinearPoly && (l.level >= 2 || r.level >= 2) {
                    continue;
                }
                ImageKey { a, b: None, c: Some((l.level.min(r.level), l.level.max(r.level))) }
            }
        };
        *out.entry(key).or_insert_with(Rational::zero) += &t.coef;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn describe(kind: RepKind, residue: &BTreeMap<ImageKey, Rational>) -> String {
    residue
        .iter()
        .map(|(k, c)| {
            let mut s = format!("{c}·x{}x{}", k.a.0, k.a.1);
            if let Some(b) = k.b {
                s += &format!("⊗x{}x{}", b.0, b.1);
            }
            if let Some(cc) = k.c {
                s += &format!("⊗c{}c{}", cc.0, cc.1);
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" + ")
        + match kind {
            RepKind::LinearPoly => " (c_k = 0 for k ≥ 2)",
            _ => "",
        }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub spec: RepSpec,
    pub relations: usize,
    pub nonzero: usize,
    pub result: CheckResult,
}

/// Every relation image must reduce to zero.
pub fn check_representation(sol: &SetSolution, relations: &[QARelation], spec: RepSpec) -> RepReport {
    let residues: Vec<(Tag, BTreeMap<ImageKey, Rational>)> = relations
        .par_iter()
        .map(|r| (r.tag, image(sol, spec, r)))
        .filter(|(_, img)| !img.is_empty())
        .collect();
    let witness = residues.first().map(|(tag, img)| {
        Witness { elements: Some(tag.to_vec()), ..Witness::note(describe(spec.kind, img)) }
    });
    let name = format!("rep_{}{}", spec.kind.name(), if spec.disable_nf { "_no_nf" } else { "" });
    RepReport { spec, relations: relations.len(), nonzero: residues.len(), result: CheckResult::from_option(name, witness) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InduceReport {
    pub map: Vec<usize>,
    pub relations: usize,
    pub result: CheckResult,
}

/// `L^(k)_{x,y} ↦ L^(k)_{f(x),f(y)}` sends each defining relation onto the
/// codomain relation with the renamed tag, term by term.
pub fn induce_hom(f: &SolutionHom, max_level: usize) -> Result<InduceReport> {
    let f = check_hom(&f.map, &f.domain, &f.codomain)?;
    let rels = generate_relations(&f.domain, max_level);
    let bad = rels.par_iter().find_map_first(|r| {
        let img = r.rename(&f.map);
        let target = relation(&f.codomain, img.tag);
        (img.terms != target.terms).then(|| Witness::elements(r.tag.to_vec()).with_note(format!("image tag {:?}", img.tag)))
    });
    Ok(InduceReport { map: f.map.clone(), relations: rels.len(), result: CheckResult::from_option("induce_hom", bad) })
}

fn delta(a: usize, b: usize) -> Rational {
    if a == b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `L^(0) = 𝕀` substituted into a product of two generators.
fn add_product_level0(sum: &mut FormalSum, coef: i64, l: QAGenerator, r: QAGenerator) {
    let c = Rational::from(coef);
    let mut word = Vec::new();
    let mut scale = c;
    for q in [l, r] {
        if q.level == 0 {
            scale = &scale * &delta(q.z, q.w);
        } else {
            word.push(q);
        }
    }
    if !scale.is_zero() {
        add_word(sum, word, &scale);
    }
}

/// `ř₁₂ L₁^(0) L₂^(m) − L₁^(m) L₂^(0) ř₁₂` at entry `(x, y), (j, i)` with `L^(0) = 𝕀`.
pub fn y1_entry(sol: &SetSolution, [x, j, y, i]: [usize; 4], m: usize) -> FormalSum {
    let (xy, yx) = sol.apply(x, y);
    let (ji, ij) = sol.apply(j, i);
    let mut s = FormalSum::new();
    add_product_level0(&mut s, 1, g(xy, j, 0), g(yx, i, m));
    add_product_level0(&mut s, -1, g(x, ji, m), g(y, ij, 0));
    s
}

/// `ř₁₂ L₁^(1) L₂^(m) − L₁^(m) L₂^(1) ř₁₂ − L₁^(m) L₂^(0) + L₁^(0) L₂^(m)` at entry `(x, y), (j, i)` with `L^(0) = 𝕀`.
pub fn a2_entry(sol: &SetSolution, [x, j, y, i]: [usize; 4], m: usize) -> FormalSum {
    let (xy, yx) = sol.apply(x, y);
    let (ji, ij) = sol.apply(j, i);
    let mut s = FormalSum::new();
    add_product_level0(&mut s, 1, g(xy, j, 1), g(yx, i, m));
    add_product_level0(&mut s, -1, g(x, ji, m), g(y, ij, 1));
    add_product_level0(&mut s, -1, g(x, j, m), g(y, i, 0));
    add_product_level0(&mut s, 1, g(x, j, 0), g(y, i, m));
    s
}

/// `[𝔏_{ij}, 𝔏_{kl}] − 𝔏_{kj}δ_{il} + 𝔏_{il}δ_{kj}` with `𝔏 = L^(1)`.
pub fn gl_relation([i, j, k, l]: [usize; 4]) -> FormalSum {
    let mut s = FormalSum::new();
    add_word(&mut s, vec![g(i, j, 1), g(k, l, 1)], &Rational::one());
    add_word(&mut s, vec![g(k, l, 1), g(i, j, 1)], &Rational::from(-1));
    add_word(&mut s, vec![g(k, j, 1)], &-delta(i, l));
    add_word(&mut s, vec![g(i, l, 1)], &delta(k, j));
    s
}

fn quads(size: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..size.pow(4)).map(move |t| [t / size.pow(3), t / size.pow(2) % size, t / size % size, t % size])
}

fn relation_set(sums: impl Iterator<Item = FormalSum>) -> BTreeSet<Vec<(Vec<QAGenerator>, Rational)>> {
    sums.map(sign_normalized).filter(|s| !s.is_empty()).map(|s| s.into_iter().collect()).collect()
}

/// Level-zero and level-one consequences of the exchange relation with `L^(0) = 𝕀`.
pub fn level01_checks(sol: &SetSolution, max_level: usize) -> Result<Vec<CheckResult>> {
    sol.require_valid()?;
    let n = sol.size;
    let mut checks = Vec::new();
    let y1_bad = (1..=max_level.max(1))
        .flat_map(|m| quads(n).map(move |q| (q, m)))
        .find(|&(q, m)| !y1_entry(sol, q, m).is_empty())
        .map(|(q, m)| Witness::elements(q.to_vec()).with_note(format!("m = {m}")));
    checks.push(CheckResult::from_option("y1_identity_level0", y1_bad));
    // entry (x, y), (j, i) corresponds to the gl relation at (y, j, x, i)
    let bad = quads(n).find(|&[x, j, y, i]| sign_normalized(a2_entry(sol, [x, j, y, i], 1)) != sign_normalized(gl_relation([y, j, x, i])));
    checks.push(CheckResult::from_option("a2_gl_termwise", bad.map(|q| Witness::elements(q.to_vec()))));
    let same = relation_set(quads(n).map(|q| a2_entry(sol, q, 1))) == relation_set(quads(n).map(gl_relation));
    checks.push(if same { CheckResult::pass("a2_gl_table") } else { CheckResult::fail("a2_gl_table", Witness::note("relation sets differ")) });
    let mut rtt = verify_rtt(&RBundle::build(sol)?, 1, DEFAULT_BUDGET)?;
    rtt.check = "rtt_single_site".into();
    checks.push(rtt);
    Ok(checks)
}

/// Relation export sorted by tag.
pub fn relations_json(relations: &[QARelation]) -> serde_json::Value {
    let mut sorted: Vec<&QARelation> = relations.iter().collect();
    sorted.sort_by_key(|r| r.tag);
    serde_json::to_value(sorted).expect("relations serialize")
}
