//! Finite nilpotent rings and braces given by explicit operation tables.
//!
//! Elements are the indices `0..size`, and `0` is the identity of both
//! operations of a brace.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{CheckResult, Witness};

pub type Table = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteRing {
    pub size: usize,
    pub add: Table,
    pub mul: Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteBrace {
    pub size: usize,
    pub add: Table,
    pub circle: Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub abelian_add: CheckResult,
    pub associative_mul: CheckResult,
    pub distributive: CheckResult,
    pub nilpotency_index: Option<usize>,
}

impl RingReport {
    pub fn is_ring(&self) -> bool {
        self.abelian_add.pass && self.associative_mul.pass && self.distributive.pass
    }

    pub fn checks(&self) -> Vec<CheckResult> {
        vec![self.abelian_add.clone(), self.associative_mul.clone(), self.distributive.clone()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraceReport {
    pub additive_group: CheckResult,
    pub circle_group: CheckResult,
    pub compatibility: CheckResult,
}

impl BraceReport {
    pub fn pass(&self) -> bool {
        self.additive_group.pass && self.circle_group.pass && self.compatibility.pass
    }

    pub fn checks(&self) -> Vec<CheckResult> {
        vec![self.additive_group.clone(), self.circle_group.clone(), self.compatibility.clone()]
    }
}

/// A subset of a brace proposed as an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceIdeal {
    pub elements: BTreeSet<usize>,
}

impl BraceIdeal {
    pub fn new(elements: impl IntoIterator<Item = usize>) -> Self {
        BraceIdeal { elements: elements.into_iter().collect() }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.contains(&a)
    }
}

fn check_table(name: &str, size: usize, t: &Table) -> Result<()> {
    if size == 0 {
        return Err(Error::MalformedTable("size must be at least 1".into()));
    }
    if t.len() != size {
        return Err(Error::MalformedTable(format!("{name}: {} rows, expected {size}", t.len())));
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != size {
            return Err(Error::MalformedTable(format!(
                "{name}: row {i} has {} entries, expected {size}",
                row.len()
            )));
        }
        if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| **v >= size) {
            return Err(Error::MalformedTable(format!("{name}[{i}][{j}] = {v} is not below {size}")));
        }
    }
    Ok(())
}

fn associativity_failure(t: &Table) -> Option<Witness> {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return Some(Witness::elements(vec![a, b, c]).with_note("associativity"));
                }
            }
        }
    }
    None
}

/// Group axioms with identity 0; optionally commutativity.
fn group_failure(t: &Table, abelian: bool) -> Option<Witness> {
    let n = t.len();
    for a in 0..n {
        if t[0][a] != a || t[a][0] != a {
            return Some(Witness::elements(vec![a]).with_note("0 is not an identity"));
        }
        if !(0..n).any(|b| t[a][b] == 0 && t[b][a] == 0) {
            return Some(Witness::elements(vec![a]).with_note("no inverse"));
        }
    }
    if abelian {
        for a in 0..n {
            for b in 0..a {
                if t[a][b] != t[b][a] {
                    return Some(Witness::elements(vec![a, b]).with_note("not commutative"));
                }
            }
        }
    }
    associativity_failure(t)
}

fn inverse_in(t: &Table, a: usize) -> usize {
    (0..t.len()).find(|&b| t[a][b] == 0).expect("group element without inverse")
}

impl FiniteRing {
    pub fn new(add: Table, mul: Table) -> Result<Self> {
        let size = add.len();
        check_table("add", size, &add)?;
        check_table("mul", size, &mul)?;
        Ok(FiniteRing { size, add, mul })
    }

    pub fn neg(&self, a: usize) -> usize {
        inverse_in(&self.add, a)
    }

    /// Exhaustive axiom check plus the nilpotency index.
    pub fn validate(&self) -> RingReport {
        let n = self.size;
        let abelian_add = CheckResult::from_option("abelian_add", group_failure(&self.add, true));
        let associative_mul =
            CheckResult::from_option("associative_mul", associativity_failure(&self.mul));
        let mut dist = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (m, s) = (&self.mul, &self.add);
                    if m[a][s[b][c]] != s[m[a][b]][m[a][c]] {
                        dist = Some(Witness::elements(vec![a, b, c]).with_note("left distributivity"));
                        break 'outer;
                    }
                    if m[s[a][b]][c] != s[m[a][c]][m[b][c]] {
                        dist = Some(Witness::elements(vec![a, b, c]).with_note("right distributivity"));
                        break 'outer;
                    }
                }
            }
        }
        let distributive = CheckResult::from_option("distributive", dist);
        let nilpotency_index = if associative_mul.pass { self.nilpotency_index() } else { None };
        RingReport { abelian_add, associative_mul, distributive, nilpotency_index }
    }

    /// Least k such that every k-fold product vanishes, searched up to `size`.
    fn nilpotency_index(&self) -> Option<usize> {
        let mut products: BTreeSet<usize> = (0..self.size).collect();
        for k in 1..=self.size {
            if products.iter().all(|&p| p == 0) {
                return Some(k);
            }
            let next: BTreeSet<usize> = products
                .iter()
                .flat_map(|&p| (0..self.size).map(move |a| (p, a)))
                .map(|(p, a)| self.mul[p][a])
                .collect();
            if next == products {
                return None;
            }
            products = next;
        }
        None
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f = TableFile::parse(text)?;
        f.check_size()?;
        let mul = f.mul.ok_or_else(|| Error::MalformedTable("missing \"mul\" table".into()))?;
        let ring = FiniteRing::new(f.add, mul)?;
        Ok(ring)
    }
}

/// `Z/m` with ordinary addition and `a·b = c·a·b mod m`.
pub fn scaled_mod_ring(m: usize, c: usize) -> FiniteRing {
    assert!(m >= 1, "modulus must be positive");
    let add = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    let mul = (0..m).map(|a| (0..m).map(|b| (c * a * b) % m).collect()).collect();
    FiniteRing { size: m, add, mul }
}

/// The ideal `t·(Z/m)[t]/(t^cutoff)`.
///
/// Element `Σ_k c_k t^k` (k = 1..cutoff−1) has index `Σ_k c_k m^(k−1)`, so for
/// `m = 2`, `cutoff = 3` the elements are `0, t, t², t+t²` in that order.
pub fn truncated_poly_ring(m: usize, cutoff: usize) -> FiniteRing {
    assert!(m >= 1 && cutoff >= 1, "modulus and cutoff must be positive");
    let terms = cutoff - 1;
    let size = m.pow(terms as u32);
    let decode = |mut x: usize| -> Vec<usize> {
        (0..terms)
            .map(|_| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, d| acc * m + d);
    let mut add = vec![vec![0; size]; size];
    let mut mul = vec![vec![0; size]; size];
    for a in 0..size {
        let ca = decode(a);
        for b in 0..size {
            let cb = decode(b);
            let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % m).collect();
            add[a][b] = encode(&sum);
            // coefficient slot i holds t^(i+1)
            let mut prod = vec![0; terms];
            for (i, x) in ca.iter().enumerate() {
                for (j, y) in cb.iter().enumerate() {
                    let k = i + j + 1;
                    if k < terms {
                        prod[k] = (prod[k] + x * y) % m;
                    }
                }
            }
            mul[a][b] = encode(&prod);
        }
    }
    FiniteRing { size, add, mul }
}

/// Human-readable name of an element of [`truncated_poly_ring`].
pub fn truncated_poly_label(m: usize, mut index: usize) -> String {
    let mut parts = Vec::new();
    let mut k = 1;
    while index > 0 {
        let c = index % m;
        index /= m;
        if c != 0 {
            let mono = if k == 1 { "t".to_string() } else { format!("t^{k}") };
            parts.push(if c == 1 { mono } else { format!("{c}{mono}") });
        }
        k += 1;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// The brace of a nilpotent ring, `a∘b = a·b + a + b`.
pub fn ring_to_brace(ring: &FiniteRing) -> Result<FiniteBrace> {
    let report = ring.validate();
    if let Some(bad) = report.checks().into_iter().find(|c| !c.pass) {
        return Err(Error::InvalidBrace(format!("ring axiom {} fails", bad.check)));
    }
    if report.nilpotency_index.is_none() {
        return Err(Error::NotNilpotent);
    }
    let n = ring.size;
    let circle = (0..n)
        .map(|a| (0..n).map(|b| ring.add[ring.mul[a][b]][ring.add[a][b]]).collect())
        .collect();
    Ok(FiniteBrace { size: n, add: ring.add.clone(), circle })
}

/// The ring recovered from a brace by `a·b = a∘b − a − b`.
pub fn brace_to_ring(brace: &FiniteBrace) -> FiniteRing {
    let n = brace.size;
    let mul = (0..n)
        .map(|a| (0..n).map(|b| brace.sub(brace.sub(brace.circle[a][b], a), b)).collect())
        .collect();
    FiniteRing { size: n, add: brace.add.clone(), mul }
}

impl FiniteBrace {
    pub fn new(add: Table, circle: Table) -> Result<Self> {
        let size = add.len();
        check_table("add", size, &add)?;
        check_table("circle", size, &circle)?;
        Ok(FiniteBrace { size, add, circle })
    }

    /// The brace with `∘ = +` on `Z/n`.
    pub fn trivial(n: usize) -> Self {
        let add: Table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteBrace { size: n, add: add.clone(), circle: add }
    }

    pub fn neg(&self, a: usize) -> usize {
        inverse_in(&self.add, a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a][self.neg(b)]
    }

    pub fn circle_inverse(&self, a: usize) -> usize {
        inverse_in(&self.circle, a)
    }

    /// `σ_a(b) = a∘b − a`.
    pub fn sigma(&self, a: usize, b: usize) -> usize {
        self.sub(self.circle[a][b], a)
    }

    /// The ring product `a·b = a∘b − a − b`.
    pub fn ring_mul(&self, a: usize, b: usize) -> usize {
        self.sub(self.sub(self.circle[a][b], a), b)
    }

    pub fn validate(&self) -> BraceReport {
        let n = self.size;
        let additive_group = CheckResult::from_option("additive_group", group_failure(&self.add, true));
        let circle_group = CheckResult::from_option("circle_group", group_failure(&self.circle, false));
        let mut compat = None;
        if additive_group.pass {
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = self.add[self.circle[a][self.add[b][c]]][a];
                        let rhs = self.add[self.circle[a][b]][self.circle[a][c]];
                        if lhs != rhs {
                            compat = Some(Witness::elements(vec![a, b, c]));
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            compat = Some(Witness::note("additive group invalid"));
        }
        BraceReport {
            additive_group,
            circle_group,
            compatibility: CheckResult::from_option("compatibility", compat),
        }
    }

    /// Elements `a` central for `∘` with `a + a = 0` and `a∘a = 0`.
    pub fn central_involutive_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.central_involutive_failure(a).is_none()).collect()
    }

    /// The first failing condition for `a`, if any.
    pub fn central_involutive_failure(&self, a: usize) -> Option<&'static str> {
        if a >= self.size {
            return Some("element out of range");
        }
        if (0..self.size).any(|b| self.circle[a][b] != self.circle[b][a]) {
            return Some("a is not central");
        }
        if self.add[a][a] != 0 {
            return Some("a + a is not 0");
        }
        if self.circle[a][a] != 0 {
            return Some("a ∘ a is not 0");
        }
        None
    }

    /// Checks the ideal axioms, naming the first that fails.
    pub fn validate_ideal(&self, ideal: &BraceIdeal) -> Result<()> {
        let n = self.size;
        let j = &ideal.elements;
        if let Some(x) = j.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidIdeal(format!("element {x} out of range")));
        }
        if !ideal.contains(0) {
            return Err(Error::InvalidIdeal("additive subgroup: 0 missing".into()));
        }
        for &x in j {
            for &y in j {
                if !ideal.contains(self.add[x][y]) {
                    return Err(Error::InvalidIdeal(format!("additive subgroup: {x} + {y} not in J")));
                }
                if !ideal.contains(self.circle[x][y]) {
                    return Err(Error::InvalidIdeal(format!("circle subgroup: {x} ∘ {y} not in J")));
                }
            }
        }
        for g in 0..n {
            let gi = self.circle_inverse(g);
            for &x in j {
                let conj = self.circle[self.circle[g][x]][gi];
                if !ideal.contains(conj) {
                    return Err(Error::InvalidIdeal(format!("normality: {g} ∘ {x} ∘ {g}⁻ not in J")));
                }
                if !ideal.contains(self.sigma(g, x)) {
                    return Err(Error::InvalidIdeal(format!("σ-invariance: σ_{g}({x}) not in J")));
                }
            }
        }
        Ok(())
    }

    /// The additive coset index of every element, cosets numbered by their least member.
    pub fn coset_map(&self, ideal: &BraceIdeal) -> Vec<usize> {
        let n = self.size;
        let mut class = vec![usize::MAX; n];
        let mut next = 0;
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            for &x in &ideal.elements {
                class[self.add[a][x]] = next;
            }
            next += 1;
        }
        class
    }

    /// The quotient `B/J` and the coset map `B → B/J`.
    pub fn quotient(&self, ideal: &BraceIdeal) -> Result<(FiniteBrace, Vec<usize>)> {
        self.validate_ideal(ideal)?;
        let class = self.coset_map(ideal);
        let m = class.iter().max().map_or(0, |c| c + 1);
        let mut reps = vec![usize::MAX; m];
        for (a, &c) in class.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = a;
            }
        }
        let table = |t: &Table| -> Table {
            (0..m).map(|p| (0..m).map(|q| class[t[reps[p]][reps[q]]]).collect()).collect()
        };
        let (add, circle) = (table(&self.add), table(&self.circle));
        for a in 0..self.size {
            for b in 0..self.size {
                if class[self.add[a][b]] != add[class[a]][class[b]] {
                    return Err(Error::InvalidIdeal(format!("+ not well-defined on cosets at ({a}, {b})")));
                }
                if class[self.circle[a][b]] != circle[class[a]][class[b]] {
                    return Err(Error::InvalidIdeal(format!("∘ not well-defined on cosets at ({a}, {b})")));
                }
            }
        }
        Ok((FiniteBrace { size: m, add, circle }, class))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f = TableFile::parse(text)?;
        f.check_size()?;
        let circle =
            f.circle.ok_or_else(|| Error::MalformedTable("missing \"circle\" table".into()))?;
        FiniteBrace::new(f.add, circle)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    size: usize,
    add: Table,
    #[serde(default)]
    mul: Option<Table>,
    #[serde(default)]
    circle: Option<Table>,
}

impl TableFile {
    fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::MalformedTable(e.to_string())
        })
    }

    fn check_size(&self) -> Result<()> {
        let add = &self.add;
        if add.len() != self.size {
            return Err(Error::MalformedTable(format!(
                "\"size\" is {} but \"add\" has {} rows",
                self.size,
                add.len()
            )));
        }
        Ok(())
    }
}
