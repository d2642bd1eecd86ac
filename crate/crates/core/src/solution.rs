//! Involutive non-degenerate set-theoretic solutions stored as σ/τ tables.

use serde::{Deserialize, Serialize};

use crate::brace::{BraceIdeal, FiniteBrace, Table};
use crate::error::{Error, Result};
use crate::report::{CheckResult, Witness};

/// Largest size accepted by the isomorphism search.
pub const ISO_SEARCH_LIMIT: usize = 8;

/// `ř(x, y) = (σ_x(y), τ_y(x))` with `sigma[x][y] = σ_x(y)` and `tau[y][x] = τ_y(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetSolution {
    pub name: String,
    pub size: usize,
    pub sigma: Table,
    pub tau: Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub nondegenerate: CheckResult,
    pub involutive: CheckResult,
    pub braid: CheckResult,
}

impl SolutionReport {
    pub fn pass(&self) -> bool {
        self.nondegenerate.pass && self.involutive.pass && self.braid.pass
    }

    pub fn checks(&self) -> Vec<CheckResult> {
        vec![self.nondegenerate.clone(), self.involutive.clone(), self.braid.clone()]
    }
}

/// A homomorphism of solutions, surjective onto the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionHom {
    pub domain: SetSolution,
    pub codomain: SetSolution,
    pub map: Vec<usize>,
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter().all(|&v| v < row.len() && !std::mem::replace(&mut seen[v], true))
}

fn check_shape(name: &str, size: usize, t: &Table) -> Result<()> {
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

impl SetSolution {
    pub fn new(name: impl Into<String>, sigma: Table, tau: Table) -> Result<Self> {
        let size = sigma.len();
        if size == 0 {
            return Err(Error::MalformedTable("solution must have at least one element".into()));
        }
        check_shape("sigma", size, &sigma)?;
        check_shape("tau", size, &tau)?;
        Ok(SetSolution { name: name.into(), size, sigma, tau })
    }

    /// `ř(x, y) = (x, y)` flipped: σ and τ are identities.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "size must be positive");
        let id: Table = (0..n).map(|_| (0..n).collect()).collect();
        SetSolution { name: format!("trivial:{n}"), size: n, sigma: id.clone(), tau: id }
    }

    /// `ř(i, j) = (j + 1, i − 1)` on `Z/m`.
    pub fn lyubashenko(m: usize) -> Self {
        assert!(m >= 1, "size must be positive");
        let sigma = (0..m).map(|_| (0..m).map(|y| (y + 1) % m).collect()).collect();
        let tau = (0..m).map(|_| (0..m).map(|x| (x + m - 1) % m).collect()).collect();
        SetSolution { name: format!("lyubashenko:{m}"), size: m, sigma, tau }
    }

    /// Rump's solution on the subset `elements` of a brace:
    /// `σ_x(y) = x∘y − x` and `τ_y(x) = t∘x − t` with `t` the circle inverse of `σ_x(y)`.
    /// Index `i` of the result stands for `elements[i]`.
    pub fn from_brace(brace: &FiniteBrace, elements: &[usize], name: impl Into<String>) -> Result<Self> {
        let report = brace.validate();
        if let Some(bad) = report.checks().into_iter().find(|c| !c.pass) {
            return Err(Error::InvalidBrace(format!("{} fails", bad.check)));
        }
        let mut pos = vec![usize::MAX; brace.size];
        for (i, &e) in elements.iter().enumerate() {
            if e >= brace.size || pos[e] != usize::MAX {
                return Err(Error::InvalidSolution(format!("bad subset element {e}")));
            }
            pos[e] = i;
        }
        if elements.is_empty() {
            return Err(Error::InvalidSolution("empty subset".into()));
        }
        let n = elements.len();
        let mut sigma = vec![vec![0; n]; n];
        let mut tau = vec![vec![0; n]; n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                let s = brace.sigma(x, y);
                let t = brace.circle_inverse(s);
                let u = brace.sub(brace.circle[t][x], t);
                if pos[s] == usize::MAX || pos[u] == usize::MAX {
                    return Err(Error::NotClosed(x, y));
                }
                sigma[i][j] = pos[s];
                tau[j][i] = pos[u];
            }
        }
        Ok(SetSolution { name: name.into(), size: n, sigma, tau })
    }

    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x][y], self.tau[y][x])
    }

    pub fn validate(&self) -> SolutionReport {
        let n = self.size;
        let mut nd = None;
        for x in 0..n {
            if !is_permutation(&self.sigma[x]) {
                nd = Some(Witness::elements(vec![x]).with_note("σ_x is not a bijection"));
                break;
            }
            if !is_permutation(&self.tau[x]) {
                nd = Some(Witness::elements(vec![x]).with_note("τ_x is not a bijection"));
                break;
            }
        }
        let mut inv = None;
        'pairs: for x in 0..n {
            for y in 0..n {
                let (u, v) = self.apply(x, y);
                if self.apply(u, v) != (x, y) {
                    inv = Some(Witness::elements(vec![x, y]));
                    break 'pairs;
                }
            }
        }
        let braid = self.braid_failure();
        SolutionReport {
            nondegenerate: CheckResult::from_option("nondegenerate", nd),
            involutive: CheckResult::from_option("involutive", inv),
            braid: CheckResult::from_option("braid", braid),
        }
    }

    fn braid_failure(&self) -> Option<Witness> {
        let n = self.size;
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (u, v) = self.apply(a, b);
            (u, v, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (u, v) = self.apply(b, c);
            (a, u, v)
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = (x, y, z);
                    if r12(r23(r12(t))) != r23(r12(r23(t))) {
                        return Some(Witness::elements(vec![x, y, z]));
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.validate().pass()
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.checks().into_iter().find(|c| !c.pass) {
            None => Ok(()),
            Some(c) => Err(Error::InvalidSolution(format!(
                "{}: {} fails at {:?}",
                self.name,
                c.check,
                c.witness.and_then(|w| w.elements).unwrap_or_default()
            ))),
        }
    }

    /// Finest partition closed under every σ_x and τ_x, blocks ordered by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for x in 0..n {
            for y in 0..n {
                for z in [self.sigma[x][y], self.tau[x][y]] {
                    let (a, b) = (find(&mut parent, y), find(&mut parent, z));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for x in 0..n {
            let root = find(&mut parent, x);
            if index[root] == usize::MAX {
                index[root] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[root]].push(x);
        }
        blocks
    }

    pub fn is_indecomposable(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Map each element to its orbit, onto the trivial solution on the orbit set.
    pub fn orbit_collapse(&self) -> Result<SolutionHom> {
        let orbits = self.orbits();
        let mut map = vec![0; self.size];
        for (k, block) in orbits.iter().enumerate() {
            for &x in block {
                map[x] = k;
            }
        }
        check_hom(&map, self, &SetSolution::trivial(orbits.len()))
    }

    /// Quotient by equality of σ-rows, with the induced τ checked well-defined.
    pub fn retract(&self) -> Result<(SetSolution, SolutionHom)> {
        let n = self.size;
        let mut reps: Vec<usize> = Vec::new();
        let mut class = vec![0; n];
        for x in 0..n {
            match reps.iter().position(|&r| self.sigma[r] == self.sigma[x]) {
                Some(c) => class[x] = c,
                None => {
                    class[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let m = reps.len();
        let mut sigma = vec![vec![usize::MAX; m]; m];
        let mut tau = vec![vec![usize::MAX; m]; m];
        for x in 0..n {
            for y in 0..n {
                let (cx, cy) = (class[x], class[y]);
                let (s, t) = (class[self.sigma[x][y]], class[self.tau[y][x]]);
                for (slot, v, what) in [(&mut sigma[cx][cy], s, "σ"), (&mut tau[cy][cx], t, "τ")] {
                    if *slot == usize::MAX {
                        *slot = v;
                    } else if *slot != v {
                        return Err(Error::IllDefinedRetraction(format!(
                            "induced {what} differs for representatives at ({x}, {y})"
                        )));
                    }
                }
            }
        }
        let retracted = SetSolution { name: format!("Ret({})", self.name), size: m, sigma, tau };
        let hom = check_hom(&class, self, &retracted)?;
        Ok((retracted, hom))
    }

    /// Number of retractions needed to reach one element, if that happens.
    pub fn multipermutation_level(&self) -> Result<Option<usize>> {
        let mut current = self.clone();
        let mut level = 0;
        while current.size > 1 {
            let (next, _) = current.retract()?;
            if next.size == current.size {
                return Ok(None);
            }
            current = next;
            level += 1;
        }
        Ok(Some(level))
    }

    /// Elements with `ř(x, x) = (x, x)`.
    pub fn square_free_points(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.apply(x, x) == (x, x)).collect()
    }

    /// Elements with `ř(x, y) = (y, x)` for every `y`.
    pub fn fixed_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| (0..self.size).all(|y| self.sigma[x][y] == y && self.tau[y][x] == x))
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SolutionFile = serde_json::from_str(text).map_err(|e| {
            Error::MalformedTable(e.to_string())
        })?;
        check_shape("sigma", f.size, &f.sigma)?;
        let name = f.name.unwrap_or_else(|| "file".into());
        match (f.tau, f.derive_tau_from.as_deref()) {
            (Some(tau), None) => SetSolution::new(name, f.sigma, tau),
            (None, Some("involutivity")) => {
                let sol = SetSolution::derive_tau(name, f.sigma)?;
                sol.require_valid()?;
                Ok(sol)
            }
            (Some(_), Some(_)) => Err(Error::MalformedTable(
                "give either \"tau\" or \"derive_tau_from\", not both".into(),
            )),
            (None, Some(other)) => Err(Error::MalformedTable(format!(
                "unknown derive_tau_from value {other:?}"
            ))),
            (None, None) => Err(Error::MalformedTable("missing \"tau\" table".into())),
        }
    }

    /// `τ_y(x) = σ⁻¹_{σ_x(y)}(x)`, forced by involutivity.
    pub fn derive_tau(name: impl Into<String>, sigma: Table) -> Result<Self> {
        let n = sigma.len();
        let mut inverse = vec![vec![0; n]; n];
        for (x, row) in sigma.iter().enumerate() {
            if !is_permutation(row) {
                return Err(Error::InvalidSolution(format!("σ_{x} is not a bijection")));
            }
            for (y, &v) in row.iter().enumerate() {
                inverse[x][v] = y;
            }
        }
        let mut tau = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                tau[y][x] = inverse[sigma[x][y]][x];
            }
        }
        SetSolution::new(name, sigma, tau)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("solution serializes")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    #[serde(default)]
    name: Option<String>,
    size: usize,
    sigma: Table,
    #[serde(default)]
    tau: Option<Table>,
    #[serde(default)]
    derive_tau_from: Option<String>,
}

/// Checks `ř′(f(x), f(y)) = (f×f)(ř(x, y))` on all pairs and surjectivity.
pub fn check_hom(map: &[usize], domain: &SetSolution, codomain: &SetSolution) -> Result<SolutionHom> {
    if map.len() != domain.size {
        return Err(Error::InvalidHom(format!(
            "map has {} entries for a domain of size {}",
            map.len(),
            domain.size
        )));
    }
    if let Some(x) = (0..map.len()).find(|&x| map[x] >= codomain.size) {
        return Err(Error::InvalidHom(format!("image of {x} out of range")));
    }
    for x in 0..domain.size {
        for y in 0..domain.size {
            let (u, v) = domain.apply(x, y);
            if codomain.apply(map[x], map[y]) != (map[u], map[v]) {
                return Err(Error::InvalidHom(format!("intertwining fails at ({x}, {y})")));
            }
        }
    }
    let mut hit = vec![false; codomain.size];
    for &v in map {
        hit[v] = true;
    }
    if let Some(v) = hit.iter().position(|h| !h) {
        return Err(Error::InvalidHom(format!("{v} is not in the image")));
    }
    Ok(SolutionHom { domain: domain.clone(), codomain: codomain.clone(), map: map.to_vec() })
}

impl SolutionHom {
    pub fn identity(sol: &SetSolution) -> Self {
        SolutionHom { domain: sol.clone(), codomain: sol.clone(), map: (0..sol.size).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SolutionHom) -> Result<SolutionHom> {
        if self.codomain != other.domain {
            return Err(Error::InvalidHom("codomain and domain differ".into()));
        }
        let map: Vec<usize> = self.map.iter().map(|&x| other.map[x]).collect();
        check_hom(&map, &self.domain, &other.codomain)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size == self.codomain.size
    }
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    lens.sort_unstable();
    lens
}

/// Isomorphism-invariant data of an element, used to prune the search.
fn element_signature(s: &SetSolution, x: usize) -> (Vec<usize>, Vec<usize>, bool) {
    (cycle_type(&s.sigma[x]), cycle_type(&s.tau[x]), s.apply(x, x) == (x, x))
}

/// All bijections intertwining `a` and `b`.
pub fn isomorphisms(a: &SetSolution, b: &SetSolution) -> Result<Vec<Vec<usize>>> {
    if a.size.max(b.size) > ISO_SEARCH_LIMIT {
        return Err(Error::TooLarge(format!(
            "isomorphism search is limited to {ISO_SEARCH_LIMIT} elements"
        )));
    }
    let mut found = Vec::new();
    if a.size != b.size {
        return Ok(found);
    }
    let sa: Vec<_> = (0..a.size).map(|x| element_signature(a, x)).collect();
    let sb: Vec<_> = (0..b.size).map(|x| element_signature(b, x)).collect();
    let mut map = vec![usize::MAX; a.size];
    let mut used = vec![false; b.size];
    search(a, b, &sa, &sb, 0, &mut map, &mut used, &mut found);
    Ok(found)
}

/// Consistency of the partial map on all pairs whose data is already assigned.
fn consistent(a: &SetSolution, b: &SetSolution, map: &[usize], upto: usize) -> bool {
    for x in 0..=upto {
        for y in 0..=upto {
            if x != upto && y != upto {
                continue;
            }
            let (u, v) = a.apply(x, y);
            let (p, q) = b.apply(map[x], map[y]);
            if (map[u] != usize::MAX && map[u] != p) || (map[v] != usize::MAX && map[v] != q) {
                return false;
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &SetSolution,
    b: &SetSolution,
    sa: &[(Vec<usize>, Vec<usize>, bool)],
    sb: &[(Vec<usize>, Vec<usize>, bool)],
    x: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    if x == a.size {
        if check_hom(map, a, b).is_ok() {
            found.push(map.clone());
        }
        return;
    }
    for y in 0..b.size {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, b, map, x) {
            search(a, b, sa, sb, x + 1, map, used, found);
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
}

pub fn find_iso(a: &SetSolution, b: &SetSolution) -> Result<Option<SolutionHom>> {
    Ok(isomorphisms(a, b)?
        .into_iter()
        .next()
        .map(|m| SolutionHom { domain: a.clone(), codomain: b.clone(), map: m }))
}

pub fn automorphisms(sol: &SetSolution) -> Result<Vec<Vec<usize>>> {
    isomorphisms(sol, sol)
}

/// The coset map `X → X+J ⊆ B/J` as a homomorphism of solutions.
pub fn quotient_by_ideal(brace: &FiniteBrace, elements: &[usize], ideal: &BraceIdeal) -> Result<SolutionHom> {
    let domain = SetSolution::from_brace(brace, elements, "X")?;
    let (qbrace, class) = brace.quotient(ideal)?;
    let mut cosets: Vec<usize> = elements.iter().map(|&x| class[x]).collect();
    cosets.sort_unstable();
    cosets.dedup();
    let codomain = SetSolution::from_brace(&qbrace, &cosets, "X/J")?;
    let map: Vec<usize> = elements
        .iter()
        .map(|&x| cosets.binary_search(&class[x]).expect("coset present"))
        .collect();
    check_hom(&map, &domain, &codomain)
}

/// A retraction chain ending in a solution isomorphic to `lyubashenko(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LyubashenkoTarget {
    pub m: usize,
    pub chain: Vec<SolutionHom>,
    pub iso: SolutionHom,
}

/// Best-effort search along the retraction sequence for a stage isomorphic to
/// some `lyubashenko(m)` with `m > 1`. `Ok(None)` means not found.
pub fn retract_to_lyubashenko(sol: &SetSolution) -> Result<Option<LyubashenkoTarget>> {
    sol.require_valid()?;
    let stage_hit = |s: &SetSolution| -> Result<Option<SolutionHom>> {
        if s.size < 2 || s.size > ISO_SEARCH_LIMIT {
            return Ok(None);
        }
        find_iso(s, &SetSolution::lyubashenko(s.size))
    };
    if let Some(iso) = stage_hit(sol)? {
        return Ok(Some(LyubashenkoTarget { m: sol.size, chain: Vec::new(), iso }));
    }
    if !sol.is_indecomposable() {
        return Err(Error::Precondition("solution is decomposable".into()));
    }
    let n = sol.size;
    let sigma_varies = (0..n).any(|z| (0..n).any(|x| sol.sigma[x][z] != sol.sigma[0][z]));
    if !sigma_varies {
        return Err(Error::Precondition("σ_x(z) does not depend on x".into()));
    }
    if sol.multipermutation_level()?.is_none() {
        return Err(Error::Precondition("multipermutation level is infinite".into()));
    }
    let mut chain: Vec<SolutionHom> = Vec::new();
    let mut stage = sol.clone();
    while stage.size > 1 {
        let (next, hom) = stage.retract()?;
        chain.push(hom);
        stage = next;
        if let Some(iso) = stage_hit(&stage)? {
            return Ok(Some(LyubashenkoTarget { m: stage.size, chain, iso }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{ring_to_brace, scaled_mod_ring, truncated_poly_ring};
    use proptest::prelude::*;

    fn brace42() -> FiniteBrace {
        ring_to_brace(&scaled_mod_ring(4, 2)).unwrap()
    }

    fn sol42() -> SetSolution {
        SetSolution::from_brace(&brace42(), &[0, 1, 2, 3], "b42").unwrap()
    }

    /// Closure of `x` under every σ and τ, by repeated scanning.
    fn closure_oracle(s: &SetSolution, x: usize) -> Vec<usize> {
        let mut set = vec![false; s.size];
        set[x] = true;
        loop {
            let mut grew = false;
            for a in 0..s.size {
                for y in 0..s.size {
                    if set[y] {
                        for z in [s.sigma[a][y], s.tau[a][y]] {
                            if !set[z] {
                                set[z] = true;
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        (0..s.size).filter(|&i| set[i]).collect()
    }

    #[test]
    fn builtin_solutions_validate() {
        for n in 1..=4 {
            assert!(SetSolution::trivial(n).is_valid());
            assert!(SetSolution::lyubashenko(n).is_valid());
        }
        assert_eq!(SetSolution::lyubashenko(1).sigma, SetSolution::trivial(1).sigma);
        assert_eq!(SetSolution::lyubashenko(1).tau, SetSolution::trivial(1).tau);
    }

    #[test]
    fn lyubashenko2_values() {
        let s = SetSolution::lyubashenko(2);
        assert_eq!(s.apply(0, 0), (1, 1));
        assert_eq!(s.apply(0, 1), (0, 1));
        assert_eq!(s.apply(1, 0), (1, 0));
        assert_eq!(s.apply(1, 1), (0, 0));
    }

    #[test]
    fn broken_sigma_row_is_degenerate() {
        let mut s = SetSolution::lyubashenko(3);
        s.sigma[1][0] = s.sigma[1][1];
        let rep = s.validate();
        assert!(!rep.nondegenerate.pass);
        assert_eq!(rep.nondegenerate.witness.unwrap().elements, Some(vec![1]));
    }

    #[test]
    fn brace_solutions() {
        let s = sol42();
        assert!(s.is_valid());
        assert_eq!(s.sigma[0], vec![0, 1, 2, 3]);
        assert_eq!(s.sigma[2], vec![0, 1, 2, 3]);
        assert_eq!(s.sigma[1], vec![0, 3, 2, 1]);
        assert_eq!(s.sigma[3], vec![0, 3, 2, 1]);
        let t = SetSolution::from_brace(&FiniteBrace::trivial(3), &[0, 1, 2], "t").unwrap();
        assert_eq!(t.sigma, SetSolution::trivial(3).sigma);
        assert_eq!(t.tau, SetSolution::trivial(3).tau);
        let tr = ring_to_brace(&truncated_poly_ring(2, 3)).unwrap();
        assert!(SetSolution::from_brace(&tr, &[0, 1, 2, 3], "t").unwrap().is_valid());
    }

    #[test]
    fn subset_must_be_closed() {
        // σ_1(1) = 3 in the scaled brace, so {0, 1} is not closed
        assert_eq!(SetSolution::from_brace(&brace42(), &[0, 1], "x"), Err(Error::NotClosed(1, 1)));
        assert!(SetSolution::from_brace(&brace42(), &[0, 2], "x").unwrap().is_valid());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(SetSolution::lyubashenko(3).orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(SetSolution::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
        let s = sol42();
        let orbits = s.orbits();
        for block in &orbits {
            assert_eq!(&closure_oracle(&s, block[0]), block);
        }
        assert_eq!(orbits, vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn retraction_examples() {
        let (r, h) = SetSolution::lyubashenko(3).retract().unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(h.map, vec![0, 0, 0]);
        assert_eq!(SetSolution::trivial(3).retract().unwrap().0.size, 1);
        let (r, h) = sol42().retract().unwrap();
        assert_eq!(h.map, vec![0, 1, 0, 1]);
        assert_eq!(r.sigma, SetSolution::trivial(2).sigma);
        assert_eq!(r.tau, SetSolution::trivial(2).tau);
    }

    #[test]
    fn levels() {
        assert_eq!(SetSolution::trivial(1).multipermutation_level().unwrap(), Some(0));
        assert_eq!(SetSolution::lyubashenko(4).multipermutation_level().unwrap(), Some(1));
        assert_eq!(sol42().multipermutation_level().unwrap(), Some(2));
    }

    #[test]
    fn homs() {
        for s in [SetSolution::lyubashenko(3), sol42(), SetSolution::trivial(2)] {
            assert!(check_hom(&(0..s.size).collect::<Vec<_>>(), &s, &s).is_ok());
            let collapse = s.orbit_collapse().unwrap();
            assert_eq!(collapse.codomain.size, s.orbits().len());
        }
        assert_eq!(find_iso(&SetSolution::lyubashenko(2), &SetSolution::trivial(2)).unwrap(), None);
        assert!(find_iso(&SetSolution::lyubashenko(3), &SetSolution::lyubashenko(3)).unwrap().is_some());
        assert!(matches!(
            check_hom(&[0, 1], &SetSolution::lyubashenko(2), &SetSolution::trivial(2)),
            Err(Error::InvalidHom(_))
        ));
    }

    #[test]
    fn automorphism_counts() {
        // every permutation commutes with the flip
        assert_eq!(automorphisms(&SetSolution::trivial(3)).unwrap().len(), 6);
        // automorphisms of Z/3 Lyubashenko commute with y ↦ y+1: the three translations
        assert_eq!(automorphisms(&SetSolution::lyubashenko(3)).unwrap().len(), 3);
        assert!(isomorphisms(&SetSolution::trivial(9), &SetSolution::trivial(9)).is_err());
    }

    #[test]
    fn homs_compose() {
        let s = sol42();
        let (_, h1) = s.retract().unwrap();
        let (_, h2) = h1.codomain.retract().unwrap();
        let c = h1.then(&h2).unwrap();
        assert_eq!(c.codomain.size, 1);
        let q = quotient_by_ideal(&brace42(), &[0, 1, 2, 3], &BraceIdeal::new([0, 2])).unwrap();
        assert!(q.then(&q.codomain.orbit_collapse().unwrap()).is_ok());
    }

    #[test]
    fn ideal_quotients() {
        let b = brace42();
        let all = [0, 1, 2, 3];
        let id = quotient_by_ideal(&b, &all, &BraceIdeal::new([0])).unwrap();
        assert_eq!(id.map, vec![0, 1, 2, 3]);
        let half = quotient_by_ideal(&b, &all, &BraceIdeal::new([0, 2])).unwrap();
        assert_eq!(half.codomain.size, 2);
        assert_eq!(half.map, vec![0, 1, 0, 1]);
        let one = quotient_by_ideal(&b, &all, &BraceIdeal::new(all)).unwrap();
        assert_eq!(one.codomain.size, 1);
    }

    #[test]
    fn lyubashenko_targets() {
        let hit = retract_to_lyubashenko(&SetSolution::lyubashenko(3)).unwrap().unwrap();
        assert_eq!(hit.m, 3);
        assert!(hit.chain.is_empty());
        assert!(matches!(retract_to_lyubashenko(&sol42()), Err(Error::Precondition(_))));
        assert!(matches!(retract_to_lyubashenko(&SetSolution::trivial(3)), Err(Error::Precondition(_))));
    }

    #[test]
    fn json_with_derived_tau() {
        let text = r#"{"name": "l3", "size": 3, "sigma": [[1,2,0],[1,2,0],[1,2,0]], "derive_tau_from": "involutivity"}"#;
        let s = SetSolution::from_json(text).unwrap();
        assert_eq!(s.tau, SetSolution::lyubashenko(3).tau);
        let back = SetSolution::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"size": 2, "sigma": [[0,1],[1,0]], "tau": [[0,1]]}"#;
        assert!(matches!(SetSolution::from_json(bad), Err(Error::MalformedTable(_))));
        assert!(matches!(SetSolution::from_json("{"), Err(Error::MalformedTable(m)) if m.contains("line 1")));
    }

    fn corpus() -> Vec<SetSolution> {
        let mut v: Vec<SetSolution> = (2..=4).map(SetSolution::trivial).collect();
        v.extend((2..=4).map(SetSolution::lyubashenko));
        v.push(sol42());
        let tr = ring_to_brace(&truncated_poly_ring(2, 3)).unwrap();
        v.push(SetSolution::from_brace(&tr, &[0, 1, 2, 3], "t").unwrap());
        v
    }

    proptest! {
        #[test]
        fn corpus_solutions_are_involutive(i in 0usize..8) {
            let s = &corpus()[i];
            for x in 0..s.size {
                for y in 0..s.size {
                    let (u, v) = s.apply(x, y);
                    prop_assert_eq!(s.apply(u, v), (x, y));
                }
            }
            let (r, _) = s.retract().unwrap();
            prop_assert!(r.is_valid());
        }

        #[test]
        fn lyubashenko_retracts_in_one_step(m in 2usize..7) {
            let (r, _) = SetSolution::lyubashenko(m).retract().unwrap();
            prop_assert_eq!(r.size, 1);
        }

        #[test]
        fn derived_tau_matches_stored(i in 0usize..8) {
            let s = &corpus()[i];
            prop_assert_eq!(&SetSolution::derive_tau("d", s.sigma.clone()).unwrap().tau, &s.tau);
        }
    }
}
