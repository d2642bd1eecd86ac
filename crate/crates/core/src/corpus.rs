//! Solution sources: the builtin corpus and the `name:params` mini-syntax.
//!
//! | syntax                  | meaning                                          |
//! |-------------------------|--------------------------------------------------|
//! | `trivial:N`             | `ř(x, y) = (y, x)` on `N` points                 |
//! | `lyubashenko:M`         | `ř(x, y) = (y+1, x−1)` mod `M`                   |
//! | `brace:<brace>`         | Rump's solution on every element of the brace    |
//! | anything else           | path to a solution JSON file                     |
//!
//! Braces are `ring:<ring>`, `trivial:N` or a brace/ring JSON path; rings are
//! `scaled:M:C` (`Z/M` with `a·b = C·a·b`), `truncpoly:M:K`
//! (`t·(Z/M)[t]/(t^K)`) or a ring JSON path. For brace sources the shorthand
//! `brace:scaled:4:2` stands for `brace:ring:scaled:4:2`.

use serde::Serialize;

use crate::brace::{ring_to_brace, scaled_mod_ring, truncated_poly_ring, FiniteBrace, FiniteRing};
use crate::error::{Error, Result};
use crate::solution::SetSolution;

/// Largest set size accepted from the mini-syntax.
pub const MAX_BUILTIN_SIZE: usize = 256;

pub const DEFAULT_CORPUS: [&str; 8] = [
    "trivial:2",
    "trivial:3",
    "trivial:4",
    "lyubashenko:2",
    "lyubashenko:3",
    "lyubashenko:4",
    "brace:scaled:4:2",
    "brace:truncpoly:2:3",
];

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn numbers(spec: &str, params: &str, count: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = params.split(':').collect();
    if parts.len() != count {
        return Err(parse_err(format!("`{spec}`: expected {count} parameter(s)")));
    }
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(parse_err(format!("`{spec}`: `{p}` is not a positive integer"))),
        })
        .collect()
}

fn bounded(spec: &str, size: Option<usize>) -> Result<()> {
    match size {
        Some(s) if s <= MAX_BUILTIN_SIZE => Ok(()),
        _ => Err(parse_err(format!("`{spec}`: more than {MAX_BUILTIN_SIZE} elements"))),
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))
}

fn in_file(path: &str, e: Error) -> Error {
    parse_err(format!("{path}: {e}"))
}

pub fn parse_ring(spec: &str) -> Result<FiniteRing> {
    if let Some(p) = spec.strip_prefix("scaled:") {
        let v = numbers(spec, p, 2)?;
        bounded(spec, Some(v[0]))?;
        return Ok(scaled_mod_ring(v[0], v[1]));
    }
    if let Some(p) = spec.strip_prefix("truncpoly:") {
        let v = numbers(spec, p, 2)?;
        bounded(spec, v[0].checked_pow(v[1] as u32 - 1))?;
        return Ok(truncated_poly_ring(v[0], v[1]));
    }
    FiniteRing::from_json(&read(spec)?).map_err(|e| in_file(spec, e))
}

pub fn parse_brace(spec: &str) -> Result<FiniteBrace> {
    if let Some(p) = spec.strip_prefix("ring:") {
        return ring_to_brace(&parse_ring(p)?);
    }
    if let Some(p) = spec.strip_prefix("trivial:") {
        let v = numbers(spec, p, 1)?;
        bounded(spec, Some(v[0]))?;
        return Ok(FiniteBrace::trivial(v[0]));
    }
    if spec.starts_with("scaled:") || spec.starts_with("truncpoly:") {
        return ring_to_brace(&parse_ring(spec)?);
    }
    let text = read(spec)?;
    match FiniteBrace::from_json(&text) {
        Ok(b) => Ok(b),
        Err(brace_err) => match FiniteRing::from_json(&text) {
            Ok(r) => ring_to_brace(&r),
            Err(_) => Err(in_file(spec, brace_err)),
        },
    }
}

pub fn parse_solution(spec: &str) -> Result<SetSolution> {
    if let Some(p) = spec.strip_prefix("trivial:") {
        let v = numbers(spec, p, 1)?;
        bounded(spec, Some(v[0]))?;
        return Ok(SetSolution::trivial(v[0]));
    }
    if let Some(p) = spec.strip_prefix("lyubashenko:") {
        let v = numbers(spec, p, 1)?;
        bounded(spec, Some(v[0]))?;
        return Ok(SetSolution::lyubashenko(v[0]));
    }
    if let Some(p) = spec.strip_prefix("brace:") {
        let brace = parse_brace(p)?;
        let all: Vec<usize> = (0..brace.size).collect();
        return SetSolution::from_brace(&brace, &all, spec);
    }
    let mut sol = SetSolution::from_json(&read(spec)?).map_err(|e| in_file(spec, e))?;
    if sol.name.is_empty() {
        sol.name = spec.to_string();
    }
    Ok(sol)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub solution: SetSolution,
}

/// Named solutions, each validated on load, sorted by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn builtin() -> Self {
        Corpus::load("default").expect("builtin corpus is valid")
    }

    /// `default`, or a comma-separated list of sources; `default` may appear in the list.
    pub fn load(spec: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "default" {
                names.extend(DEFAULT_CORPUS.iter().map(|s| s.to_string()));
            } else {
                names.push(part.to_string());
            }
        }
        if names.is_empty() {
            return Err(parse_err("empty corpus"));
        }
        names.sort();
        names.dedup();
        let entries = names
            .into_iter()
            .map(|name| {
                let solution = parse_solution(&name)?;
                solution.require_valid()?;
                Ok(CorpusEntry { name, solution })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus { entries })
    }

    pub fn solutions(&self) -> impl Iterator<Item = &SetSolution> {
        self.entries.iter().map(|e| &e.solution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus() {
        let c = Corpus::builtin();
        assert_eq!(c.entries.len(), 8);
        let sizes: Vec<(String, usize)> = c.entries.iter().map(|e| (e.name.clone(), e.solution.size)).collect();
        assert!(sizes.contains(&("brace:scaled:4:2".into(), 4)));
        assert!(sizes.contains(&("brace:truncpoly:2:3".into(), 4)));
        assert!(c.entries.windows(2).all(|w| w[0].name < w[1].name));
    }

    #[test]
    fn mini_syntax() {
        assert_eq!(parse_solution("trivial:3").unwrap(), SetSolution::trivial(3));
        assert_eq!(parse_solution("lyubashenko:5").unwrap(), SetSolution::lyubashenko(5));
        let a = parse_solution("brace:scaled:4:2").unwrap();
        let b = parse_solution("brace:ring:scaled:4:2").unwrap();
        assert_eq!((a.sigma, a.tau), (b.sigma, b.tau));
        assert_eq!(parse_solution("brace:trivial:3").unwrap().sigma, SetSolution::trivial(3).sigma);
        assert_eq!(parse_brace("truncpoly:2:3").unwrap().size, 4);
        for bad in ["trivial:0", "trivial:x", "lyubashenko:2:3", "scaled:4", "brace:truncpoly:64:4", "nope.json"] {
            let r = if bad.starts_with("scaled") { parse_ring(bad).map(|_| ()) } else { parse_solution(bad).map(|_| ()) };
            assert!(matches!(r, Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!(parse_solution("brace:scaled:4:1"), Err(Error::NotNilpotent)));
    }

    #[test]
    fn load_lists() {
        let c = Corpus::load("lyubashenko:2, trivial:2,default").unwrap();
        assert_eq!(c.entries.len(), 8);
        assert!(Corpus::load(" , ").is_err());
    }

    #[test]
    fn file_sources() {
        let dir = std::env::temp_dir().join(format!("ybl-corpus-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let sol = dir.join("l3.json");
        std::fs::write(&sol, SetSolution::lyubashenko(3).to_json()).unwrap();
        let parsed = parse_solution(sol.to_str().unwrap()).unwrap();
        assert_eq!(parsed.sigma, SetSolution::lyubashenko(3).sigma);
        let bad = dir.join("bad.json");
        std::fs::write(&bad, "{\"sigma\": [[0]],\n \"tau\": ").unwrap();
        match parse_solution(bad.to_str().unwrap()) {
            Err(Error::Parse(m)) => assert!(m.contains("bad.json") && m.contains("line"), "{m}"),
            other => panic!("{other:?}"),
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
