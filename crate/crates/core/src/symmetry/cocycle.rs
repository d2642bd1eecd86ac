//! Diagonal characters `α` with `α_x α_y = α_{σ_x(y)} α_{τ_y(x)}`.

use serde::Serialize;

use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::solution::{check_hom, SetSolution};

/// At most this many sign patterns are instantiated for 2-torsion.
const MAX_SIGN_PATTERNS: usize = 16;

const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// The admissible `α`, described through the abelianized structure group.
///
/// `α_x = Π_i c_i^{basis[x][i]}` where `c_i` is free when `orders[i] = 0`
/// and satisfies `c_i^{orders[i]} = 1` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleSolution {
    pub free_rank: usize,
    pub orders: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
    /// Torsion orders above 2, whose non-trivial characters are not rational.
    pub unsupported_torsion: Vec<i64>,
    pub instantiations: Vec<Vec<Rational>>,
}

/// A diagonal symmetry candidate `M = Σ α_x e_{x,f(x)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalSymmetry {
    pub f: Vec<usize>,
    pub alpha: Vec<Rational>,
}

pub fn require_automorphism(sol: &SetSolution, f: &[usize]) -> Result<()> {
    let hom = check_hom(f, sol, sol).map_err(|e| Error::NotAutomorphism(e.to_string()))?;
    if !hom.is_bijective() {
        return Err(Error::NotAutomorphism("map is not bijective".into()));
    }
    Ok(())
}

/// The first pair violating the cocycle condition.
pub fn cocycle_violation(sol: &SetSolution, alpha: &[Rational]) -> Option<(usize, usize)> {
    (0..sol.size).flat_map(|x| (0..sol.size).map(move |y| (x, y))).find(|&(x, y)| {
        let (s, t) = sol.apply(x, y);
        &alpha[x] * &alpha[y] != &alpha[s] * &alpha[t]
    })
}

/// Relation rows `e_x + e_y − e_{σ_x(y)} − e_{τ_y(x)}`.
pub fn relation_matrix(sol: &SetSolution) -> Vec<Vec<i64>> {
    let n = sol.size;
    let mut rows = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (s, t) = sol.apply(x, y);
            let mut row = vec![0i64; n];
            row[x] += 1;
            row[y] += 1;
            row[s] -= 1;
            row[t] -= 1;
            rows.push(row);
        }
    }
    rows
}

pub fn solve_cocycle(sol: &SetSolution, f: &[usize]) -> Result<CocycleSolution> {
    require_automorphism(sol, f)?;
    let n = sol.size;
    let smith = smith_normal_form(&relation_matrix(sol), n);
    let orders: Vec<i64> = (0..n).map(|i| smith.diag.get(i).copied().unwrap_or(0)).collect();
    let free: Vec<usize> = (0..n).filter(|&i| orders[i] == 0).collect();
    let signs: Vec<usize> = (0..n).filter(|&i| orders[i] > 1 && orders[i] % 2 == 0).collect();
    let unsupported_torsion: Vec<i64> = orders.iter().copied().filter(|&d| d > 2).collect();
    let basis = smith.v.clone();

    let patterns = (1usize << signs.len()).min(MAX_SIGN_PATTERNS);
    let mut instantiations = Vec::new();
    for pattern in 0..patterns {
        let mut c = vec![Rational::one(); n];
        for (k, &i) in free.iter().enumerate() {
            c[i] = Rational::from(PRIMES[k % PRIMES.len()]);
        }
        for (k, &i) in signs.iter().enumerate() {
            if pattern >> k & 1 == 1 {
                c[i] = Rational::from(-1);
            }
        }
        let alpha: Vec<Rational> = (0..n)
            .map(|x| (0..n).map(|i| c[i].pow(basis[x][i]).expect("nonzero base")).product())
            .collect();
        instantiations.push(alpha);
    }
    Ok(CocycleSolution { free_rank: free.len(), orders, basis, unsupported_torsion, instantiations })
}
