//! Smith normal form of small integer matrices.

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next. `diag` has `min(rows, cols)` entries, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub diag: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn row_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    let s = m[src].clone();
    for (d, x) in m[dst].iter_mut().zip(s) {
        *d -= q * x;
    }
}

fn col_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    for row in m.iter_mut() {
        row[dst] -= q * row[src];
    }
}

fn col_swap(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Smith {
    let rows = a.len();
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| d[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return finish(u, v, &d, steps);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut d, t, pj);
            col_swap(&mut v, t, pj);
            let p = d[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = d[i][t] / p;
                if q != 0 {
                    row_axpy(&mut d, i, t, q);
                    row_axpy(&mut u, i, t, q);
                }
                dirty |= d[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = d[t][j] / p;
                if q != 0 {
                    col_axpy(&mut d, j, t, q);
                    col_axpy(&mut v, j, t, q);
                }
                dirty |= d[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % p != 0));
            if let Some(i) = bad {
                row_axpy(&mut d, t, i, -1);
                row_axpy(&mut u, t, i, -1);
                continue;
            }
            if p < 0 {
                for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                    *x = -*x;
                }
            }
            break;
        }
    }
    finish(u, v, &d, steps)
}

fn finish(u: Vec<Vec<i64>>, v: Vec<Vec<i64>>, d: &[Vec<i64>], steps: usize) -> Smith {
    Smith { u, v, diag: (0..steps).map(|i| d[i][i]).collect() }
}
