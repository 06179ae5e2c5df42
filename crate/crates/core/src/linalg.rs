//! Exact integer linear algebra: fraction-free rank and Smith normal form.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(pivot) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for i in r + 1..m {
            for j in col + 1..n {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    rank(&big)
}

/// Nonzero invariant factors `d1 | d2 | ...` of an integer matrix, positive.
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // the pivot must divide the whole trailing block
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..n {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remainder into the pivot slot
            let (bi, bj) = (t..m)
                .map(|i| (i, t))
                .chain((t..n).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .unwrap();
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs() as i64);
        t += 1;
    }
    diag
}

/// First homology-style summary of `Z^rows / image`: free rank and the
/// number of even invariant factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    pub two_torsion_rank: usize,
}

/// Cokernel of the map `Z^cols -> Z^rows` given by `rows`.
pub fn cokernel(rows: &[Vec<i64>], row_count: usize) -> Cokernel {
    let inv = if rows.first().is_some_and(|r| !r.is_empty()) {
        smith_invariants(rows)
    } else {
        Vec::new()
    };
    Cokernel {
        free_rank: row_count - inv.len(),
        two_torsion_rank: inv.iter().filter(|d| *d % 2 == 0).count(),
    }
}
