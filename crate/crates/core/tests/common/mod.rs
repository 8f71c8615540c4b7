#![allow(dead_code)]

use nalgebra::DMatrix;

pub const P: i64 = 1_000_000_007;

/// Rank by Gaussian elimination with full pivoting; entries below
/// `rel * max|a|` count as zero.
pub fn elimination_rank(a: &DMatrix<f64>, rel: f64) -> usize {
    let mut m = a.clone();
    let scale = m.amax();
    if scale == 0.0 {
        return 0;
    }
    let (rows, cols) = m.shape();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best = (rank, rank, 0.0);
        for i in rank..rows {
            for j in rank..cols {
                if m[(i, j)].abs() > best.2 {
                    best = (i, j, m[(i, j)].abs());
                }
            }
        }
        if best.2 <= rel * scale {
            break;
        }
        m.swap_rows(rank, best.0);
        m.swap_columns(rank, best.1);
        for i in rank + 1..rows {
            let f = m[(i, rank)] / m[(rank, rank)];
            if f != 0.0 {
                for j in rank..cols {
                    m[(i, j)] -= f * m[(rank, j)];
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inverse_mod(a: i64) -> i64 {
    let (mut r, mut e, mut base) = (1i64, P - 2, a.rem_euclid(P));
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    r
}

/// Rank of an integer matrix over the field with `P` elements. Never exceeds
/// the rank over the rationals.
pub fn rank_mod_p(a: &DMatrix<f64>) -> usize {
    let (rows, cols) = a.shape();
    let mut m: Vec<Vec<i64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let v = a[(i, j)];
                    assert_eq!(v, v.round(), "entry is not an integer");
                    (v as i64).rem_euclid(P)
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = inverse_mod(m[rank][c]);
        for i in 0..rows {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % P;
                for j in c..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Columns are the flattened matrices.
pub fn flatten_columns(ms: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n = ms.first().map_or(0, |m| m.len());
    DMatrix::from_fn(n, ms.len(), |i, j| ms[j].as_slice()[i])
}

pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}
