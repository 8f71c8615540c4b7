//! Cayley-Dickson algebras and derivation algebras of bilinear products.

use nalgebra::DMatrix;

use crate::numerics::{nullspace, ToleranceConfig};

/// Bilinear product on `R^m`: `e_a e_b = sum_c coefficient(a, b, c) e_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicationTable {
    dim: usize,
    coeffs: Vec<f64>,
}

impl MultiplicationTable {
    pub fn new(dim: usize, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), dim * dim * dim, "table must have dim^3 entries");
        Self { dim, coeffs }
    }

    /// Reals (0), complex numbers (1), quaternions (2), octonions (3), ...
    /// via `(a, b)(c, d) = (ac - d* b, d a + b c*)`.
    pub fn cayley_dickson(level: u32) -> Self {
        let dim = 1usize << level;
        let mut coeffs = vec![0.0; dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let x = unit(dim, a);
                let y = unit(dim, b);
                let p = cd_mul(&x, &y);
                for (c, v) in p.into_iter().enumerate() {
                    coeffs[(a * dim + b) * dim + c] = v;
                }
            }
        }
        Self { dim, coeffs }
    }

    pub fn octonions() -> Self {
        Self::cayley_dickson(3)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> f64 {
        self.coeffs[(a * self.dim + b) * self.dim + c]
    }

    pub fn multiply(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let m = self.dim;
        let mut out = vec![0.0; m];
        for a in 0..m {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..m {
                let w = x[a] * y[b];
                if w == 0.0 {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += w * self.coefficient(a, b, c);
                }
            }
        }
        out
    }

    /// Linear system whose kernel is the derivation algebra. Unknown `D` is
    /// flattened row-major; row `(i, j, n)` is the `n`-th component of
    /// `D(e_i e_j) - D(e_i) e_j - e_i D(e_j)`.
    pub fn leibniz_system(&self) -> DMatrix<f64> {
        let m = self.dim;
        let mut sys = DMatrix::zeros(m * m * m, m * m);
        let col = |p: usize, q: usize| p * m + q;
        for i in 0..m {
            for j in 0..m {
                for n in 0..m {
                    let row = (i * m + j) * m + n;
                    for k in 0..m {
                        sys[(row, col(n, k))] += self.coefficient(i, j, k);
                        sys[(row, col(k, i))] -= self.coefficient(k, j, n);
                        sys[(row, col(k, j))] -= self.coefficient(i, k, n);
                    }
                }
            }
        }
        sys
    }
}

fn unit(dim: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[i] = 1.0;
    v
}

fn cd_conj(x: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().map(|v| -v).collect();
    out[0] = x[0];
    out
}

fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let first: Vec<f64> = cd_mul(a, c)
        .iter()
        .zip(cd_mul(&cd_conj(d), b))
        .map(|(p, q)| p - q)
        .collect();
    let second: Vec<f64> = cd_mul(d, a)
        .iter()
        .zip(cd_mul(b, &cd_conj(c)))
        .map(|(p, q)| p + q)
        .collect();
    [first, second].concat()
}

/// Basis of `{D : D(xy) = D(x)y + xD(y)}` as `m x m` matrices, orthonormal in
/// the Frobenius inner product. An empty result is legal.
pub fn derivation_algebra(table: &MultiplicationTable, tol: &ToleranceConfig) -> Vec<DMatrix<f64>> {
    let m = table.dim();
    nullspace(&table.leibniz_system(), tol)
        .into_iter()
        .map(|v| DMatrix::from_row_slice(m, m, v.as_slice()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_dickson_low_levels() {
        let c = MultiplicationTable::cayley_dickson(1);
        // i * i = -1
        assert_eq!(c.multiply(&[0., 1.], &[0., 1.]), vec![-1., 0.]);
        let o = MultiplicationTable::octonions();
        assert_eq!(o.dim(), 8);
        // imaginary units square to -1
        for a in 1..8 {
            let e = unit(8, a);
            let sq = o.multiply(&e, &e);
            assert_eq!(sq[0], -1.0);
            assert!(sq[1..].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn octonions_are_alternative_not_associative() {
        let o = MultiplicationTable::octonions();
        let x: Vec<f64> = (0..8).map(|i| (i as f64 * 0.7).sin()).collect();
        let y: Vec<f64> = (0..8).map(|i| (i as f64 * 1.3).cos()).collect();
        let z: Vec<f64> = (0..8).map(|i| 1.0 / (i as f64 + 1.5)).collect();
        let lhs = o.multiply(&o.multiply(&x, &x), &y);
        let rhs = o.multiply(&x, &o.multiply(&x, &y));
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-12);
        }
        let l = o.multiply(&o.multiply(&x, &y), &z);
        let r = o.multiply(&x, &o.multiply(&y, &z));
        let gap: f64 = l.iter().zip(&r).map(|(a, b)| (a - b).abs()).sum();
        assert!(gap > 1e-3);
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let o = MultiplicationTable::octonions();
        let ders = derivation_algebra(&o, &ToleranceConfig::default());
        let x: Vec<f64> = (0..8).map(|i| (i as f64 * 0.9).sin()).collect();
        let y: Vec<f64> = (0..8).map(|i| (i as f64 * 0.4).cos()).collect();
        let apply = |d: &DMatrix<f64>, v: &[f64]| -> Vec<f64> {
            (0..8).map(|r| (0..8).map(|c| d[(r, c)] * v[c]).sum()).collect()
        };
        for d in &ders {
            let lhs = apply(d, &o.multiply(&x, &y));
            let r1 = o.multiply(&apply(d, &x), &y);
            let r2 = o.multiply(&x, &apply(d, &y));
            for n in 0..8 {
                assert!((lhs[n] - r1[n] - r2[n]).abs() < 1e-10);
            }
        }
    }
}
