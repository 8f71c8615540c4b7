//! Fixed realification conventions.
//!
//! * complex `a + bi` becomes the block `[[a, -b], [b, a]]`;
//! * a quaternion `q` becomes the 4x4 matrix of left multiplication `x -> q x`
//!   on the basis `(1, i, j, k)` of the Cayley-Dickson quaternions.
//!
//! Both maps are injective algebra homomorphisms, so matrix products of
//! realified matrices realify products.

use nalgebra::{Complex, DMatrix, Matrix4};

use super::octonion::MultiplicationTable;

pub type ComplexMatrix = DMatrix<Complex<f64>>;

/// Human-readable statement of the conventions, echoed in reports.
pub const CONVENTIONS: &str = "complex a+bi -> [[a,-b],[b,a]]; quaternion q -> 4x4 left \
multiplication on (1,i,j,k) (Cayley-Dickson); form <X,Y> = -tr(XY) on the realified \
defining representation";

pub fn realify_complex(z: &ComplexMatrix) -> DMatrix<f64> {
    let (r, c) = z.shape();
    let mut out = DMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let w = z[(i, j)];
            out[(2 * i, 2 * j)] = w.re;
            out[(2 * i, 2 * j + 1)] = -w.im;
            out[(2 * i + 1, 2 * j)] = w.im;
            out[(2 * i + 1, 2 * j + 1)] = w.re;
        }
    }
    out
}

/// Real matrix implementing complex conjugation on realified vectors.
pub fn complex_conjugation(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            0.0
        } else if i % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    })
}

/// Quaternion with components on `(1, i, j, k)`.
pub type Quaternion = [f64; 4];

pub const Q_ONE: Quaternion = [1.0, 0.0, 0.0, 0.0];
pub const Q_I: Quaternion = [0.0, 1.0, 0.0, 0.0];
pub const Q_J: Quaternion = [0.0, 0.0, 1.0, 0.0];
pub const Q_K: Quaternion = [0.0, 0.0, 0.0, 1.0];

fn quaternion_table() -> MultiplicationTable {
    MultiplicationTable::cayley_dickson(2)
}

/// Matrix of `x -> q x`.
pub fn quaternion_left(q: &Quaternion) -> Matrix4<f64> {
    let table = quaternion_table();
    Matrix4::from_fn(|r, c| (0..4).map(|a| q[a] * table.coefficient(a, c, r)).sum())
}

/// Matrix of `x -> x q`.
pub fn quaternion_right(q: &Quaternion) -> Matrix4<f64> {
    let table = quaternion_table();
    Matrix4::from_fn(|r, c| (0..4).map(|a| q[a] * table.coefficient(c, a, r)).sum())
}

/// Realifies an `n x n` quaternionic matrix into `4n x 4n` real blocks.
pub fn realify_quaternion(entries: &[Vec<Quaternion>]) -> DMatrix<f64> {
    let n = entries.len();
    let mut out = DMatrix::zeros(4 * n, 4 * n);
    for (i, row) in entries.iter().enumerate() {
        for (j, q) in row.iter().enumerate() {
            if q.iter().all(|&x| x == 0.0) {
                continue;
            }
            out.view_mut((4 * i, 4 * j), (4, 4))
                .copy_from(&quaternion_left(q));
        }
    }
    out
}

/// Block-diagonal `diag(R(q), ..., R(q))` on `H^n`, commuting with every
/// realified quaternionic matrix.
pub fn right_scalar(q: &Quaternion, n: usize) -> DMatrix<f64> {
    let r = quaternion_right(q);
    let mut out = DMatrix::zeros(4 * n, 4 * n);
    for i in 0..n {
        out.view_mut((4 * i, 4 * i), (4, 4)).copy_from(&r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_realification_is_multiplicative() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| Complex::new(i as f64 + 1.0, j as f64 - 0.5));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| Complex::new(0.3 * j as f64, 1.0 - i as f64));
        let lhs = realify_complex(&(&a * &b));
        let rhs = realify_complex(&a) * realify_complex(&b);
        assert!((lhs - rhs).amax() < 1e-14);
        let k = complex_conjugation(2);
        let conj = realify_complex(&a.map(|z| z.conj()));
        assert!((conj - &k * realify_complex(&a) * &k).amax() < 1e-14);
    }

    #[test]
    fn quaternion_units() {
        let (i, j, k) = (quaternion_left(&Q_I), quaternion_left(&Q_J), quaternion_left(&Q_K));
        let id = Matrix4::identity();
        for u in [&i, &j, &k] {
            assert!((u * u + id).amax() < 1e-14);
            assert!((u + u.transpose()).amax() < 1e-14);
        }
        // i j = k in the Cayley-Dickson table
        assert!((i * j - k).amax() < 1e-14);
        for q in [Q_ONE, Q_I, Q_J, Q_K] {
            let l = quaternion_left(&q);
            for p in [Q_I, Q_J, Q_K] {
                let r = quaternion_right(&p);
                assert!((l * r - r * l).amax() < 1e-14);
            }
        }
    }
}
