//! Dense real linear algebra with an explicit tolerance policy.
//!
//! Rank decisions are made from singular values with a threshold relative to
//! the largest one, so verdicts do not depend on the overall scale of the
//! input. Everything here is deterministic; randomness is owned by callers.

use faer::Mat;
use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Thresholds, sample counts and seed shared by every numerical decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Singular values at or below `rel_rank_tol * sigma_max` count as zero.
    pub rel_rank_tol: f64,
    /// Threshold for membership, closure and criterion residuals.
    pub residual_tol: f64,
    /// Number of random group points drawn when searching for a principal point.
    pub num_samples: usize,
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rel_rank_tol: 1e-9,
            residual_tol: 1e-8,
            num_samples: 8,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, num_samples: usize) -> Self {
        self.num_samples = num_samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_rank_tol > 0.0 && self.rel_rank_tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "rel_rank_tol must be positive, got {}",
                self.rel_rank_tol
            )));
        }
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "residual_tol must be positive, got {}",
                self.residual_tol
            )));
        }
        if self.num_samples == 0 {
            return Err(Error::InvalidInput("num_samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// A symmetric positive-definite bilinear form on `R^d`, stored with its
/// Cholesky factor so vectors can be moved to and from a Euclidean frame.
#[derive(Debug, Clone)]
pub struct InnerProduct {
    gram: DMatrix<f64>,
    // gram = upper^T * upper
    upper: DMatrix<f64>,
    upper_inv: DMatrix<f64>,
}

impl InnerProduct {
    pub fn new(gram: DMatrix<f64>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidForm(format!(
                "Gram matrix is {}x{}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        let d = gram.nrows();
        let scale = gram.amax().max(f64::MIN_POSITIVE);
        let asym = (&gram - gram.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::InvalidForm(format!("asymmetry {asym:.3e}")));
        }
        if d == 0 {
            return Ok(Self {
                gram: DMatrix::zeros(0, 0),
                upper: DMatrix::zeros(0, 0),
                upper_inv: DMatrix::zeros(0, 0),
            });
        }
        let chol = Cholesky::new(gram.clone())
            .ok_or_else(|| Error::InvalidForm("Cholesky factorization failed".into()))?;
        let lower = chol.l();
        let min_pivot = lower.diagonal().min();
        if !(min_pivot > 1e-12 * scale.sqrt()) {
            return Err(Error::InvalidForm(format!(
                "form is numerically singular (pivot {min_pivot:.3e})"
            )));
        }
        let upper = lower.transpose();
        let upper_inv = upper
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidForm("triangular factor not invertible".into()))?;
        Ok(Self {
            gram,
            upper,
            upper_inv,
        })
    }

    pub fn euclidean(d: usize) -> Self {
        Self {
            gram: DMatrix::identity(d, d),
            upper: DMatrix::identity(d, d),
            upper_inv: DMatrix::identity(d, d),
        }
    }

    /// Block-diagonal sum of two forms, the natural form on `V ⊕ W`.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        fn block(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
            let (m, n) = (x.nrows(), y.nrows());
            let mut out = DMatrix::zeros(m + n, m + n);
            out.view_mut((0, 0), (m, m)).copy_from(x);
            out.view_mut((m, m), (n, n)).copy_from(y);
            out
        }
        Self {
            gram: block(&a.gram, &b.gram),
            upper: block(&a.upper, &b.upper),
            upper_inv: block(&a.upper_inv, &b.upper_inv),
        }
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidForm(format!("scale factor {c} is not positive")));
        }
        Ok(Self {
            gram: &self.gram * c,
            upper: &self.upper * c.sqrt(),
            upper_inv: &self.upper_inv / c.sqrt(),
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x.dot(&(&self.gram * y))
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    pub fn to_euclidean(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.upper * x
    }

    pub fn from_euclidean(&self, u: &DVector<f64>) -> DVector<f64> {
        &self.upper_inv * u
    }
}

/// Stacks vectors as the columns of a `d x k` matrix.
pub fn column_matrix(vectors: &[DVector<f64>]) -> Result<DMatrix<f64>> {
    let Some(first) = vectors.first() else {
        return Ok(DMatrix::zeros(0, 0));
    };
    let d = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    Ok(DMatrix::from_fn(d, vectors.len(), |i, j| vectors[j][i]))
}

// nalgebra's SVD can return a wrong factorization when singular values
// repeat, which they do generically here (e.g. orbit tangents of
// symmetric actions), so all decompositions go through faer.
fn to_faer(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn expect_finite(m: &DMatrix<f64>) {
    assert!(
        m.iter().all(|x| x.is_finite()),
        "singular value decomposition of a matrix with non-finite entries"
    );
}

/// Singular values in decreasing order.
///
/// # Panics
/// If `m` has non-finite entries.
pub fn singular_values(m: &DMatrix<f64>) -> DVector<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return DVector::zeros(0);
    }
    expect_finite(m);
    let sv = to_faer(m)
        .singular_values()
        .expect("SVD of a finite matrix converges");
    DVector::from_vec(sv)
}

fn threshold(sv: &DVector<f64>, tol: &ToleranceConfig) -> f64 {
    tol.rel_rank_tol * sv.iter().cloned().fold(0.0, f64::max)
}

fn rank_from_singular_values(sv: &DVector<f64>, tol: &ToleranceConfig) -> usize {
    let thr = threshold(sv, tol);
    sv.iter().filter(|&&s| s > thr).count()
}

/// Numerical rank of a family of vectors.
pub fn rank_of(vectors: &[DVector<f64>], tol: &ToleranceConfig) -> Result<usize> {
    let m = column_matrix(vectors)?;
    Ok(rank_from_singular_values(&singular_values(&m), tol))
}

pub fn matrix_rank(m: &DMatrix<f64>, tol: &ToleranceConfig) -> usize {
    rank_from_singular_values(&singular_values(m), tol)
}

/// Orthonormal basis (w.r.t. `form`) of the span of `vectors`.
pub fn orthonormal_basis(
    vectors: &[DVector<f64>],
    form: &InnerProduct,
    tol: &ToleranceConfig,
) -> Result<Vec<DVector<f64>>> {
    orthonormal_basis_at_scale(vectors, form, tol, 0.0)
}

/// As [`orthonormal_basis`], but directions with singular value below
/// `rel_rank_tol * scale` are dropped even if every vector is that small.
/// `scale` is the expected size of the vectors in the form's norm.
pub fn orthonormal_basis_at_scale(
    vectors: &[DVector<f64>],
    form: &InnerProduct,
    tol: &ToleranceConfig,
    scale: f64,
) -> Result<Vec<DVector<f64>>> {
    check_lengths(vectors, form.dim())?;
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let whitened: Vec<_> = vectors.iter().map(|v| form.to_euclidean(v)).collect();
    let m = column_matrix(&whitened)?;
    expect_finite(&m);
    let svd = to_faer(&m).thin_svd().expect("SVD of a finite matrix converges");
    let (u, sv) = (svd.U(), svd.S());
    let k = sv.dim();
    let sigmas = DVector::from_fn(k, |i, _| sv[i]);
    let thr = threshold(&sigmas, tol).max(tol.rel_rank_tol * scale);
    // faer returns singular values in decreasing order
    Ok((0..k)
        .filter(|&i| sigmas[i] > thr)
        .map(|i| form.from_euclidean(&DVector::from_fn(m.nrows(), |r, _| u[(r, i)])))
        .collect())
}

/// Orthonormal basis of the complement of `span(basis)` with respect to `form`.
///
/// An empty `basis` yields an orthonormal basis of the whole space.
pub fn orthogonal_complement(
    basis: &[DVector<f64>],
    form: &InnerProduct,
    tol: &ToleranceConfig,
) -> Result<Vec<DVector<f64>>> {
    let d = form.dim();
    check_lengths(basis, d)?;
    if basis.is_empty() {
        return Ok((0..d)
            .map(|i| form.from_euclidean(&DVector::from_fn(d, |k, _| (k == i) as u8 as f64)))
            .collect());
    }
    let whitened: Vec<_> = basis.iter().map(|v| form.to_euclidean(v)).collect();
    let m = column_matrix(&whitened)?.transpose();
    Ok(nullspace(&m, tol)
        .into_iter()
        .map(|u| form.from_euclidean(&u))
        .collect())
}

/// Orthonormal basis of `{v : |Av| <= rel_rank_tol * sigma_max * |v|}`.
pub fn nullspace(a: &DMatrix<f64>, tol: &ToleranceConfig) -> Vec<DVector<f64>> {
    let (r, c) = a.shape();
    let unit = |i: usize| DVector::from_fn(c, |k, _| (k == i) as u8 as f64);
    if c == 0 {
        return Vec::new();
    }
    if r == 0 || a.amax() == 0.0 {
        return (0..c).map(unit).collect();
    }
    expect_finite(a);
    let svd = to_faer(a).svd().expect("SVD of a finite matrix converges");
    let (v, sv) = (svd.V(), svd.S());
    let sigmas = DVector::from_fn(sv.dim(), |i, _| sv[i]);
    let thr = threshold(&sigmas, tol);
    (0..c)
        .filter(|&i| i >= sigmas.len() || sigmas[i] <= thr)
        .map(|i| DVector::from_fn(c, |r, _| v[(r, i)]))
        .collect()
}

pub fn project(v: &DVector<f64>, basis: &[DVector<f64>], form: &InnerProduct) -> DVector<f64> {
    let gv = form.gram() * v;
    basis
        .iter()
        .fold(DVector::zeros(v.len()), |acc, b| acc + b * b.dot(&gv))
}

/// Norm of the component of `v` orthogonal to an orthonormal basis.
pub fn residual_outside(v: &DVector<f64>, basis: &[DVector<f64>], form: &InnerProduct) -> f64 {
    form.norm(&(v - project(v, basis, form)))
}

/// Largest entrywise deviation of the Gram matrix of `basis` from the identity.
pub fn gram_deviation(basis: &[DVector<f64>], form: &InnerProduct) -> f64 {
    let mut worst = 0.0f64;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((form.inner(x, y) - target).abs());
        }
    }
    worst
}

fn check_lengths(vectors: &[DVector<f64>], d: usize) -> Result<()> {
    match vectors.iter().find(|v| v.len() != d) {
        Some(bad) => Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(xs)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn rank_of_identity_rows() {
        let rows = [v(&[1., 0., 0.]), v(&[0., 1., 0.]), v(&[0., 0., 1.])];
        assert_eq!(rank_of(&rows, &tol()).unwrap(), 3);
    }

    #[test]
    fn rank_of_parallel_vectors() {
        let rows = [v(&[1., 2., 3.]), v(&[2., 4., 6.])];
        assert_eq!(rank_of(&rows, &tol()).unwrap(), 1);
    }

    #[test]
    fn rank_of_zero_vector() {
        assert_eq!(rank_of(&[v(&[0., 0., 0.])], &tol()).unwrap(), 0);
    }

    #[test]
    fn rank_of_rejects_ragged_input() {
        let err = rank_of(&[v(&[1., 0.]), v(&[1., 0., 0.])], &tol()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn complement_of_first_axis() {
        let form = InnerProduct::euclidean(3);
        let c = orthogonal_complement(&[v(&[1., 0., 0.])], &form, &tol()).unwrap();
        assert_eq!(c.len(), 2);
        for x in &c {
            assert!(x[0].abs() < 1e-12);
        }
        assert!(gram_deviation(&c, &form) < 1e-12);
    }

    #[test]
    fn complement_of_full_space_is_empty() {
        let form = InnerProduct::euclidean(2);
        let c = orthogonal_complement(&[v(&[1., 1.]), v(&[1., -1.])], &form, &tol()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn complement_of_nothing_is_everything() {
        let form = InnerProduct::new(DMatrix::from_diagonal(&v(&[2., 3., 5.]))).unwrap();
        let c = orthogonal_complement(&[], &form, &tol()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(gram_deviation(&c, &form) < 1e-12);
    }

    #[test]
    fn complement_rejects_indefinite_form() {
        let err = InnerProduct::new(DMatrix::from_diagonal(&v(&[1., -1.]))).unwrap_err();
        assert!(matches!(err, Error::InvalidForm(_)));
    }

    #[test]
    fn complement_respects_non_euclidean_form() {
        let gram = DMatrix::from_row_slice(2, 2, &[2., 1., 1., 2.]);
        let form = InnerProduct::new(gram).unwrap();
        let c = orthogonal_complement(&[v(&[1., 0.])], &form, &tol()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(form.inner(&c[0], &v(&[1., 0.])).abs() < 1e-12);
        assert!((form.norm(&c[0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&DMatrix::zeros(3, 3), &tol()).len(), 3);
        assert!(nullspace(&DMatrix::identity(3, 3), &tol()).is_empty());
        let proj = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let ns = nullspace(&proj, &tol());
        assert_eq!(ns.len(), 1);
        assert!((&proj * &ns[0]).norm() < 1e-12);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let a = DMatrix::from_row_slice(1, 3, &[1., 1., 1.]);
        let ns = nullspace(&a, &tol());
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!((&a * x).norm() < 1e-12);
        }
    }

    #[test]
    fn invalid_tolerances_rejected() {
        let mut t = tol();
        t.num_samples = 0;
        assert!(t.validate().is_err());
        let mut t = tol();
        t.rel_rank_tol = 0.0;
        assert!(t.validate().is_err());
    }

    fn vectors(d: usize, k: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(-3.0f64..3.0, d), 0..=k)
    }

    proptest! {
        #[test]
        fn rank_plus_complement_is_ambient(raw in vectors(5, 7), dup in any::<bool>()) {
            let mut vs: Vec<_> = raw.into_iter().map(DVector::from_vec).collect();
            if dup && !vs.is_empty() {
                // force a dependency
                let extra = &vs[0] * 2.0;
                vs.push(extra);
            }
            let form = InnerProduct::euclidean(5);
            let r = rank_of(&vs, &tol()).unwrap_or(0);
            let c = orthogonal_complement(&vs, &form, &tol()).unwrap();
            prop_assert_eq!(r + c.len(), 5);
            prop_assert!(gram_deviation(&c, &form) < 1e-8);
            for x in &c {
                for y in &vs {
                    prop_assert!(form.inner(x, y).abs() < 1e-8 * (1.0 + y.norm()));
                }
            }
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            raw in vectors(4, 6),
            scale in prop_oneof![-100.0f64..-0.01, 0.01f64..100.0],
        ) {
            let vs: Vec<_> = raw.into_iter().map(DVector::from_vec).collect();
            let r = rank_of(&vs, &tol()).unwrap_or(0);
            let mut rev: Vec<_> = vs.iter().rev().cloned().collect();
            prop_assert_eq!(rank_of(&rev, &tol()).unwrap_or(0), r);
            for x in rev.iter_mut() {
                *x *= scale;
            }
            prop_assert_eq!(rank_of(&rev, &tol()).unwrap_or(0), r);
        }
    }
}
