//! The action `(a, b)·g = a g b⁻¹` of a subgroup `H ⊆ L × L` on `L`.
//!
//! Everything is evaluated at the identity after translating: the orbit
//! through `g` has tangent space (translated to `e`)
//! `t(g) = {Ad(g⁻¹)X₁ − X₂ : (X₁, X₂) ∈ h}`, and `ν` is its orthogonal
//! complement in `l`.

mod polarity;
mod transitivity;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lie_algebras::LieAlgebra;
use crate::numerics::{orthonormal_basis_at_scale, ToleranceConfig};
use crate::subalgebras::{split_pair, Parent, Subalgebra};

pub use polarity::{analyze, polarity_check, PolarityReport};
pub use transitivity::{is_transitive, product_flatness_diagnostic, FlatnessDiagnostic};

#[derive(Debug, Clone)]
pub struct ActionSpec {
    algebra: Arc<LieAlgebra>,
    h: Subalgebra,
}

impl ActionSpec {
    /// `h` must be a subalgebra of `l ⊕ l`.
    pub fn new(h: Subalgebra) -> Result<Self> {
        match h.parent() {
            Parent::DirectSum(l) => Ok(Self {
                algebra: Arc::clone(l),
                h,
            }),
            Parent::Algebra(_) => Err(Error::InvalidInput(
                "an action needs a subalgebra of l ⊕ l".into(),
            )),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn h(&self) -> &Subalgebra {
        &self.h
    }

    /// Conjugates `h` by `(a, b)`, which moves the orbit through `g` to the
    /// orbit through `a g b⁻¹`.
    pub fn conjugate(&self, a: &DMatrix<f64>, b: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<Self> {
        Self::new(self.h.conjugate_pair(a, b, tol)?)
    }
}

/// Spanning vectors `Ad(g⁻¹)X₁ − X₂` and, alongside, the pieces
/// `(Ad(g⁻¹)X₁, X₂)` of the conjugated subalgebra.
pub(crate) struct Translated {
    pub tangent: Vec<DVector<f64>>,
    pub conjugated: Vec<(DVector<f64>, DVector<f64>)>,
}

pub(crate) fn translate(action: &ActionSpec, g: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<Translated> {
    let ad_inv = action.algebra.adjoint_matrix(&g.transpose(), tol)?;
    let conjugated: Vec<_> = action
        .h
        .basis()
        .iter()
        .map(|v| {
            let (x1, x2) = split_pair(v);
            (&ad_inv * x1, x2)
        })
        .collect();
    let tangent = conjugated.iter().map(|(a, b)| a - b).collect();
    Ok(Translated { tangent, conjugated })
}

/// Orthonormal basis of the orbit tangent space at `g`, translated to `e`.
pub fn orbit_tangent(action: &ActionSpec, g: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<Vec<DVector<f64>>> {
    let t = translate(action, g, tol)?;
    tangent_basis(action, &t, tol)
}

// The spanning vectors come from an orthonormal basis of h, so they have
// norm at most sqrt(2); that is the scale against which rank is judged.
pub(crate) fn tangent_basis(action: &ActionSpec, t: &Translated, tol: &ToleranceConfig) -> Result<Vec<DVector<f64>>> {
    orthonormal_basis_at_scale(&t.tangent, action.algebra.form(), tol, 1.0)
}

/// `exp(Z₁) exp(Z₂)` for coordinate vectors `z1`, `z2`.
pub fn group_point_from_coefficients(
    l: &LieAlgebra,
    z1: &DVector<f64>,
    z2: &DVector<f64>,
) -> Result<DMatrix<f64>> {
    for z in [z1, z2] {
        if z.len() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                found: z.len(),
            });
        }
    }
    Ok(l.exp(z1) * l.exp(z2))
}

/// A random group element from two independent standard Gaussian
/// coefficient draws.
pub fn sample_group_point<R: Rng + ?Sized>(l: &LieAlgebra, rng: &mut R) -> DMatrix<f64> {
    let d = l.dim();
    let z1 = DVector::from_fn(d, |_, _| rng.sample(StandardNormal));
    let z2 = DVector::from_fn(d, |_, _| rng.sample(StandardNormal));
    l.exp(&z1) * l.exp(&z2)
}

/// Sample points drawn from `tol.seed`, in order.
pub fn sample_points(l: &LieAlgebra, tol: &ToleranceConfig) -> Vec<DMatrix<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(tol.seed);
    (0..tol.num_samples).map(|_| sample_group_point(l, &mut rng)).collect()
}

#[derive(Debug, Clone)]
pub struct PrincipalSearch {
    pub cohomogeneity: usize,
    pub principal_point: DMatrix<f64>,
    pub max_orbit_dim: usize,
    /// Orbit dimension at each sample, in sampling order.
    pub orbit_dims: Vec<usize>,
}

/// Largest orbit dimension over the sampled points; ties go to the first
/// sample attaining it.
pub fn principal_search(action: &ActionSpec, tol: &ToleranceConfig) -> Result<PrincipalSearch> {
    tol.validate()?;
    let points = sample_points(&action.algebra, tol);
    let dims = std::thread::scope(|s| {
        let handles: Vec<_> = points
            .iter()
            .map(|g| s.spawn(move || orbit_tangent(action, g, tol).map(|t| t.len())))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let (best, &max) = dims
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|(_, d)| **d)
        .expect("num_samples is positive");
    Ok(PrincipalSearch {
        cohomogeneity: action.algebra.dim() - max,
        principal_point: points[best].clone(),
        max_orbit_dim: max,
        orbit_dims: dims,
    })
}

/// `dim l − max orbit dimension` and a point attaining the maximum.
pub fn cohomogeneity(action: &ActionSpec, tol: &ToleranceConfig) -> Result<(usize, DMatrix<f64>)> {
    let s = principal_search(action, tol)?;
    Ok((s.cohomogeneity, s.principal_point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::{build_classical, Automorphism, Family};
    use crate::subalgebras::{diagonal_sigma, embeddings, product};

    fn su(n: usize) -> Arc<LieAlgebra> {
        Arc::new(build_classical(Family::Su, n).unwrap())
    }

    #[test]
    fn conjugation_fixes_identity() {
        let tol = ToleranceConfig::default();
        let l = su(3);
        let h = diagonal_sigma(&l, &Automorphism::identity(&l), &tol).unwrap();
        let a = ActionSpec::new(h).unwrap();
        let e = DMatrix::identity(6, 6);
        assert_eq!(orbit_tangent(&a, &e, &tol).unwrap().len(), 0);
    }

    #[test]
    fn full_product_is_transitive() {
        let tol = ToleranceConfig::default();
        let l = su(3);
        let full = Subalgebra::full(Parent::DirectSum(Arc::clone(&l)), &tol).unwrap();
        let a = ActionSpec::new(full).unwrap();
        let g = sample_points(&l, &tol).remove(0);
        assert_eq!(orbit_tangent(&a, &g, &tol).unwrap().len(), 8);
        assert_eq!(cohomogeneity(&a, &tol).unwrap().0, 0);
    }

    #[test]
    fn left_su2_is_free_at_identity() {
        let tol = ToleranceConfig::default();
        let l = su(3);
        let h1 = embeddings::corner_su(&l, 2, &tol).unwrap();
        let h2 = Subalgebra::zero(Parent::Algebra(Arc::clone(&l)));
        let a = ActionSpec::new(product(&h1, &h2, &tol).unwrap()).unwrap();
        let e = DMatrix::identity(6, 6);
        assert_eq!(orbit_tangent(&a, &e, &tol).unwrap().len(), 3);
    }

    #[test]
    fn sampling_is_deterministic_and_in_the_group() {
        let tol = ToleranceConfig::default().with_seed(11);
        let l = su(3);
        let p = sample_points(&l, &tol);
        let q = sample_points(&l, &tol);
        assert_eq!(p, q);
        for g in &p {
            assert!(l.group_membership_residual(g).unwrap() < tol.residual_tol);
        }
        let zero = DVector::zeros(8);
        let e = group_point_from_coefficients(&l, &zero, &zero).unwrap();
        assert_eq!(e, DMatrix::identity(6, 6));
    }

    #[test]
    fn rejects_non_group_points() {
        let tol = ToleranceConfig::default();
        let l = su(3);
        let h = diagonal_sigma(&l, &Automorphism::identity(&l), &tol).unwrap();
        let a = ActionSpec::new(h).unwrap();
        let g = DMatrix::identity(6, 6) * 2.0;
        assert!(matches!(orbit_tangent(&a, &g, &tol), Err(Error::NotInGroup { .. })));
    }

    #[test]
    fn needs_direct_sum_parent() {
        let tol = ToleranceConfig::default();
        let l = su(3);
        let h = embeddings::cartan(&l, &tol).unwrap();
        assert!(ActionSpec::new(h).is_err());
    }
}
