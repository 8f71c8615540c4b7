use nalgebra::{DMatrix, DVector};

use super::{principal_search, tangent_basis, translate, ActionSpec, PrincipalSearch};
use crate::error::{Error, Result};
use crate::numerics::{orthogonal_complement, residual_outside, ToleranceConfig};

/// Outcome of the polarity criterion at a principal point.
#[derive(Debug, Clone)]
pub struct PolarityReport {
    pub cohomogeneity: usize,
    pub principal_point: DMatrix<f64>,
    /// Orthonormal basis of `ν`, in coordinates of `l`.
    pub section_basis: Vec<DVector<f64>>,
    pub polar: bool,
    pub hyperpolar: bool,
    /// Largest component of `[[X, Y], Z]` outside `ν`.
    pub residual_triple: f64,
    /// Largest `|⟨[X, Y], Ad(g⁻¹)A + B⟩|` over `X, Y ∈ ν`, `(A, B) ∈ h`.
    pub residual_orth: f64,
    /// Largest `‖[X, Y]‖` over `X, Y ∈ ν`.
    pub residual_abelian: f64,
    pub samples_used: usize,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
}

/// Principal search followed by the criterion at the point it found.
pub fn analyze(action: &ActionSpec, tol: &ToleranceConfig) -> Result<PolarityReport> {
    let search = principal_search(action, tol)?;
    check_at(action, &search.principal_point.clone(), &search, tol)
}

/// Evaluates the criterion at `g`, which must attain the largest orbit
/// dimension found by sampling.
pub fn polarity_check(action: &ActionSpec, g: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<PolarityReport> {
    let search = principal_search(action, tol)?;
    check_at(action, g, &search, tol)
}

fn check_at(
    action: &ActionSpec,
    g: &DMatrix<f64>,
    search: &PrincipalSearch,
    tol: &ToleranceConfig,
) -> Result<PolarityReport> {
    let l = action.algebra();
    let form = l.form();
    let t = translate(action, g, tol)?;
    let tangent = tangent_basis(action, &t, tol)?;
    if tangent.len() < search.max_orbit_dim {
        return Err(Error::NonPrincipalPoint {
            found: tangent.len(),
            max: search.max_orbit_dim,
        });
    }
    let nu = orthogonal_complement(&tangent, form, tol)?;

    // ν ⊥ h holds by construction: ⟨(X, −X), (Ad(g⁻¹)A, B)⟩ = ⟨X, Ad(g⁻¹)A − B⟩
    let mut normal_defect: f64 = 0.0;
    for x in &nu {
        for v in &t.tangent {
            normal_defect = normal_defect.max(form.inner(x, v).abs());
        }
    }
    if normal_defect > tol.residual_tol {
        return Err(Error::InternalConsistency {
            what: "normal space is not orthogonal to the orbit".into(),
            residual: normal_defect,
        });
    }

    let k = nu.len();
    let mut brackets = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            brackets.push(l.bracket_unchecked(&nu[i], &nu[j]));
        }
    }
    let residual_abelian = brackets.iter().map(|b| form.norm(b)).fold(0.0, f64::max);
    let mut residual_triple: f64 = 0.0;
    for b in &brackets {
        for z in &nu {
            residual_triple = residual_triple.max(residual_outside(&l.bracket_unchecked(b, z), &nu, form));
        }
    }
    let sums: Vec<DVector<f64>> = t.conjugated.iter().map(|(a, b)| a + b).collect();
    let mut residual_orth: f64 = 0.0;
    for b in &brackets {
        for s in &sums {
            residual_orth = residual_orth.max(form.inner(b, s).abs());
        }
    }

    let polar = residual_triple < tol.residual_tol && residual_orth < tol.residual_tol;
    let hyperpolar = polar && residual_abelian < tol.residual_tol;
    Ok(PolarityReport {
        cohomogeneity: k,
        principal_point: g.clone(),
        section_basis: nu,
        polar,
        hyperpolar,
        residual_triple,
        residual_orth,
        residual_abelian,
        samples_used: search.orbit_dims.len(),
        seed: tol.seed,
        tolerances: *tol,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lie_algebras::{build_classical, make_automorphism, Automorphism, AutomorphismSpec, Family, LieAlgebra};
    use crate::subalgebras::{diagonal_sigma, embeddings, product, Parent, Subalgebra};

    fn su3() -> Arc<LieAlgebra> {
        Arc::new(build_classical(Family::Su, 3).unwrap())
    }

    #[test]
    fn conjugation_action_is_hyperpolar() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let h = diagonal_sigma(&l, &Automorphism::identity(&l), &tol).unwrap();
        let r = analyze(&ActionSpec::new(h).unwrap(), &tol).unwrap();
        assert_eq!(r.cohomogeneity, 2);
        assert_eq!(r.section_basis.len(), 2);
        assert!(r.polar && r.hyperpolar);
        assert!(r.residual_abelian < 1e-8);
    }

    #[test]
    fn outer_sigma_action_is_hyperpolar() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let sigma = make_automorphism(&l, AutomorphismSpec::OuterSu, &tol).unwrap();
        let h = diagonal_sigma(&l, &sigma, &tol).unwrap();
        let r = analyze(&ActionSpec::new(h).unwrap(), &tol).unwrap();
        assert!(r.hyperpolar);
    }

    #[test]
    fn hermann_action_is_hyperpolar() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let k = embeddings::real_form(&l, &tol).unwrap();
        let h = product(&k, &k, &tol).unwrap();
        let r = analyze(&ActionSpec::new(h).unwrap(), &tol).unwrap();
        assert_eq!(r.cohomogeneity, 2);
        assert!(r.hyperpolar);
    }

    #[test]
    fn trivial_action_is_polar_but_not_flat() {
        // the whole group is a section
        let tol = ToleranceConfig::default();
        let l = su3();
        let h = Subalgebra::zero(Parent::DirectSum(Arc::clone(&l)));
        let r = analyze(&ActionSpec::new(h).unwrap(), &tol).unwrap();
        assert_eq!(r.cohomogeneity, 8);
        assert!(r.polar);
        assert!(!r.hyperpolar);
    }

    #[test]
    fn transitive_action_has_empty_section() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let h = Subalgebra::full(Parent::DirectSum(Arc::clone(&l)), &tol).unwrap();
        let r = analyze(&ActionSpec::new(h).unwrap(), &tol).unwrap();
        assert_eq!(r.cohomogeneity, 0);
        assert!(r.section_basis.is_empty());
        assert!(r.polar && r.hyperpolar);
    }

    #[test]
    fn refuses_non_principal_points() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let h = diagonal_sigma(&l, &Automorphism::identity(&l), &tol).unwrap();
        let e = DMatrix::identity(6, 6);
        let err = polarity_check(&ActionSpec::new(h).unwrap(), &e, &tol).unwrap_err();
        assert_eq!(err, Error::NonPrincipalPoint { found: 0, max: 6 });
    }
}
