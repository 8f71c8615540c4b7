use super::{principal_search, tangent_basis, translate, ActionSpec};
use crate::error::{Error, Result};
use crate::numerics::{orthogonal_complement, rank_of, residual_outside, ToleranceConfig};
use crate::subalgebras::{product, Subalgebra};

/// `H₁ × H₂` acts transitively on connected `L` iff `h₁ + h₂ = l`.
pub fn is_transitive(h1: &Subalgebra, h2: &Subalgebra, tol: &ToleranceConfig) -> Result<bool> {
    if h1.parent().is_direct_sum() || !h1.parent().same_as(h2.parent()) {
        return Err(Error::ParentMismatch);
    }
    let union: Vec<_> = h1.basis().iter().chain(h2.basis()).cloned().collect();
    if union.is_empty() {
        return Ok(h1.algebra().dim() == 0);
    }
    Ok(rank_of(&union, tol)? == h1.algebra().dim())
}

/// Residuals of the argument showing a polar cohomogeneity-two product
/// action has a flat section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatnessDiagnostic {
    /// Largest `|⟨[X, Y], Ad(g⁻¹)A⟩|`, `|⟨[X, Y], B⟩|` over `A ∈ h₁`, `B ∈ h₂`.
    pub bracket_normal: f64,
    /// Distance of `[X, Y]` from `span{X, Y}`.
    pub bracket_in_span: f64,
    /// `‖[X, Y]‖`.
    pub bracket_norm: f64,
}

pub fn product_flatness_diagnostic(
    h1: &Subalgebra,
    h2: &Subalgebra,
    tol: &ToleranceConfig,
) -> Result<FlatnessDiagnostic> {
    let action = ActionSpec::new(product(h1, h2, tol)?)?;
    let search = principal_search(&action, tol)?;
    if search.cohomogeneity != 2 {
        return Err(Error::HypothesisViolation {
            expected: "cohomogeneity 2".into(),
            found: format!("cohomogeneity {}", search.cohomogeneity),
        });
    }
    let l = action.algebra();
    let form = l.form();
    let t = translate(&action, &search.principal_point, tol)?;
    let tangent = tangent_basis(&action, &t, tol)?;
    let nu = orthogonal_complement(&tangent, form, tol)?;
    let (x, y) = (&nu[0], &nu[1]);
    let b = l.bracket_unchecked(x, y);
    let mut bracket_normal: f64 = 0.0;
    for (a1, a2) in &t.conjugated {
        bracket_normal = bracket_normal.max(form.inner(&b, a1).abs()).max(form.inner(&b, a2).abs());
    }
    Ok(FlatnessDiagnostic {
        bracket_normal,
        bracket_in_span: residual_outside(&b, &[x.clone(), y.clone()], form),
        bracket_norm: form.norm(&b),
    })
}
