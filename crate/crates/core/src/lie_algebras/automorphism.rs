use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::realify::complex_conjugation;
use super::{Family, LieAlgebra};
use crate::error::{Error, Result};
use crate::numerics::ToleranceConfig;

#[derive(Debug, Clone)]
pub enum AutomorphismSpec {
    /// Conjugation by an orthogonal matrix of the ambient representation.
    Inner(DMatrix<f64>),
    /// Complex conjugation on `su(n)`.
    OuterSu,
    /// Conjugation by `diag(-1, 1, ..., 1)` on `so(2m)`.
    OuterSoEven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomorphismKind {
    Inner,
    Outer(&'static str),
}

#[derive(Debug, Clone)]
pub struct Automorphism {
    algebra: Arc<LieAlgebra>,
    matrix: DMatrix<f64>,
    kind: AutomorphismKind,
}

pub fn make_automorphism(
    algebra: &Arc<LieAlgebra>,
    spec: AutomorphismSpec,
    tol: &ToleranceConfig,
) -> Result<Automorphism> {
    let (k, kind) = match spec {
        AutomorphismSpec::Inner(k) => (k, AutomorphismKind::Inner),
        AutomorphismSpec::OuterSu => match algebra.family() {
            Some((Family::Su, n)) => (complex_conjugation(n), AutomorphismKind::Outer("complex conjugation")),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "complex conjugation needs su(n), got {}",
                    algebra.name()
                )))
            }
        },
        AutomorphismSpec::OuterSoEven => match algebra.family() {
            Some((Family::So, n)) if n % 2 == 0 && n >= 4 => {
                let mut r = DMatrix::identity(n, n);
                r[(0, 0)] = -1.0;
                (r, AutomorphismKind::Outer("reflection"))
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "reflection automorphism needs so(2m) with m >= 2, got {}",
                    algebra.name()
                )))
            }
        },
    };
    let matrix = algebra.adjoint_matrix(&k, tol)?;
    let sigma = Automorphism {
        algebra: Arc::clone(algebra),
        matrix,
        kind,
    };
    let residual = sigma.bracket_residual().max(sigma.form_residual());
    if residual > tol.residual_tol {
        return Err(Error::InternalConsistency {
            what: "automorphism does not preserve bracket and form".into(),
            residual,
        });
    }
    Ok(sigma)
}

impl Automorphism {
    pub fn identity(algebra: &Arc<LieAlgebra>) -> Self {
        let d = algebra.dim();
        Self {
            algebra: Arc::clone(algebra),
            matrix: DMatrix::identity(d, d),
            kind: AutomorphismKind::Inner,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    /// Coordinate matrix with respect to the algebra basis.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn kind(&self) -> &AutomorphismKind {
        &self.kind
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.matrix * x
    }

    /// `max ||σ[b_i, b_j] - [σ b_i, σ b_j]||` over basis pairs.
    pub fn bracket_residual(&self) -> f64 {
        let l = &self.algebra;
        let d = l.dim();
        let images: Vec<_> = (0..d).map(|i| self.matrix.column(i).into_owned()).collect();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in (i + 1)..d {
                let e_i = DVector::from_fn(d, |k, _| (k == i) as u8 as f64);
                let e_j = DVector::from_fn(d, |k, _| (k == j) as u8 as f64);
                let lhs = self.apply(&l.bracket_unchecked(&e_i, &e_j));
                let rhs = l.bracket_unchecked(&images[i], &images[j]);
                worst = worst.max(l.form().norm(&(lhs - rhs)));
            }
        }
        worst
    }

    pub fn form_residual(&self) -> f64 {
        let g = self.algebra.form().gram();
        (self.matrix.transpose() * g * &self.matrix - g).amax()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::build_classical;
    use crate::numerics::nullspace;

    fn fixed_dim(sigma: &Automorphism) -> usize {
        let d = sigma.algebra().dim();
        let m = sigma.matrix() - DMatrix::<f64>::identity(d, d);
        nullspace(&m, &ToleranceConfig::default()).len()
    }

    #[test]
    fn inner_identity_is_identity() {
        let tol = ToleranceConfig::default();
        let su3 = Arc::new(build_classical(Family::Su, 3).unwrap());
        let sigma = make_automorphism(&su3, AutomorphismSpec::Inner(DMatrix::identity(6, 6)), &tol).unwrap();
        assert!((sigma.matrix() - DMatrix::<f64>::identity(8, 8)).amax() < 1e-12);
        assert_eq!(sigma.kind(), &AutomorphismKind::Inner);
    }

    #[test]
    fn outer_su3_fixes_so3() {
        let tol = ToleranceConfig::default();
        let su3 = Arc::new(build_classical(Family::Su, 3).unwrap());
        let sigma = make_automorphism(&su3, AutomorphismSpec::OuterSu, &tol).unwrap();
        let sq = sigma.matrix() * sigma.matrix();
        assert!((sq - DMatrix::<f64>::identity(8, 8)).amax() < 1e-12);
        assert_eq!(fixed_dim(&sigma), 3);
    }

    #[test]
    fn reflection_on_so8_fixes_so7() {
        let tol = ToleranceConfig::default();
        let so8 = Arc::new(build_classical(Family::So, 8).unwrap());
        let sigma = make_automorphism(&so8, AutomorphismSpec::OuterSoEven, &tol).unwrap();
        assert_eq!(fixed_dim(&sigma), 21);
    }

    #[test]
    fn incompatible_specs() {
        let tol = ToleranceConfig::default();
        let so7 = Arc::new(build_classical(Family::So, 7).unwrap());
        assert!(make_automorphism(&so7, AutomorphismSpec::OuterSu, &tol).is_err());
        assert!(make_automorphism(&so7, AutomorphismSpec::OuterSoEven, &tol).is_err());
        // a non-orthogonal matrix is not a group element
        let k = DMatrix::identity(7, 7) * 2.0;
        assert!(matches!(
            make_automorphism(&so7, AutomorphismSpec::Inner(k), &tol),
            Err(Error::NotInGroup { .. })
        ));
    }
}
