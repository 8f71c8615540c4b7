use nalgebra::{DMatrix, DVector};

use super::{Parent, Subalgebra};
use crate::error::{Error, Result};
use crate::numerics::{nullspace, orthogonal_complement, rank_of, InnerProduct, ToleranceConfig};

/// `h = h1' ⊕ h2' ⊕ h_Δ` with `h1' = h ∩ (l ⊕ 0)`, `h2' = h ∩ (0 ⊕ l)` and
/// `h_Δ` the orthogonal complement of their sum inside `h`.
#[derive(Debug, Clone)]
pub struct IdealSplitting {
    pub h1_prime: Subalgebra,
    pub h2_prime: Subalgebra,
    pub h_delta: Subalgebra,
}

pub fn split_ideals(h: &Subalgebra, tol: &ToleranceConfig) -> Result<IdealSplitting> {
    let (p1, p2) = h.projections()?;
    let k = h.dim();
    let parent = Parent::DirectSum(h.algebra().clone());
    if k == 0 {
        let zero = Subalgebra::zero(parent);
        return Ok(IdealSplitting {
            h1_prime: zero.clone(),
            h2_prime: zero.clone(),
            h_delta: zero,
        });
    }
    let as_matrix = |vs: &[DVector<f64>]| DMatrix::from_columns(vs);
    // ker(π2|h) and ker(π1|h) as coefficient vectors on the orthonormal basis of h
    let ker2 = nullspace(&as_matrix(&p2), tol);
    let ker1 = nullspace(&as_matrix(&p1), tol);
    let sum: Vec<_> = ker2.iter().chain(&ker1).cloned().collect();
    let delta = orthogonal_complement(&sum, &InnerProduct::euclidean(k), tol)?;

    let lift = |cs: &[DVector<f64>]| -> Vec<DVector<f64>> {
        cs.iter()
            .map(|c| {
                h.basis()
                    .iter()
                    .zip(c.iter())
                    .fold(DVector::zeros(parent.dim()), |acc, (b, w)| acc + b * *w)
            })
            .collect()
    };
    let build = |cs: &[DVector<f64>], what: &str| {
        Subalgebra::from_spanning(parent.clone(), &lift(cs), tol).map_err(|e| match e {
            Error::ClosureFailure { residual } => Error::InternalConsistency {
                what: format!("{what} is not closed"),
                residual,
            },
            other => other,
        })
    };
    let h1_prime = build(&ker2, "h1'")?;
    let h2_prime = build(&ker1, "h2'")?;
    let h_delta = build(&delta, "h_delta")?;

    if h1_prime.dim() + h2_prime.dim() + h_delta.dim() != k {
        return Err(Error::InternalConsistency {
            what: format!(
                "dimensions {} + {} + {} do not add up to {k}",
                h1_prime.dim(),
                h2_prime.dim(),
                h_delta.dim()
            ),
            residual: f64::INFINITY,
        });
    }
    for (part, what) in [(&h1_prime, "h1'"), (&h2_prime, "h2'"), (&h_delta, "h_delta")] {
        let residual = h.ideal_residual(part);
        if residual > tol.residual_tol {
            return Err(Error::InternalConsistency {
                what: format!("{what} is not an ideal of h"),
                residual,
            });
        }
    }

    // π1(h) = π1(h_Δ) ⊕ h1' and π2(h) = π2(h_Δ) ⊕ h2'
    let (d1, d2) = h_delta.projections()?;
    let (a1, _) = h1_prime.projections()?;
    let (_, b2) = h2_prime.projections()?;
    for (whole, diag, own, what) in [(&p1, &d1, &a1, "π1"), (&p2, &d2, &b2, "π2")] {
        let r_whole = rank_of(whole, tol)?;
        let r_diag = rank_of(diag, tol)?;
        let union: Vec<_> = diag.iter().chain(own.iter()).cloned().collect();
        let r_union = rank_of(&union, tol)?;
        if r_union != r_whole || r_diag + own.len() != r_whole {
            return Err(Error::InternalConsistency {
                what: format!(
                    "{what}(h) has rank {r_whole} but the splitting gives {r_diag} + {}",
                    own.len()
                ),
                residual: f64::INFINITY,
            });
        }
    }

    Ok(IdealSplitting {
        h1_prime,
        h2_prime,
        h_delta,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lie_algebras::{build_classical, Automorphism, Family};
    use crate::subalgebras::{diagonal_sigma, embeddings, product};

    #[test]
    fn product_has_no_diagonal_part() {
        let tol = ToleranceConfig::default();
        let l = Arc::new(build_classical(Family::Su, 3).unwrap());
        let c = embeddings::cartan(&l, &tol).unwrap();
        let so3 = embeddings::real_form(&l, &tol).unwrap();
        let s = split_ideals(&product(&c, &so3, &tol).unwrap(), &tol).unwrap();
        assert_eq!((s.h1_prime.dim(), s.h2_prime.dim(), s.h_delta.dim()), (2, 3, 0));
    }

    #[test]
    fn diagonal_is_all_diagonal_part() {
        let tol = ToleranceConfig::default();
        let l = Arc::new(build_classical(Family::Su, 3).unwrap());
        let h = diagonal_sigma(&l, &Automorphism::identity(&l), &tol).unwrap();
        let s = split_ideals(&h, &tol).unwrap();
        assert_eq!((s.h1_prime.dim(), s.h2_prime.dim(), s.h_delta.dim()), (0, 0, 8));
    }

    #[test]
    fn rejects_subalgebra_of_l() {
        let tol = ToleranceConfig::default();
        let l = Arc::new(build_classical(Family::Su, 3).unwrap());
        let c = embeddings::cartan(&l, &tol).unwrap();
        assert!(split_ideals(&c, &tol).is_err());
    }
}
