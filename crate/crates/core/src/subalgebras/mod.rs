//! Subalgebras of `l` and of `l ⊕ l`, stored as orthonormal coefficient
//! vectors with respect to the parent's invariant form.

pub mod embeddings;
mod split;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie_algebras::{Automorphism, LieAlgebra};
use crate::numerics::{nullspace, orthonormal_basis, InnerProduct, ToleranceConfig};

pub use split::{split_ideals, IdealSplitting};

/// The algebra a subalgebra lives in: `l` itself or `l ⊕ l`.
///
/// Coordinates on `l ⊕ l` are the concatenation `(x1, x2)` of coordinates on
/// the two summands; the bracket and form are componentwise.
#[derive(Debug, Clone)]
pub enum Parent {
    Algebra(Arc<LieAlgebra>),
    DirectSum(Arc<LieAlgebra>),
}

impl Parent {
    pub fn base(&self) -> &Arc<LieAlgebra> {
        match self {
            Parent::Algebra(l) | Parent::DirectSum(l) => l,
        }
    }

    pub fn is_direct_sum(&self) -> bool {
        matches!(self, Parent::DirectSum(_))
    }

    pub fn dim(&self) -> usize {
        match self {
            Parent::Algebra(l) => l.dim(),
            Parent::DirectSum(l) => 2 * l.dim(),
        }
    }

    pub fn form(&self) -> InnerProduct {
        match self {
            Parent::Algebra(l) => l.form().clone(),
            Parent::DirectSum(l) => InnerProduct::direct_sum(l.form(), l.form()),
        }
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        match self {
            Parent::Algebra(l) => l.bracket_unchecked(x, y),
            Parent::DirectSum(l) => {
                let (x1, x2) = split_pair(x);
                let (y1, y2) = split_pair(y);
                join_pair(&l.bracket_unchecked(&x1, &y1), &l.bracket_unchecked(&x2, &y2))
            }
        }
    }

    /// Matrix of `ad(x)` on coordinates of the parent.
    pub fn ad_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        match self {
            Parent::Algebra(l) => l.ad_matrix(x),
            Parent::DirectSum(l) => {
                let d = l.dim();
                let (x1, x2) = split_pair(x);
                let mut m = DMatrix::zeros(2 * d, 2 * d);
                m.view_mut((0, 0), (d, d)).copy_from(&l.ad_matrix(&x1));
                m.view_mut((d, d), (d, d)).copy_from(&l.ad_matrix(&x2));
                m
            }
        }
    }

    pub fn same_as(&self, other: &Parent) -> bool {
        self.is_direct_sum() == other.is_direct_sum() && Arc::ptr_eq(self.base(), other.base())
    }
}

/// Splits coordinates on `l ⊕ l` into the two summands.
pub fn split_pair(v: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
    let d = v.len() / 2;
    (v.rows(0, d).into_owned(), v.rows(d, d).into_owned())
}

pub fn join_pair(x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(x.len() + y.len(), x.iter().chain(y.iter()).cloned())
}

#[derive(Debug, Clone)]
pub struct Subalgebra {
    parent: Parent,
    basis: Vec<DVector<f64>>,
    form: InnerProduct,
    // columns are the basis vectors, and the same premultiplied by the Gram matrix
    basis_matrix: DMatrix<f64>,
    dual_matrix: DMatrix<f64>,
}

impl Subalgebra {
    fn assemble(parent: Parent, basis: Vec<DVector<f64>>, form: InnerProduct) -> Self {
        let d = parent.dim();
        let basis_matrix = if basis.is_empty() {
            DMatrix::zeros(d, 0)
        } else {
            DMatrix::from_columns(&basis)
        };
        let dual_matrix = form.gram() * &basis_matrix;
        Self {
            parent,
            basis,
            form,
            basis_matrix,
            dual_matrix,
        }
    }

    /// Orthonormalizes the span of `vectors` and checks bracket closure.
    pub fn from_spanning(
        parent: Parent,
        vectors: &[DVector<f64>],
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        let form = parent.form();
        let basis = orthonormal_basis(vectors, &form, tol)?;
        let h = Self::assemble(parent, basis, form);
        let residual = h.closure_residual();
        if residual > tol.residual_tol {
            return Err(Error::ClosureFailure { residual });
        }
        Ok(h)
    }

    /// Subalgebra of `l` spanned by ambient matrices, which must lie in `l`.
    pub fn from_matrices(
        algebra: &Arc<LieAlgebra>,
        matrices: &[DMatrix<f64>],
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        let coords = matrices
            .iter()
            .map(|m| algebra.coords_checked(m, tol))
            .collect::<Result<Vec<_>>>()?;
        Self::from_spanning(Parent::Algebra(Arc::clone(algebra)), &coords, tol)
    }

    /// Subalgebra of `l ⊕ l` spanned by pairs of ambient matrices.
    pub fn from_matrix_pairs(
        algebra: &Arc<LieAlgebra>,
        pairs: &[(DMatrix<f64>, DMatrix<f64>)],
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        let coords = pairs
            .iter()
            .map(|(a, b)| {
                Ok(join_pair(
                    &algebra.coords_checked(a, tol)?,
                    &algebra.coords_checked(b, tol)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_spanning(Parent::DirectSum(Arc::clone(algebra)), &coords, tol)
    }

    pub fn zero(parent: Parent) -> Self {
        let form = parent.form();
        Self::assemble(parent, Vec::new(), form)
    }

    pub fn full(parent: Parent, tol: &ToleranceConfig) -> Result<Self> {
        let d = parent.dim();
        let units: Vec<_> = (0..d)
            .map(|i| DVector::from_fn(d, |k, _| (k == i) as u8 as f64))
            .collect();
        Self::from_spanning(parent, &units, tol)
    }

    pub fn parent(&self) -> &Parent {
        &self.parent
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.parent.base()
    }

    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn form(&self) -> &InnerProduct {
        &self.form
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis_matrix * (self.dual_matrix.transpose() * v)
    }

    /// Norm of the component of `v` orthogonal to this subalgebra.
    pub fn outside_residual(&self, v: &DVector<f64>) -> f64 {
        self.form.norm(&(v - self.project(v)))
    }

    /// Largest norm among the columns of `vs` after removing their
    /// component in this subalgebra.
    fn outside_residual_columns(&self, vs: &DMatrix<f64>) -> f64 {
        let rest = vs - &self.basis_matrix * (self.dual_matrix.transpose() * vs);
        let weighted = self.form.gram() * &rest;
        (0..rest.ncols())
            .map(|c| rest.column(c).dot(&weighted.column(c)).max(0.0).sqrt())
            .fold(0.0, f64::max)
    }

    /// Largest component of `[b_i, b_j]` outside the span, over basis pairs.
    pub fn closure_residual(&self) -> f64 {
        self.ideal_residual(self)
    }

    /// How far `[self, part] ⊆ part` is from holding.
    pub fn ideal_residual(&self, part: &Subalgebra) -> f64 {
        if part.basis.is_empty() {
            return 0.0;
        }
        self.basis
            .iter()
            .map(|x| part.outside_residual_columns(&(self.parent.ad_matrix(x) * &part.basis_matrix)))
            .fold(0.0, f64::max)
    }

    pub fn gram_residual(&self) -> f64 {
        crate::numerics::gram_deviation(&self.basis, &self.form)
    }

    /// Projections of the basis to the first and second summand of `l ⊕ l`.
    pub fn projections(&self) -> Result<(Vec<DVector<f64>>, Vec<DVector<f64>>)> {
        if !self.parent.is_direct_sum() {
            return Err(Error::InvalidInput("projections need a subalgebra of l ⊕ l".into()));
        }
        Ok(self.basis.iter().map(split_pair).unzip())
    }

    /// `{Ad(a) X}` for a subalgebra of `l`.
    pub fn conjugate(&self, a: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<Self> {
        let Parent::Algebra(l) = &self.parent else {
            return Err(Error::InvalidInput("use conjugate_pair on subalgebras of l ⊕ l".into()));
        };
        let ad = l.adjoint_matrix(a, tol)?;
        let vs: Vec<_> = self.basis.iter().map(|x| &ad * x).collect();
        Self::from_spanning(self.parent.clone(), &vs, tol)
    }

    /// `{(Ad(a) X1, Ad(b) X2)}` for a subalgebra of `l ⊕ l`.
    pub fn conjugate_pair(
        &self,
        a: &DMatrix<f64>,
        b: &DMatrix<f64>,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        let Parent::DirectSum(l) = &self.parent else {
            return Err(Error::InvalidInput("conjugate_pair needs a subalgebra of l ⊕ l".into()));
        };
        let (ad_a, ad_b) = (l.adjoint_matrix(a, tol)?, l.adjoint_matrix(b, tol)?);
        let vs: Vec<_> = self
            .basis
            .iter()
            .map(|v| {
                let (x1, x2) = split_pair(v);
                join_pair(&(&ad_a * x1), &(&ad_b * x2))
            })
            .collect();
        Self::from_spanning(self.parent.clone(), &vs, tol)
    }

    /// The same coefficient span inside another copy of the parent algebra,
    /// e.g. one with a rescaled form.
    pub fn rebase(&self, algebra: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<Self> {
        if algebra.dim() != self.algebra().dim() {
            return Err(Error::ParentMismatch);
        }
        let parent = match self.parent {
            Parent::Algebra(_) => Parent::Algebra(Arc::clone(algebra)),
            Parent::DirectSum(_) => Parent::DirectSum(Arc::clone(algebra)),
        };
        Self::from_spanning(parent, &self.basis, tol)
    }

    pub fn to_matrices(&self) -> Vec<DMatrix<f64>> {
        let l = self.algebra();
        match self.parent {
            Parent::Algebra(_) => self.basis.iter().map(|x| l.to_matrix(x)).collect(),
            Parent::DirectSum(_) => {
                let n = l.ambient_size();
                self.basis
                    .iter()
                    .map(|v| {
                        let (x1, x2) = split_pair(v);
                        let mut m = DMatrix::zeros(2 * n, 2 * n);
                        m.view_mut((0, 0), (n, n)).copy_from(&l.to_matrix(&x1));
                        m.view_mut((n, n), (n, n)).copy_from(&l.to_matrix(&x2));
                        m
                    })
                    .collect()
            }
        }
    }
}

/// `Δ^σ l = {(X, σX)}`.
pub fn diagonal_sigma(
    algebra: &Arc<LieAlgebra>,
    sigma: &Automorphism,
    tol: &ToleranceConfig,
) -> Result<Subalgebra> {
    if !Arc::ptr_eq(algebra, sigma.algebra()) {
        return Err(Error::ParentMismatch);
    }
    let full = Subalgebra::full(Parent::Algebra(Arc::clone(algebra)), tol)?;
    graph(&full, sigma.matrix(), tol)
}

/// `{(X, φX) : X ∈ h}` for a linear map `φ` given on coordinates of `l`.
/// Closure holds exactly when `φ` restricted to `h` is a homomorphism.
pub fn graph(h: &Subalgebra, map: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let Parent::Algebra(l) = h.parent() else {
        return Err(Error::InvalidInput("graph needs a subalgebra of l".into()));
    };
    if map.shape() != (l.dim(), l.dim()) {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: map.nrows(),
        });
    }
    let vs: Vec<_> = h.basis().iter().map(|x| join_pair(x, &(map * x))).collect();
    Subalgebra::from_spanning(Parent::DirectSum(Arc::clone(l)), &vs, tol)
}

/// `h1 × h2 = {(A, 0)} ⊕ {(0, B)}`.
pub fn product(h1: &Subalgebra, h2: &Subalgebra, tol: &ToleranceConfig) -> Result<Subalgebra> {
    if h1.parent().is_direct_sum() || !h1.parent().same_as(h2.parent()) {
        return Err(Error::ParentMismatch);
    }
    let l = h1.algebra();
    let zero = DVector::zeros(l.dim());
    let vs: Vec<_> = h1
        .basis()
        .iter()
        .map(|a| join_pair(a, &zero))
        .chain(h2.basis().iter().map(|b| join_pair(&zero, b)))
        .collect();
    Subalgebra::from_spanning(Parent::DirectSum(Arc::clone(l)), &vs, tol)
}

/// Fixed points of an automorphism.
pub fn fixed_subalgebra(sigma: &Automorphism, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let l = sigma.algebra();
    let d = l.dim();
    let vs = nullspace(&(sigma.matrix() - DMatrix::<f64>::identity(d, d)), tol);
    Subalgebra::from_spanning(Parent::Algebra(Arc::clone(l)), &vs, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::{build_classical, make_automorphism, AutomorphismSpec, Family};
    use crate::numerics::rank_of;

    fn su3() -> Arc<LieAlgebra> {
        Arc::new(build_classical(Family::Su, 3).unwrap())
    }

    #[test]
    fn identity_diagonal() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let h = diagonal_sigma(&l, &Automorphism::identity(&l), &tol).unwrap();
        assert_eq!(h.dim(), 8);
        assert!(h.closure_residual() < 1e-12);
        let (p1, p2) = h.projections().unwrap();
        assert_eq!(rank_of(&p1, &tol).unwrap(), 8);
        assert_eq!(rank_of(&p2, &tol).unwrap(), 8);
    }

    #[test]
    fn outer_diagonal_is_closed() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let sigma = make_automorphism(&l, AutomorphismSpec::OuterSu, &tol).unwrap();
        let h = diagonal_sigma(&l, &sigma, &tol).unwrap();
        assert_eq!(h.dim(), 8);
        assert!(h.closure_residual() < tol.residual_tol);
        assert!(h.gram_residual() < tol.residual_tol);
    }

    #[test]
    fn diagonal_rejects_foreign_automorphism() {
        let tol = ToleranceConfig::default();
        let (a, b) = (su3(), su3());
        let sigma = Automorphism::identity(&b);
        assert_eq!(diagonal_sigma(&a, &sigma, &tol).unwrap_err(), Error::ParentMismatch);
    }

    #[test]
    fn product_dimensions() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let cartan = embeddings::cartan(&l, &tol).unwrap();
        assert_eq!(cartan.dim(), 2);
        assert_eq!(product(&cartan, &cartan, &tol).unwrap().dim(), 4);
        let full = Subalgebra::full(Parent::Algebra(Arc::clone(&l)), &tol).unwrap();
        let zero = Subalgebra::zero(Parent::Algebra(Arc::clone(&l)));
        assert_eq!(product(&full, &zero, &tol).unwrap().dim(), 8);
        let other = Subalgebra::zero(Parent::Algebra(su3()));
        assert_eq!(product(&full, &other, &tol).unwrap_err(), Error::ParentMismatch);
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let vs = vec![
            DVector::from_fn(8, |k, _| (k == 0) as u8 as f64),
            DVector::from_fn(8, |k, _| (k == 1) as u8 as f64),
        ];
        assert!(matches!(
            Subalgebra::from_spanning(Parent::Algebra(l), &vs, &tol),
            Err(Error::ClosureFailure { .. })
        ));
    }

    #[test]
    fn fixed_subalgebra_of_conjugation() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let sigma = make_automorphism(&l, AutomorphismSpec::OuterSu, &tol).unwrap();
        assert_eq!(fixed_subalgebra(&sigma, &tol).unwrap().dim(), 3);
    }
}
