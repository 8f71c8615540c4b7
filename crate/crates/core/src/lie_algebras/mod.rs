//! Compact matrix Lie algebras.
//!
//! Every algebra is a span of real skew-symmetric `n x n` matrices. Complex
//! and quaternionic families are realified once, with the conventions in
//! [`realify`], so that all brackets and forms are computed in one real
//! ambient representation. The invariant inner product is
//! `<X, Y> = -tr(XY)` on that representation, optionally multiplied by a
//! positive constant.

mod automorphism;
pub(crate) mod classical;
pub mod clifford;
pub mod io;
pub mod octonion;
pub mod realify;

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numerics::{matrix_rank, InnerProduct, ToleranceConfig};

pub use automorphism::{make_automorphism, Automorphism, AutomorphismKind, AutomorphismSpec};
pub use classical::{build_classical, classical_basis, Family};
pub use clifford::{gamma_matrices, spin_embedding, GammaMatrices, SpinEmbedding};
pub use octonion::{derivation_algebra, MultiplicationTable};

/// Structure constants `c[i][j][k]` with `[b_i, b_j] = sum_k c[i][j][k] b_k`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    dense: Vec<f64>,
    // Nonzero entries of each (i, j) slice, and all of them as one list.
    sparse: Vec<Vec<(usize, f64)>>,
    entries: Vec<(usize, usize, usize, f64)>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.dense[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    fn slice(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.len()
    }
}

/// Residuals of the defining identities of a compact Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraHealth {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub ad_invariance: f64,
    pub form_min_eigenvalue: f64,
    /// `c` in `B = -c * form`, fitted by least squares.
    pub killing_scale: f64,
    pub killing_residual: f64,
    /// Whether the algebra is known to be simple; only then must the
    /// Killing form be proportional to the invariant form.
    pub simple: bool,
}

impl AlgebraHealth {
    pub fn is_healthy(&self, tol: &ToleranceConfig) -> bool {
        self.antisymmetry < tol.residual_tol
            && self.jacobi < tol.residual_tol
            && self.ad_invariance < tol.residual_tol
            && self.form_min_eigenvalue > 0.0
            && (!self.simple || (self.killing_residual < tol.residual_tol && self.killing_scale > 0.0))
    }
}

#[derive(Clone)]
pub struct LieAlgebra {
    name: String,
    family: Option<(Family, usize)>,
    ambient_size: usize,
    basis: Vec<DMatrix<f64>>,
    // n^2 x dim, column k is vec(b_k)
    flat: DMatrix<f64>,
    // dim x n^2, least-squares coordinates in the Frobenius sense
    coord_map: DMatrix<f64>,
    form: InnerProduct,
    form_scale: f64,
    structure: StructureConstants,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("ambient_size", &self.ambient_size)
            .field("form_scale", &self.form_scale)
            .finish()
    }
}

impl LieAlgebra {
    /// Builds an algebra from a basis of skew-symmetric matrices, rejecting
    /// inputs that are not skew, not independent, or not bracket-closed.
    pub fn from_basis(
        name: impl Into<String>,
        basis: Vec<DMatrix<f64>>,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        tol.validate()?;
        let Some(first) = basis.first() else {
            return Err(Error::InvalidInput("an algebra needs at least one basis element".into()));
        };
        let n = first.nrows();
        if n == 0 {
            return Err(Error::InvalidInput("ambient size must be positive".into()));
        }
        for b in &basis {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.nrows().max(b.ncols()),
                });
            }
            let scale = b.amax();
            if scale == 0.0 {
                return Err(Error::InvalidInput("zero matrix in basis".into()));
            }
            let residual = (b + b.transpose()).amax() / scale;
            if residual > tol.residual_tol {
                return Err(Error::NotSkew { residual });
            }
        }
        let dim = basis.len();
        let flat = DMatrix::from_fn(n * n, dim, |r, k| basis[k].as_slice()[r]);
        if matrix_rank(&flat, tol) < dim {
            return Err(Error::InvalidInput("basis matrices are linearly dependent".into()));
        }
        let frobenius = flat.transpose() * &flat;
        let coord_map = frobenius
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidForm("Frobenius Gram matrix is singular".into()))?
            .solve(&flat.transpose());
        let form = InnerProduct::new(frobenius)?;
        let structure = compute_structure_constants(&basis, &flat, &coord_map, tol)?;
        Ok(Self {
            name: name.into(),
            family: None,
            ambient_size: n,
            basis,
            flat,
            coord_map,
            form,
            form_scale: 1.0,
            structure,
        })
    }

    pub(crate) fn with_family(mut self, family: Family, n: usize) -> Self {
        self.family = Some((family, n));
        self
    }

    /// Same algebra with the invariant form multiplied by `c > 0`.
    pub fn with_form_scale(&self, c: f64) -> Result<Self> {
        let mut out = self.clone();
        out.form = self.form.scaled(c)?;
        out.form_scale = self.form_scale * c;
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Option<(Family, usize)> {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    /// Gram matrix of the invariant form on the basis.
    pub fn form(&self) -> &InnerProduct {
        &self.form
    }

    pub fn form_scale(&self) -> f64 {
        self.form_scale
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn to_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.ambient_size;
        DMatrix::from_column_slice(n, n, (&self.flat * x).as_slice())
    }

    /// Least-squares coordinates of `m` and the relative residual of the fit.
    pub fn coords(&self, m: &DMatrix<f64>) -> Result<(DVector<f64>, f64)> {
        let n = self.ambient_size;
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.nrows().max(m.ncols()),
            });
        }
        let v = DVector::from_column_slice(m.as_slice());
        let c = &self.coord_map * &v;
        let residual = (&v - &self.flat * &c).norm();
        let scale = v.norm();
        Ok((c, if scale > 0.0 { residual / scale } else { residual }))
    }

    /// Coordinates of `m`, failing if `m` is not in the algebra.
    pub fn coords_checked(&self, m: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<DVector<f64>> {
        let (c, residual) = self.coords(m)?;
        if residual > tol.residual_tol {
            return Err(Error::NotInAlgebra { residual });
        }
        Ok(c)
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for &(i, j, k, c) in &self.structure.entries {
            out[k] += c * x[i] * y[j];
        }
        out
    }

    /// Matrix of `ad(x)` on coordinates: column `j` is `[x, b_j]`.
    pub fn ad_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut out = DMatrix::zeros(d, d);
        for &(i, j, k, c) in &self.structure.entries {
            out[(k, j)] += c * x[i];
        }
        out
    }

    /// Bracket computed as a matrix commutator in the ambient representation.
    pub fn matrix_bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let (a, b) = (self.to_matrix(x), self.to_matrix(y));
        self.coords(&(&a * &b - &b * &a)).expect("ambient shapes agree").0
    }

    pub fn exp(&self, x: &DVector<f64>) -> DMatrix<f64> {
        self.to_matrix(x).exp()
    }

    /// How far `g` is from being an orthogonal matrix normalizing the algebra.
    pub fn group_membership_residual(&self, g: &DMatrix<f64>) -> Result<f64> {
        let n = self.ambient_size;
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.nrows().max(g.ncols()),
            });
        }
        let orth = (g.transpose() * g - DMatrix::<f64>::identity(n, n)).amax();
        let mut worst = orth;
        for b in &self.basis {
            let (_, r) = self.coords(&(g * b * g.transpose()))?;
            worst = worst.max(r);
        }
        Ok(worst)
    }

    /// Coordinate matrix of `Ad(g): X -> g X g^{-1}` for an orthogonal `g`
    /// normalizing the algebra.
    pub fn adjoint_matrix(&self, g: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<DMatrix<f64>> {
        let n = self.ambient_size;
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.nrows().max(g.ncols()),
            });
        }
        let orth = (g.transpose() * g - DMatrix::<f64>::identity(n, n)).amax();
        if orth > tol.residual_tol {
            return Err(Error::NotInGroup { residual: orth });
        }
        let d = self.dim();
        let gt = g.transpose();
        let mut out = DMatrix::zeros(d, d);
        let mut worst = 0.0f64;
        for (j, b) in self.basis.iter().enumerate() {
            let (c, r) = self.coords(&(g * b * &gt))?;
            worst = worst.max(r);
            out.set_column(j, &c);
        }
        if worst > tol.residual_tol {
            return Err(Error::NotInGroup { residual: worst });
        }
        Ok(out)
    }

    /// `B(b_i, b_j) = tr(ad b_i ad b_j)`.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let d = self.dim();
        let sc = &self.structure;
        let mut out = DMatrix::zeros(d, d);
        // (ad b_i)_{k m} = c[i][m][k], so tr(ad_i ad_j) = sum_{m,k} c[i][m][k] c[j][k][m]
        for i in 0..d {
            for m in 0..d {
                for &(k, v) in sc.slice(i, m) {
                    for j in 0..d {
                        let w = sc.get(j, k, m);
                        if w != 0.0 {
                            out[(i, j)] += v * w;
                        }
                    }
                }
            }
        }
        out
    }

    /// Fits `B = -c * form` and returns `(c, max entrywise residual)`.
    pub fn killing_proportionality(&self) -> (f64, f64) {
        let killing = self.killing_form();
        let g = self.form.gram();
        let c = -killing.dot(g) / g.dot(g);
        (c, (killing + g * c).amax())
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    let r = (self.structure.get(i, j, k) + self.structure.get(j, i, k)).abs();
                    worst = worst.max(r);
                }
            }
        }
        worst
    }

    /// Largest norm of the Jacobiator over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim();
        let sc = &self.structure;
        let mut acc = DVector::<f64>::zeros(d);
        let mut touched = Vec::new();
        let mut worst = 0.0f64;
        let add = |acc: &mut DVector<f64>, touched: &mut Vec<usize>, a, b, c| {
            for &(m, v) in sc.slice(a, b) {
                for &(n, w) in sc.slice(m, c) {
                    acc[n] += v * w;
                    touched.push(n);
                }
            }
        };
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    add(&mut acc, &mut touched, i, j, k);
                    add(&mut acc, &mut touched, j, k, i);
                    add(&mut acc, &mut touched, k, i, j);
                    if !touched.is_empty() {
                        worst = worst.max(self.form.norm(&acc));
                        for &n in &touched {
                            acc[n] = 0.0;
                        }
                        touched.clear();
                    }
                }
            }
        }
        worst
    }

    /// `max |<[b_i, b_j], b_k> + <b_j, [b_i, b_k]>|` over basis triples.
    pub fn ad_invariance_residual(&self) -> f64 {
        let d = self.dim();
        let g = self.form.gram();
        // t[(i*d + j)*d + k] = <[b_i, b_j], b_k>
        let mut t = vec![0.0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let base = (i * d + j) * d;
                for &(m, v) in self.structure.slice(i, j) {
                    for k in 0..d {
                        t[base + k] += v * g[(m, k)];
                    }
                }
            }
        }
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let r = t[(i * d + j) * d + k] + t[(i * d + k) * d + j];
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }

    pub fn health(&self) -> AlgebraHealth {
        let (killing_scale, killing_residual) = self.killing_proportionality();
        let form_min_eigenvalue = self.form.gram().clone().symmetric_eigenvalues().min();
        AlgebraHealth {
            antisymmetry: self.antisymmetry_residual(),
            jacobi: self.jacobi_residual(),
            ad_invariance: self.ad_invariance_residual(),
            form_min_eigenvalue,
            killing_scale,
            killing_residual,
            simple: self.is_simple(),
        }
    }

    /// True for the classical families in their simple range; custom
    /// algebras are not classified.
    pub fn is_simple(&self) -> bool {
        matches!(
            self.family,
            Some((Family::Su, n)) if n >= 2
        ) || matches!(self.family, Some((Family::So, n)) if n >= 3 && n != 4)
            || matches!(self.family, Some((Family::Sp, n)) if n >= 1)
    }
}

fn compute_structure_constants(
    basis: &[DMatrix<f64>],
    flat: &DMatrix<f64>,
    coord_map: &DMatrix<f64>,
    tol: &ToleranceConfig,
) -> Result<StructureConstants> {
    let d = basis.len();
    let n2 = flat.nrows();
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
        .collect();
    let mut commutators = DMatrix::zeros(n2, pairs.len());
    let mut scales = Vec::with_capacity(pairs.len());
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let (a, b) = (&basis[i], &basis[j]);
        let c = a * b - b * a;
        commutators.column_mut(p).copy_from_slice(c.as_slice());
        scales.push(a.norm() * b.norm());
    }
    let coeffs = coord_map * &commutators;
    let residuals = &commutators - flat * &coeffs;
    let mut worst = 0.0f64;
    for (p, s) in scales.iter().enumerate() {
        worst = worst.max(residuals.column(p).norm() / s);
    }
    if worst > tol.residual_tol {
        return Err(Error::ClosureFailure { residual: worst });
    }

    let cutoff = 1e-13 * coeffs.amax();
    let mut dense = vec![0.0; d * d * d];
    let mut sparse = vec![Vec::new(); d * d];
    let mut entries = Vec::new();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..d {
            let v = coeffs[(k, p)];
            if v.abs() <= cutoff {
                continue;
            }
            dense[(i * d + j) * d + k] = v;
            dense[(j * d + i) * d + k] = -v;
            sparse[i * d + j].push((k, v));
            sparse[j * d + i].push((k, -v));
            entries.push((i, j, k, v));
            entries.push((j, i, k, -v));
        }
    }
    Ok(StructureConstants {
        dim: d,
        dense,
        sparse,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_vector(d: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(d, |k, _| (k == i) as u8 as f64)
    }

    #[test]
    fn so3_defining_relations() {
        let so3 = build_classical(Family::So, 3).unwrap();
        let e = |i| basis_vector(3, i);
        let b12 = so3.bracket(&e(0), &e(1)).unwrap();
        assert!((b12 - e(2)).norm() < 1e-12);
        let b23 = so3.bracket(&e(1), &e(2)).unwrap();
        assert!((b23 - e(0)).norm() < 1e-12);
    }

    #[test]
    fn self_bracket_vanishes() {
        let su3 = build_classical(Family::Su, 3).unwrap();
        let x = DVector::from_fn(8, |i, _| (i as f64 * 0.37).sin());
        assert!(su3.bracket(&x, &x).unwrap().norm() < 1e-12);
    }

    #[test]
    fn su2_jacobi_on_basis() {
        let su2 = build_classical(Family::Su, 2).unwrap();
        let e = |i| basis_vector(3, i);
        let br = |x: &DVector<f64>, y: &DVector<f64>| su2.bracket(x, y).unwrap();
        let j = br(&e(0), &br(&e(1), &e(2)))
            + br(&e(1), &br(&e(2), &e(0)))
            + br(&e(2), &br(&e(0), &e(1)));
        assert!(j.norm() < 1e-12);
    }

    #[test]
    fn bracket_matches_commutator() {
        let sp2 = build_classical(Family::Sp, 2).unwrap();
        let x = DVector::from_fn(10, |i, _| (i as f64 + 0.5).cos());
        let y = DVector::from_fn(10, |i, _| (2.0 * i as f64).sin());
        let a = sp2.bracket(&x, &y).unwrap();
        let b = sp2.matrix_bracket(&x, &y);
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let so3 = build_classical(Family::So, 3).unwrap();
        let err = so3
            .bracket(&DVector::zeros(3), &DVector::zeros(4))
            .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn from_basis_rejects_bad_inputs() {
        let tol = ToleranceConfig::default();
        let sym = DMatrix::from_row_slice(2, 2, &[0., 1., 1., 0.]);
        assert!(matches!(
            LieAlgebra::from_basis("x", vec![sym], &tol),
            Err(Error::NotSkew { .. })
        ));
        // two elements of so(3) whose span is not closed
        let so3 = build_classical(Family::So, 3).unwrap();
        let open = vec![so3.basis()[0].clone(), so3.basis()[1].clone()];
        assert!(matches!(
            LieAlgebra::from_basis("x", open, &tol),
            Err(Error::ClosureFailure { .. })
        ));
        let dup = vec![so3.basis()[0].clone(), so3.basis()[0].clone() * 2.0];
        assert!(matches!(
            LieAlgebra::from_basis("x", dup, &tol),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn killing_form_of_so_n() {
        // B(X, Y) = (n - 2) tr(XY) on so(n)
        let so5 = build_classical(Family::So, 5).unwrap();
        let (c, r) = so5.killing_proportionality();
        assert!((c - 3.0).abs() < 1e-12);
        assert!(r < 1e-12);
    }

    #[test]
    fn form_scaling_rescales_killing_ratio() {
        let su3 = build_classical(Family::Su, 3).unwrap();
        let scaled = su3.with_form_scale(3.0).unwrap();
        let (c0, _) = su3.killing_proportionality();
        let (c1, r1) = scaled.killing_proportionality();
        assert!((c0 - 3.0 * c1).abs() < 1e-12);
        assert!(r1 < 1e-12);
        assert!(su3.with_form_scale(-1.0).is_err());
    }
}
