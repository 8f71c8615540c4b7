use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use super::realify::{realify_complex, realify_quaternion, ComplexMatrix, Quaternion};
use super::realify::{Q_I, Q_J, Q_K, Q_ONE};
use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::numerics::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Su,
    So,
    Sp,
    U,
}

impl Family {
    pub fn expected_dim(self, n: usize) -> usize {
        match self {
            Family::Su => n * n - 1,
            Family::So => n * (n - 1) / 2,
            Family::Sp => n * (2 * n + 1),
            Family::U => n * n,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::Su | Family::So => 2,
            Family::Sp | Family::U => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Su => "su",
            Family::So => "so",
            Family::Sp => "sp",
            Family::U => "u",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su" => Ok(Family::Su),
            "so" => Ok(Family::So),
            "sp" => Ok(Family::Sp),
            "u" => Ok(Family::U),
            other => Err(Error::InvalidInput(format!("unknown family '{other}'"))),
        }
    }
}

fn cunit(n: usize, i: usize, j: usize, z: Complex<f64>) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(i, j)] = z;
    m
}

/// `E_ji - E_ij` for `i < j`, in lexicographic order of `(i, j)`.
pub(crate) fn so_basis(n: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = DMatrix::zeros(n, n);
            m[(j, i)] = 1.0;
            m[(i, j)] = -1.0;
            out.push(m);
        }
    }
    out
}

/// Diagonal Cartan elements `i * diag(1,..,1,-k,0,..)`, scaled so the
/// realified form gives them norm^2 4.
pub(crate) fn su_cartan_complex(n: usize) -> Vec<ComplexMatrix> {
    (1..n)
        .map(|k| {
            let s = (2.0 / (k * (k + 1)) as f64).sqrt();
            let mut m = ComplexMatrix::zeros(n, n);
            for l in 0..k {
                m[(l, l)] = Complex::new(0.0, s);
            }
            m[(k, k)] = Complex::new(0.0, -(k as f64) * s);
            m
        })
        .collect()
}

/// Complex anti-Hermitian traceless basis: for each `p < q` the real and
/// imaginary off-diagonal generators, then the diagonal Cartan elements.
pub(crate) fn su_complex_basis(n: usize) -> Vec<ComplexMatrix> {
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    let mut out = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            out.push(cunit(n, p, q, one) - cunit(n, q, p, one));
            out.push(cunit(n, p, q, i) + cunit(n, q, p, i));
        }
    }
    out.extend(su_cartan_complex(n));
    out
}

pub(crate) fn u_complex_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = su_complex_basis(n);
    let s = (2.0 / n as f64).sqrt();
    out.push(ComplexMatrix::from_diagonal_element(n, n, Complex::new(0.0, s)));
    out
}

/// Quaternionic anti-Hermitian basis of `sp(n)`.
pub(crate) fn sp_quaternion_entries(n: usize) -> Vec<Vec<Vec<Quaternion>>> {
    let zero = [0.0; 4];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let scale = |q: Quaternion, c: f64| q.map(|x| x * c);
    let mut out = Vec::new();
    for p in 0..n {
        for u in [Q_I, Q_J, Q_K] {
            let mut m = vec![vec![zero; n]; n];
            m[p][p] = u;
            out.push(m);
        }
    }
    for p in 0..n {
        for q in (p + 1)..n {
            for u in [Q_ONE, Q_I, Q_J, Q_K] {
                let mut m = vec![vec![zero; n]; n];
                m[p][q] = scale(u, s);
                // -conj(u): -1 for the real unit, u itself for imaginary units
                m[q][p] = if u == Q_ONE { scale(u, -s) } else { scale(u, s) };
                out.push(m);
            }
        }
    }
    out
}

/// Realified basis matrices of a classical family in its defining
/// representation: `so(n)` on `R^n`, `su(n)`/`u(n)` on `R^2n`, `sp(n)` on `R^4n`.
pub fn classical_basis(family: Family, n: usize) -> Result<Vec<DMatrix<f64>>> {
    if n < family.min_n() {
        return Err(Error::InvalidInput(format!(
            "{family}({n}) is not supported; need n >= {}",
            family.min_n()
        )));
    }
    Ok(match family {
        Family::So => so_basis(n),
        Family::Su => su_complex_basis(n).iter().map(realify_complex).collect(),
        Family::U => u_complex_basis(n).iter().map(realify_complex).collect(),
        Family::Sp => sp_quaternion_entries(n)
            .iter()
            .map(|m| realify_quaternion(m))
            .collect(),
    })
}

/// Builds `su(n)`, `so(n)`, `sp(n)` or `u(n)` with its standard basis.
pub fn build_classical(family: Family, n: usize) -> Result<LieAlgebra> {
    let basis = classical_basis(family, n)?;
    let algebra = LieAlgebra::from_basis(format!("{family}({n})"), basis, &ToleranceConfig::default())?;
    debug_assert_eq!(algebra.dim(), family.expected_dim(n));
    Ok(algebra.with_family(family, n))
}
