//! Standard embeddings of the subalgebras appearing in transitive actions,
//! Hermann pairs and σ-actions.
//!
//! Block conventions: corner subalgebras act on the leading coordinates;
//! `u(m) ⊂ so(2m)` is the realification of complex matrices; `sp(m) ⊂ so(4m)`
//! acts by quaternionic matrices from the left and `sp(1)` by right
//! multiplication with imaginary quaternions; `sp(m) ⊂ su(2m)` is
//! `{[[A, -B̄], [B, Ā]]}` with `A ∈ u(m)` and `B` complex symmetric.

use std::sync::Arc;

use nalgebra::{Complex, DMatrix};

use super::{Parent, Subalgebra};
use crate::error::{Error, Result};
use crate::lie_algebras::classical::{so_basis, su_cartan_complex, su_complex_basis, u_complex_basis};
use crate::lie_algebras::realify::{
    realify_complex, realify_quaternion, right_scalar, ComplexMatrix, Q_I, Q_J, Q_K,
};
use crate::lie_algebras::{
    derivation_algebra, make_automorphism, spin_embedding, AutomorphismSpec, Family, LieAlgebra,
    MultiplicationTable,
};
use crate::numerics::ToleranceConfig;

fn family_param(l: &LieAlgebra, family: Family) -> Result<usize> {
    match l.family() {
        Some((f, n)) if f == family => Ok(n),
        _ => Err(Error::InvalidInput(format!(
            "expected a {family}(n) algebra, got {}",
            l.name()
        ))),
    }
}

fn place<T: nalgebra::Scalar + Copy>(m: &DMatrix<T>, offset: usize, n: usize, zero: T) -> DMatrix<T> {
    let mut out = DMatrix::from_element(n, n, zero);
    out.view_mut((offset, offset), m.shape()).copy_from(m);
    out
}

const CZERO: Complex<f64> = Complex { re: 0.0, im: 0.0 };

fn from_matrices(l: &Arc<LieAlgebra>, ms: &[DMatrix<f64>], tol: &ToleranceConfig) -> Result<Subalgebra> {
    Subalgebra::from_matrices(l, ms, tol)
}

/// A maximal abelian subalgebra made of diagonal (or 2x2-block) elements.
pub fn cartan(l: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let ms: Vec<DMatrix<f64>> = match l.family() {
        Some((Family::Su, n)) => su_cartan_complex(n).iter().map(realify_complex).collect(),
        Some((Family::U, n)) => {
            let mut v: Vec<_> = su_cartan_complex(n).iter().map(realify_complex).collect();
            v.push(realify_complex(&ComplexMatrix::from_diagonal_element(
                n,
                n,
                Complex::new(0.0, 1.0),
            )));
            v
        }
        Some((Family::So, n)) => (0..n / 2)
            .map(|k| {
                let mut m = DMatrix::zeros(n, n);
                m[(2 * k + 1, 2 * k)] = 1.0;
                m[(2 * k, 2 * k + 1)] = -1.0;
                m
            })
            .collect(),
        Some((Family::Sp, n)) => (0..n)
            .map(|p| {
                let mut e = vec![vec![[0.0; 4]; n]; n];
                e[p][p] = Q_I;
                realify_quaternion(&e)
            })
            .collect(),
        None => {
            return Err(Error::InvalidInput(format!(
                "no standard Cartan subalgebra for {}",
                l.name()
            )))
        }
    };
    from_matrices(l, &ms, tol)
}

/// `so(a1) ⊕ so(a2) ⊕ ...` on consecutive coordinate blocks of `so(n)`.
pub fn block_so(l: &Arc<LieAlgebra>, sizes: &[usize], tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::So)?;
    if sizes.iter().sum::<usize>() > n || sizes.contains(&0) {
        return Err(Error::InvalidInput(format!("blocks {sizes:?} do not fit in so({n})")));
    }
    let mut ms = Vec::new();
    let mut offset = 0;
    for &s in sizes {
        ms.extend(so_basis(s).iter().map(|m| place(m, offset, n, 0.0)));
        offset += s;
    }
    if ms.is_empty() {
        return Ok(Subalgebra::zero(Parent::Algebra(Arc::clone(l))));
    }
    from_matrices(l, &ms, tol)
}

pub fn corner_so(l: &Arc<LieAlgebra>, k: usize, tol: &ToleranceConfig) -> Result<Subalgebra> {
    block_so(l, &[k], tol)
}

/// `su(k)` acting on the first `k` complex coordinates of `su(n)`.
pub fn corner_su(l: &Arc<LieAlgebra>, k: usize, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::Su)?;
    if k < 2 || k > n {
        return Err(Error::InvalidInput(format!("su({k}) does not fit in su({n})")));
    }
    let ms: Vec<_> = su_complex_basis(k)
        .iter()
        .map(|m| realify_complex(&place(m, 0, n, CZERO)))
        .collect();
    from_matrices(l, &ms, tol)
}

/// `s(u(k) ⊕ u(n-k)) ⊂ su(n)`.
pub fn s_u_blocks(l: &Arc<LieAlgebra>, k: usize, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::Su)?;
    if k == 0 || k >= n {
        return Err(Error::InvalidInput(format!("s(u({k}) + u({})) is not proper", n as i64 - k as i64)));
    }
    let mut complex: Vec<ComplexMatrix> = Vec::new();
    complex.extend(su_complex_basis(k).iter().map(|m| place(m, 0, n, CZERO)));
    complex.extend(su_complex_basis(n - k).iter().map(|m| place(m, k, n, CZERO)));
    complex.push(ComplexMatrix::from_fn(n, n, |i, j| {
        if i != j {
            Complex::new(0.0, 0.0)
        } else if i < k {
            Complex::new(0.0, (n - k) as f64)
        } else {
            Complex::new(0.0, -(k as f64))
        }
    }));
    let ms: Vec<_> = complex.iter().map(realify_complex).collect();
    from_matrices(l, &ms, tol)
}

/// Real matrices `so(n) ⊂ su(n)`, the fixed points of complex conjugation.
pub fn real_form(l: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::Su)?;
    let ms: Vec<_> = so_basis(n)
        .iter()
        .map(|m| realify_complex(&m.map(|x| Complex::new(x, 0.0))))
        .collect();
    from_matrices(l, &ms, tol)
}

/// `u(m)` (or `su(m)` when `special`) inside `so(2m)`.
pub fn unitary_in_so(l: &Arc<LieAlgebra>, special: bool, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::So)?;
    if n % 2 != 0 {
        return Err(Error::InvalidInput(format!("so({n}) has no complex structure")));
    }
    let m = n / 2;
    let basis = if special { su_complex_basis(m) } else { u_complex_basis(m) };
    let ms: Vec<_> = basis.iter().map(realify_complex).collect();
    if ms.is_empty() {
        return Ok(Subalgebra::zero(Parent::Algebra(Arc::clone(l))));
    }
    from_matrices(l, &ms, tol)
}

/// `sp(m) ⊂ su(2m)` in the complex form `[[A, -B̄], [B, Ā]]`.
pub fn sp_in_su(l: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::Su)?;
    if n % 2 != 0 {
        return Err(Error::InvalidInput(format!("su({n}) does not contain sp(n/2)")));
    }
    let m = n / 2;
    let zero = Complex::new(0.0, 0.0);
    let block = |a: &ComplexMatrix, b: &ComplexMatrix| {
        ComplexMatrix::from_fn(n, n, |i, j| match (i < m, j < m) {
            (true, true) => a[(i, j)],
            (true, false) => -b[(i, j - m)].conj(),
            (false, true) => b[(i - m, j)],
            (false, false) => a[(i - m, j - m)].conj(),
        })
    };
    let zm = ComplexMatrix::from_element(m, m, zero);
    let mut complex: Vec<ComplexMatrix> = u_complex_basis(m).iter().map(|a| block(a, &zm)).collect();
    for p in 0..m {
        for q in p..m {
            for w in [Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)] {
                let mut b = zm.clone();
                b[(p, q)] = w;
                b[(q, p)] = w;
                complex.push(block(&zm, &b));
            }
        }
    }
    let ms: Vec<_> = complex.iter().map(realify_complex).collect();
    from_matrices(l, &ms, tol)
}

/// Extra factor commuting with `sp(m)` inside `so(4m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpFactor {
    None,
    U1,
    Sp1,
}

/// `sp(m)`, `sp(m) ⊕ u(1)` or `sp(m) ⊕ sp(1)` inside `so(4m)`.
pub fn sp_in_so(l: &Arc<LieAlgebra>, extra: SpFactor, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::So)?;
    if n % 4 != 0 {
        return Err(Error::InvalidInput(format!("so({n}) has no quaternionic structure")));
    }
    let m = n / 4;
    let mut ms: Vec<_> = crate::lie_algebras::classical_basis(Family::Sp, m)?;
    let right: &[_] = match extra {
        SpFactor::None => &[],
        SpFactor::U1 => &[Q_I],
        SpFactor::Sp1 => &[Q_I, Q_J, Q_K],
    };
    ms.extend(right.iter().map(|q| right_scalar(q, m)));
    from_matrices(l, &ms, tol)
}

/// Derivations of the octonions acting on the imaginary octonions `R^7`.
pub fn g2_in_so7(l: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::So)?;
    if n != 7 {
        return Err(Error::InvalidInput(format!("g2 lives in so(7), not so({n})")));
    }
    let ders = derivation_algebra(&MultiplicationTable::octonions(), tol);
    let mut ms = Vec::with_capacity(ders.len());
    for d in &ders {
        let leak = d.row(0).amax().max(d.column(0).amax());
        if leak > tol.residual_tol {
            return Err(Error::InternalConsistency {
                what: "derivation does not preserve the imaginary octonions".into(),
                residual: leak,
            });
        }
        ms.push(d.view((1, 1), (7, 7)).into_owned());
    }
    from_matrices(l, &ms, tol)
}

/// `spin(7) ⊂ so(8)` or `spin(9) ⊂ so(16)`.
pub fn spin_in_so(l: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let n = family_param(l, Family::So)?;
    let spin_n = match n {
        8 => 7,
        16 => 9,
        _ => return Err(Error::InvalidInput(format!("no spin embedding into so({n})"))),
    };
    from_matrices(l, &spin_embedding(spin_n)?.generators, tol)
}

/// Coordinate map on `so(8)` sending the corner `so(7)` isomorphically onto
/// `spin(7)` and everything else to zero.
pub fn spin7_twist(l: &Arc<LieAlgebra>, tol: &ToleranceConfig) -> Result<DMatrix<f64>> {
    let n = family_param(l, Family::So)?;
    if n != 8 {
        return Err(Error::InvalidInput("the spin(7) twist lives on so(8)".into()));
    }
    let spin = spin_embedding(7)?;
    let d = l.dim();
    let mut map = DMatrix::zeros(d, d);
    // so(8) basis is lexicographic in (i, j); corner so(7) entries have j < 7
    let mut col = 0;
    for i in 0..8 {
        for j in (i + 1)..8 {
            if j < 7 {
                let image = l.coords_checked(spin.generator(i, j), tol)?;
                map.set_column(col, &image);
            }
            col += 1;
        }
    }
    Ok(map)
}

/// Resolves a subalgebra of `l` by name.
///
/// | name            | parent     | meaning                              |
/// |-----------------|------------|--------------------------------------|
/// | `full`, `zero`  | any        | `l`, `0`                             |
/// | `cartan`        | classical  | diagonal maximal torus               |
/// | `so<k>`         | `so(n)`    | corner `so(k)`                       |
/// | `so<a>so<b>`    | `so(n)`    | block `so(a) ⊕ so(b)`                |
/// | `so<n>`         | `su(n)`    | real form                            |
/// | `su<k>`         | `su(n)`    | corner `su(k)`                       |
/// | `suxu<k>`       | `su(n)`    | `s(u(k) ⊕ u(n-k))`                   |
/// | `sp<m>`         | `su(2m)`   | complex symplectic form              |
/// | `u<m>`, `su<m>` | `so(2m)`   | complex structure                    |
/// | `sp<m>`, `sp<m>u1`, `sp<m>sp1` | `so(4m)` | quaternionic structure |
/// | `g2`            | `so(7)`    | octonion derivations                 |
/// | `spin7`/`spin9` | `so(8)`/`so(16)` | spin representation            |
/// | `fixed-outer`   | `su(n)`, `so(2m)` | fixed points of the outer automorphism |
pub fn named(l: &Arc<LieAlgebra>, name: &str, tol: &ToleranceConfig) -> Result<Subalgebra> {
    let unknown = || Error::InvalidInput(format!("unknown subalgebra '{name}' for {}", l.name()));
    let family = l.family();
    match name {
        "full" => return Subalgebra::full(Parent::Algebra(Arc::clone(l)), tol),
        "zero" => return Ok(Subalgebra::zero(Parent::Algebra(Arc::clone(l)))),
        "cartan" => return cartan(l, tol),
        "g2" => return g2_in_so7(l, tol),
        "spin7" | "spin9" => return spin_in_so(l, tol),
        "fixed-outer" => {
            let spec = match family {
                Some((Family::Su, _)) => AutomorphismSpec::OuterSu,
                Some((Family::So, _)) => AutomorphismSpec::OuterSoEven,
                _ => return Err(unknown()),
            };
            let sigma = make_automorphism(l, spec, tol)?;
            return super::fixed_subalgebra(&sigma, tol);
        }
        _ => {}
    }
    let (head, rest) = split_family_prefix(name).ok_or_else(unknown)?;
    let (k, tail) = split_number(rest).ok_or_else(unknown)?;
    match (family, head, tail) {
        (Some((Family::So, _)), "so", "") => corner_so(l, k, tol),
        (Some((Family::So, _)), "so", t) if t.starts_with("so") => {
            let (b, t2) = split_number(&t[2..]).ok_or_else(unknown)?;
            if !t2.is_empty() {
                return Err(unknown());
            }
            block_so(l, &[k, b], tol)
        }
        (Some((Family::Su, n)), "so", "") if k == n => real_form(l, tol),
        (Some((Family::Su, _)), "su", "") => corner_su(l, k, tol),
        (Some((Family::Su, _)), "suxu", "") => s_u_blocks(l, k, tol),
        (Some((Family::Su, n)), "sp", "") if 2 * k == n => sp_in_su(l, tol),
        (Some((Family::So, n)), "u", "") if 2 * k == n => unitary_in_so(l, false, tol),
        (Some((Family::So, n)), "su", "") if 2 * k == n => unitary_in_so(l, true, tol),
        (Some((Family::So, n)), "sp", t) if 4 * k == n => match t {
            "" => sp_in_so(l, SpFactor::None, tol),
            "u1" => sp_in_so(l, SpFactor::U1, tol),
            "sp1" => sp_in_so(l, SpFactor::Sp1, tol),
            _ => Err(unknown()),
        },
        _ => Err(unknown()),
    }
}

fn split_family_prefix(name: &str) -> Option<(&str, &str)> {
    ["suxu", "su", "so", "sp", "u"]
        .into_iter()
        .find(|p| name.starts_with(p) && name[p.len()..].starts_with(|c: char| c.is_ascii_digit()))
        .map(|p| (p, &name[p.len()..]))
}

fn split_number(s: &str) -> Option<(usize, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    s[..end].parse().ok().map(|k| (k, &s[end..]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebras::build_classical;

    fn alg(f: Family, n: usize) -> Arc<LieAlgebra> {
        Arc::new(build_classical(f, n).unwrap())
    }

    #[test]
    fn embedding_dimensions() {
        let tol = ToleranceConfig::default();
        let su4 = alg(Family::Su, 4);
        assert_eq!(sp_in_su(&su4, &tol).unwrap().dim(), 10);
        assert_eq!(s_u_blocks(&su4, 3, &tol).unwrap().dim(), 9);
        assert_eq!(corner_su(&su4, 3, &tol).unwrap().dim(), 8);
        let so6 = alg(Family::So, 6);
        assert_eq!(unitary_in_so(&so6, false, &tol).unwrap().dim(), 9);
        assert_eq!(unitary_in_so(&so6, true, &tol).unwrap().dim(), 8);
        let so8 = alg(Family::So, 8);
        assert_eq!(sp_in_so(&so8, SpFactor::Sp1, &tol).unwrap().dim(), 13);
        assert_eq!(sp_in_so(&so8, SpFactor::U1, &tol).unwrap().dim(), 11);
        assert_eq!(sp_in_so(&so8, SpFactor::None, &tol).unwrap().dim(), 10);
        assert_eq!(spin_in_so(&so8, &tol).unwrap().dim(), 21);
        let so7 = alg(Family::So, 7);
        assert_eq!(g2_in_so7(&so7, &tol).unwrap().dim(), 14);
        assert_eq!(block_so(&so7, &[5, 2], &tol).unwrap().dim(), 11);
    }

    #[test]
    fn names_resolve() {
        let tol = ToleranceConfig::default();
        let su3 = alg(Family::Su, 3);
        assert_eq!(named(&su3, "so3", &tol).unwrap().dim(), 3);
        assert_eq!(named(&su3, "su2", &tol).unwrap().dim(), 3);
        assert_eq!(named(&su3, "suxu2", &tol).unwrap().dim(), 4);
        assert_eq!(named(&su3, "fixed-outer", &tol).unwrap().dim(), 3);
        assert_eq!(named(&su3, "cartan", &tol).unwrap().dim(), 2);
        let so8 = alg(Family::So, 8);
        assert_eq!(named(&so8, "so5so3", &tol).unwrap().dim(), 13);
        assert_eq!(named(&so8, "sp2sp1", &tol).unwrap().dim(), 13);
        assert_eq!(named(&so8, "u4", &tol).unwrap().dim(), 16);
        assert!(named(&so8, "g2", &tol).is_err());
        assert!(named(&so8, "bogus", &tol).is_err());
        assert!(named(&so8, "so9", &tol).is_err());
    }

    #[test]
    fn spin7_twist_is_a_homomorphism() {
        let tol = ToleranceConfig::default();
        let so8 = alg(Family::So, 8);
        let map = spin7_twist(&so8, &tol).unwrap();
        let so7 = corner_so(&so8, 7, &tol).unwrap();
        for x in so7.basis() {
            for y in so7.basis() {
                let lhs = &map * so8.bracket(x, y).unwrap();
                let rhs = so8.bracket(&(&map * x), &(&map * y)).unwrap();
                assert!((lhs - rhs).norm() < 1e-10);
            }
        }
    }
}
