//! Transitive actions `H₁ × H₂` on simple `L`, at the Lie algebra level.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::action::is_transitive;
use crate::error::{Error, Result};
use crate::lie_algebras::{build_classical, Family, LieAlgebra};
use crate::numerics::{rank_of, ToleranceConfig};
use crate::subalgebras::embeddings;
use crate::subalgebras::Subalgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table1Row {
    /// `sp(n)`, `su(2n)`, `s(u(2n−1) ⊕ u(1))`
    SpSuSuxu,
    /// `sp(n)`, `su(2n)`, `su(2n−1)`
    SpSuSu,
    /// `so(2n−1)`, `so(2n)`, `u(n)`
    SoSoU,
    /// `so(2n−1)`, `so(2n)`, `su(n)`
    SoSoSu,
    /// `so(4n−1)`, `so(4n)`, `sp(n) ⊕ sp(1)`
    SoSoSpSp,
    /// `so(4n−1)`, `so(4n)`, `sp(n) ⊕ u(1)`
    SoSoSpU,
    /// `so(4n−1)`, `so(4n)`, `sp(n)`
    SoSoSp,
    /// `g₂`, `so(7)`, `so(6)`
    G2So6,
    /// `g₂`, `so(7)`, `so(5) ⊕ so(2)`
    G2So5So2,
    /// `g₂`, `so(7)`, `so(5)`
    G2So5,
    /// `spin(7)`, `so(8)`, `so(7)`
    Spin7,
    /// `spin(9)`, `so(16)`, `so(15)`
    Spin9,
}

impl Table1Row {
    pub const ALL: [Table1Row; 12] = [
        Table1Row::SpSuSuxu,
        Table1Row::SpSuSu,
        Table1Row::SoSoU,
        Table1Row::SoSoSu,
        Table1Row::SoSoSpSp,
        Table1Row::SoSoSpU,
        Table1Row::SoSoSp,
        Table1Row::G2So6,
        Table1Row::G2So5So2,
        Table1Row::G2So5,
        Table1Row::Spin7,
        Table1Row::Spin9,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Table1Row::SpSuSuxu => "sp-su-suxu",
            Table1Row::SpSuSu => "sp-su-su",
            Table1Row::SoSoU => "so-so-u",
            Table1Row::SoSoSu => "so-so-su",
            Table1Row::SoSoSpSp => "so-so-spsp",
            Table1Row::SoSoSpU => "so-so-spu",
            Table1Row::SoSoSp => "so-so-sp",
            Table1Row::G2So6 => "g2-so7-so6",
            Table1Row::G2So5So2 => "g2-so7-so5so2",
            Table1Row::G2So5 => "g2-so7-so5",
            Table1Row::Spin7 => "spin7-so8",
            Table1Row::Spin9 => "spin9-so16",
        }
    }

    /// Smallest legal parameter, or `None` for rows without one.
    pub fn min_param(self) -> Option<usize> {
        match self {
            Table1Row::SpSuSuxu | Table1Row::SpSuSu => Some(2),
            Table1Row::SoSoU | Table1Row::SoSoSu => Some(3),
            Table1Row::SoSoSpSp | Table1Row::SoSoSpU | Table1Row::SoSoSp => Some(2),
            _ => None,
        }
    }

    /// `(L, H₁, H₂)`; `n` must be `None` for unparameterized rows.
    pub fn build(
        self,
        n: Option<usize>,
        form_scale: f64,
        tol: &ToleranceConfig,
    ) -> Result<(Arc<LieAlgebra>, Subalgebra, Subalgebra)> {
        let n = match (self.min_param(), n) {
            (Some(min), None) => min,
            (Some(min), Some(n)) if n >= min => n,
            (Some(min), Some(n)) => {
                return Err(Error::InvalidInput(format!(
                    "row {} needs n >= {min}, got {n}",
                    self.id()
                )))
            }
            (None, None) => 0,
            (None, Some(n)) => {
                return Err(Error::InvalidInput(format!(
                    "row {} takes no parameter, got {n}",
                    self.id()
                )))
            }
        };
        let make = |f: Family, m: usize| -> Result<Arc<LieAlgebra>> {
            let l = build_classical(f, m)?;
            Ok(Arc::new(if form_scale == 1.0 { l } else { l.with_form_scale(form_scale)? }))
        };
        use embeddings::*;
        let (l, h1, h2) = match self {
            Table1Row::SpSuSuxu | Table1Row::SpSuSu => {
                let l = make(Family::Su, 2 * n)?;
                let h1 = sp_in_su(&l, tol)?;
                let h2 = if self == Table1Row::SpSuSuxu {
                    s_u_blocks(&l, 2 * n - 1, tol)?
                } else {
                    corner_su(&l, 2 * n - 1, tol)?
                };
                (l, h1, h2)
            }
            Table1Row::SoSoU | Table1Row::SoSoSu => {
                let l = make(Family::So, 2 * n)?;
                let h1 = corner_so(&l, 2 * n - 1, tol)?;
                let h2 = unitary_in_so(&l, self == Table1Row::SoSoSu, tol)?;
                (l, h1, h2)
            }
            Table1Row::SoSoSpSp | Table1Row::SoSoSpU | Table1Row::SoSoSp => {
                let l = make(Family::So, 4 * n)?;
                let h1 = corner_so(&l, 4 * n - 1, tol)?;
                let extra = match self {
                    Table1Row::SoSoSpSp => SpFactor::Sp1,
                    Table1Row::SoSoSpU => SpFactor::U1,
                    _ => SpFactor::None,
                };
                (Arc::clone(&l), h1, sp_in_so(&l, extra, tol)?)
            }
            Table1Row::G2So6 | Table1Row::G2So5So2 | Table1Row::G2So5 => {
                let l = make(Family::So, 7)?;
                let h1 = g2_in_so7(&l, tol)?;
                let blocks: &[usize] = match self {
                    Table1Row::G2So6 => &[6],
                    Table1Row::G2So5So2 => &[5, 2],
                    _ => &[5],
                };
                let h2 = block_so(&l, blocks, tol)?;
                (l, h1, h2)
            }
            Table1Row::Spin7 | Table1Row::Spin9 => {
                let m = if self == Table1Row::Spin7 { 8 } else { 16 };
                let l = make(Family::So, m)?;
                let h1 = spin_in_so(&l, tol)?;
                let h2 = corner_so(&l, m - 1, tol)?;
                (l, h1, h2)
            }
        };
        Ok((l, h1, h2))
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Table1Row {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Table1Row::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown row '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Record {
    pub row: Table1Row,
    pub param: Option<usize>,
    pub algebra: String,
    pub dim_l: usize,
    pub dim_h1: usize,
    pub dim_h2: usize,
    pub span_rank: usize,
    pub transitive: bool,
}

pub fn verify_table1(row: Table1Row, n: Option<usize>, tol: &ToleranceConfig) -> Result<Table1Record> {
    let (l, h1, h2) = row.build(n, 1.0, tol)?;
    let union: Vec<_> = h1.basis().iter().chain(h2.basis()).cloned().collect();
    Ok(Table1Record {
        row,
        param: row.min_param().map(|m| n.unwrap_or(m)),
        algebra: l.name().to_string(),
        dim_l: l.dim(),
        dim_h1: h1.dim(),
        dim_h2: h2.dim(),
        span_rank: rank_of(&union, tol)?,
        transitive: is_transitive(&h1, &h2, tol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_ids_round_trip() {
        for r in Table1Row::ALL {
            assert_eq!(r.id().parse::<Table1Row>().unwrap(), r);
        }
        assert!("nope".parse::<Table1Row>().is_err());
    }

    #[test]
    fn first_row_dimensions() {
        let tol = ToleranceConfig::default();
        let rec = verify_table1(Table1Row::SpSuSuxu, Some(2), &tol).unwrap();
        assert_eq!((rec.dim_l, rec.dim_h1, rec.dim_h2, rec.span_rank), (15, 10, 9, 15));
        assert!(rec.transitive);
    }

    #[test]
    fn illegal_parameters() {
        let tol = ToleranceConfig::default();
        assert!(verify_table1(Table1Row::SoSoU, Some(2), &tol).is_err());
        assert!(verify_table1(Table1Row::Spin7, Some(3), &tol).is_err());
    }
}
