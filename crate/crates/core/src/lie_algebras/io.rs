//! Plain-text matrix lists used for custom algebras and subalgebras.
//!
//! ```text
//! # comments start with '#'
//! 3                 <- ambient size N
//! 0 -1 0            <- first basis matrix, N rows of N reals, row-major
//! 1  0 0
//! 0  0 0
//! ...               <- further matrices
//! ```
//!
//! Whitespace is free-form; only the token count matters. A subalgebra of
//! `l ⊕ l` is written with ambient size `2N`, each element `(X1, X2)` as the
//! block-diagonal matrix `diag(X1, X2)`.

use std::fmt::Write;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub fn parse_matrices(text: &str) -> Result<(usize, Vec<DMatrix<f64>>)> {
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for tok in content.split_whitespace() {
            tokens.push((lineno + 1, tok));
        }
    }
    let mut iter = tokens.into_iter();
    let (line, first) = iter.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file; expected ambient size".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected ambient size, found '{first}'"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line,
            message: "ambient size must be positive".into(),
        });
    }
    let mut values = Vec::new();
    let mut last_line = line;
    for (line, tok) in iter {
        let v: f64 = tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("expected a real number, found '{tok}'"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("non-finite value '{tok}'"),
            });
        }
        values.push(v);
        last_line = line;
    }
    if values.len() % (n * n) != 0 {
        return Err(Error::Parse {
            line: last_line,
            message: format!(
                "{} values do not form whole {n}x{n} matrices",
                values.len()
            ),
        });
    }
    let matrices = values
        .chunks(n * n)
        .map(|c| DMatrix::from_row_slice(n, n, c))
        .collect();
    Ok((n, matrices))
}

/// Writes matrices in the format read by [`parse_matrices`], with 17
/// significant digits so values round-trip exactly.
pub fn write_matrices(matrices: &[DMatrix<f64>]) -> String {
    let n = matrices.first().map_or(0, |m| m.nrows());
    let mut out = format!("{n}\n");
    for m in matrices {
        out.push('\n');
        for r in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|c| format!("{:.16e}", m[(r, c)])).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_layout() {
        let text = "# so(2)\n2\n0 -1\n1 0 # generator\n";
        let (n, ms) = parse_matrices(text).unwrap();
        assert_eq!(n, 2);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0][(0, 1)], -1.0);
        assert_eq!(ms[0][(1, 0)], 1.0);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_matrices(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrices("x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrices("2\n0 1 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrices("2\n0 1\nfoo 0"), Err(Error::Parse { line: 3, .. })));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_exact(vals in prop::collection::vec(-1e6f64..1e6, 18)) {
            let ms: Vec<_> = vals.chunks(9).map(|c| DMatrix::from_row_slice(3, 3, c)).collect();
            let (n, back) = parse_matrices(&write_matrices(&ms)).unwrap();
            prop_assert_eq!(n, 3);
            prop_assert_eq!(back, ms);
        }
    }
}
