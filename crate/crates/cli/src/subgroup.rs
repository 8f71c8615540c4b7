//! The subgroup mini-language.
//!
//! ```text
//! expr  := ident [ "(" key "=" expr { "," key "=" expr } ")" ]
//! ```
//!
//! Top level (a subalgebra of l ⊕ l):
//! `delta(sigma=id|outer[,on=<sub>])`, `product(h1=<sub>,h2=<sub>)`,
//! `span(file=<path>)` with block-diagonal pairs of size 2N, or N×N
//! matrices `X` standing for `(X, X)`.
//!
//! `<sub>` (a subalgebra of l): `full`, `zero`, `cartan`, `so3`, `su2`,
//! `suxu2`, `u3`, `sp2`, `sp2sp1`, `sp2u1`, `so5so2`, `g2`, `spin7`, `spin9`,
//! `fixed(sigma=id|outer)`, `span(file=<path>)` with N×N matrices.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use polarcheck_core::lie_algebras::io::parse_matrices;
use polarcheck_core::lie_algebras::{make_automorphism, Automorphism, AutomorphismSpec, Family, LieAlgebra};
use polarcheck_core::subalgebras::{diagonal_sigma, embeddings, fixed_subalgebra, graph, product, Parent, Subalgebra};
use polarcheck_core::{Error, ToleranceConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub name: String,
    pub args: Vec<(String, Expr)>,
}

impl Expr {
    fn arg(&self, key: &str) -> Option<&Expr> {
        self.args.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, (k, v)) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{k}={v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A rejected subgroup expression; `token` is the offending piece of input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub token: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at '{}')", self.message, self.token)
    }
}

fn spec_err(token: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError {
        token: token.into(),
        message: message.into(),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        let r = &self.src[self.pos..];
        if r.is_empty() {
            "<end of input>"
        } else {
            r
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(spec_err(self.rest(), format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| matches!(c, '(' | ')' | ',' | '=') || c.is_whitespace())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(spec_err(self.rest(), "expected a name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn expr(&mut self) -> Result<Expr, SpecError> {
        let name = self.ident()?.to_string();
        let mut args = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                let key = self.ident()?.to_string();
                self.expect('=')?;
                let value = self.expr()?;
                if args.iter().any(|(k, _)| k == &key) {
                    return Err(spec_err(key, "duplicate argument"));
                }
                args.push((key, value));
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(spec_err(self.rest(), "expected ',' or ')'")),
                }
            }
        }
        Ok(Expr { name, args })
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, SpecError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(spec_err(p.rest(), "trailing input"));
    }
    Ok(e)
}

/// Failure while turning an expression into a subalgebra.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolveError {
    Spec(SpecError),
    Core(Error),
}

impl From<SpecError> for ResolveError {
    fn from(e: SpecError) -> Self {
        ResolveError::Spec(e)
    }
}

impl From<Error> for ResolveError {
    fn from(e: Error) -> Self {
        ResolveError::Core(e)
    }
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::Spec(e) => e.fmt(f),
            ResolveError::Core(e) => e.fmt(f),
        }
    }
}

type Resolved<T> = Result<T, ResolveError>;

fn check_keys(e: &Expr, allowed: &[&str]) -> Result<(), SpecError> {
    for (k, _) in &e.args {
        if !allowed.contains(&k.as_str()) {
            return Err(spec_err(k.clone(), format!("unknown argument of {}", e.name)));
        }
    }
    Ok(())
}

fn required<'e>(e: &'e Expr, key: &str) -> Result<&'e Expr, SpecError> {
    e.arg(key)
        .ok_or_else(|| spec_err(e.to_string(), format!("{} needs {key}=...", e.name)))
}

fn leaf_value<'e>(e: &'e Expr, key: &str) -> Result<&'e str, SpecError> {
    let v = required(e, key)?;
    if !v.args.is_empty() {
        return Err(spec_err(v.to_string(), format!("{key} takes a plain value")));
    }
    Ok(&v.name)
}

fn automorphism(l: &Arc<LieAlgebra>, e: &Expr, tol: &ToleranceConfig) -> Resolved<Automorphism> {
    match leaf_value(e, "sigma")? {
        "id" => Ok(Automorphism::identity(l)),
        "outer" => {
            let spec = match l.family() {
                Some((Family::Su, _)) => AutomorphismSpec::OuterSu,
                Some((Family::So, n)) if n % 2 == 0 => AutomorphismSpec::OuterSoEven,
                _ => {
                    return Err(spec_err("outer", format!("no outer automorphism implemented for {}", l.name())).into())
                }
            };
            Ok(make_automorphism(l, spec, tol)?)
        }
        other => Err(spec_err(other, "sigma must be id or outer").into()),
    }
}

fn read_file(e: &Expr) -> Resolved<(usize, Vec<DMatrix<f64>>)> {
    let path = leaf_value(e, "file")?;
    let text = std::fs::read_to_string(path)
        .map_err(|err| spec_err(path, format!("cannot read file: {err}")))?;
    Ok(parse_matrices(&text)?)
}

/// Resolves `<sub>`, a subalgebra of `l`.
pub fn resolve_sub(l: &Arc<LieAlgebra>, e: &Expr, tol: &ToleranceConfig) -> Resolved<Subalgebra> {
    match e.name.as_str() {
        "fixed" => {
            check_keys(e, &["sigma"])?;
            let sigma = automorphism(l, e, tol)?;
            Ok(fixed_subalgebra(&sigma, tol)?)
        }
        "span" => {
            check_keys(e, &["file"])?;
            let (n, ms) = read_file(e)?;
            if n != l.ambient_size() {
                return Err(spec_err(
                    leaf_value(e, "file")?,
                    format!("matrices are {n}x{n}, expected {0}x{0}", l.ambient_size()),
                )
                .into());
            }
            Ok(Subalgebra::from_matrices(l, &ms, tol)?)
        }
        name if e.args.is_empty() => embeddings::named(l, name, tol).map_err(|err| match err {
            Error::InvalidInput(msg) => spec_err(name, msg).into(),
            other => other.into(),
        }),
        _ => Err(spec_err(e.to_string(), "unexpected arguments").into()),
    }
}

/// Resolves a top-level expression to a subalgebra of `l ⊕ l`.
pub fn resolve(l: &Arc<LieAlgebra>, e: &Expr, tol: &ToleranceConfig) -> Resolved<Subalgebra> {
    match e.name.as_str() {
        "delta" => {
            check_keys(e, &["sigma", "on"])?;
            let sigma = automorphism(l, e, tol)?;
            match e.arg("on") {
                None => Ok(diagonal_sigma(l, &sigma, tol)?),
                Some(on) => {
                    let h = resolve_sub(l, on, tol)?;
                    Ok(graph(&h, sigma.matrix(), tol)?)
                }
            }
        }
        "product" => {
            check_keys(e, &["h1", "h2"])?;
            let h1 = resolve_sub(l, required(e, "h1")?, tol)?;
            let h2 = resolve_sub(l, required(e, "h2")?, tol)?;
            Ok(product(&h1, &h2, tol)?)
        }
        "span" => {
            check_keys(e, &["file"])?;
            let (n, ms) = read_file(e)?;
            let m = l.ambient_size();
            let pairs: Vec<_> = if n == m {
                ms.iter().map(|x| (x.clone(), x.clone())).collect()
            } else if n == 2 * m {
                let mut pairs = Vec::with_capacity(ms.len());
                for x in &ms {
                    let off = x.view((0, m), (m, m)).amax().max(x.view((m, 0), (m, m)).amax());
                    if off > tol.residual_tol {
                        return Err(Error::NotInAlgebra { residual: off }.into());
                    }
                    pairs.push((x.view((0, 0), (m, m)).into_owned(), x.view((m, m), (m, m)).into_owned()));
                }
                pairs
            } else {
                return Err(spec_err(
                    leaf_value(e, "file")?,
                    format!("matrices must be {m}x{m} or {0}x{0} block diagonals, got {n}x{n}", 2 * m),
                )
                .into());
            };
            Ok(Subalgebra::from_matrix_pairs(l, &pairs, tol)?)
        }
        "zero" if e.args.is_empty() => Ok(Subalgebra::zero(Parent::DirectSum(Arc::clone(l)))),
        "full" if e.args.is_empty() => Ok(Subalgebra::full(Parent::DirectSum(Arc::clone(l)), tol)?),
        other => Err(spec_err(other, "expected delta(...), product(...), span(...), zero or full").into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polarcheck_core::build_classical;

    fn su3() -> Arc<LieAlgebra> {
        Arc::new(build_classical(Family::Su, 3).unwrap())
    }

    #[test]
    fn parses_nested_expressions() {
        let e = parse_expr(" product( h1 = fixed(sigma=outer), h2=so3 ) ").unwrap();
        assert_eq!(e.to_string(), "product(h1=fixed(sigma=outer),h2=so3)");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn reports_offending_token() {
        let err = parse_expr("delta(sigma=id").unwrap_err();
        assert_eq!(err.token, "<end of input>");
        let err = parse_expr("delta(sigma=id))").unwrap_err();
        assert_eq!(err.token, ")");
        let err = parse_expr("delta(sigma id)").unwrap_err();
        assert_eq!(err.token, "id)");
    }

    #[test]
    fn resolves_examples() {
        let tol = ToleranceConfig::default();
        let l = su3();
        let dims: Vec<usize> = [
            "delta(sigma=id)",
            "delta(sigma=outer)",
            "delta(sigma=id,on=so3)",
            "product(h1=so3,h2=so3)",
            "product(h1=fixed(sigma=outer),h2=su2)",
            "product(h1=cartan,h2=zero)",
        ]
        .iter()
        .map(|s| resolve(&l, &parse_expr(s).unwrap(), &tol).unwrap().dim())
        .collect();
        assert_eq!(dims, vec![8, 8, 3, 6, 6, 2]);
    }

    #[test]
    fn unknown_names_are_spec_errors() {
        let tol = ToleranceConfig::default();
        let l = su3();
        for (src, token) in [
            ("delta(sigma=weird)", "weird"),
            ("product(h1=so3,h2=bogus)", "bogus"),
            ("product(h1=so3,h3=so3)", "h3"),
            ("conj", "conj"),
        ] {
            match resolve(&l, &parse_expr(src).unwrap(), &tol) {
                Err(ResolveError::Spec(e)) => assert_eq!(e.token, token, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
