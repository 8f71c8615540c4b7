//! Text and JSON renderings. JSON floats carry 17 significant digits so
//! reruns are comparable byte for byte.

use std::fmt::Write;

use nalgebra::{DMatrix, DVector};
use polarcheck_core::catalog::{Check, EntryResult, SuiteSummary, Table1Record};
use polarcheck_core::{PolarityReport, ToleranceConfig};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::config::RunConfig;

type Num = Box<RawValue>;

fn num(x: f64) -> Num {
    let s = if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    };
    RawValue::from_string(s).expect("formatted float is valid JSON")
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<Num>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| num(m[(i, j)])).collect()).collect()
}

fn vector(v: &DVector<f64>) -> Vec<Num> {
    v.iter().map(|&x| num(x)).collect()
}

#[derive(Serialize)]
struct TolerancesJson {
    rel_rank_tol: Num,
    residual_tol: Num,
    num_samples: usize,
    seed: u64,
}

impl From<&ToleranceConfig> for TolerancesJson {
    fn from(t: &ToleranceConfig) -> Self {
        Self {
            rel_rank_tol: num(t.rel_rank_tol),
            residual_tol: num(t.residual_tol),
            num_samples: t.num_samples,
            seed: t.seed,
        }
    }
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    cohomogeneity: usize,
    principal_point: Vec<Vec<Num>>,
    section_basis: Vec<Vec<Num>>,
    polar: bool,
    hyperpolar: bool,
    residual_triple: Num,
    residual_orth: Num,
    residual_abelian: Num,
    samples_used: usize,
    seed: u64,
    tolerances: TolerancesJson,
    config: &'a RunConfig,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn analyze_json(r: &PolarityReport, config: &RunConfig) -> String {
    to_json(&AnalyzeJson {
        cohomogeneity: r.cohomogeneity,
        principal_point: rows(&r.principal_point),
        section_basis: r.section_basis.iter().map(vector).collect(),
        polar: r.polar,
        hyperpolar: r.hyperpolar,
        residual_triple: num(r.residual_triple),
        residual_orth: num(r.residual_orth),
        residual_abelian: num(r.residual_abelian),
        samples_used: r.samples_used,
        seed: r.seed,
        tolerances: (&r.tolerances).into(),
        config,
    })
}

pub fn analyze_text(r: &PolarityReport, what: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{what}");
    let _ = writeln!(s, "cohomogeneity     {}", r.cohomogeneity);
    let _ = writeln!(s, "polar             {}", r.polar);
    let _ = writeln!(s, "hyperpolar        {}", r.hyperpolar);
    let _ = writeln!(s, "residual_triple   {:.3e}", r.residual_triple);
    let _ = writeln!(s, "residual_orth     {:.3e}", r.residual_orth);
    let _ = writeln!(s, "residual_abelian  {:.3e}", r.residual_abelian);
    let _ = writeln!(
        s,
        "samples           {} (seed {}, residual tol {:e})",
        r.samples_used, r.seed, r.tolerances.residual_tol
    );
    s
}

pub fn check_label(c: &Check) -> String {
    match c {
        Check::Transitive(t) => format!("transitive={t}"),
        Check::Cohomogeneity(k) => format!("cohomogeneity={k}"),
        Check::CohomogeneityAtLeast(k) => format!("cohomogeneity>={k}"),
        Check::Polar(p) => format!("polar={p}"),
        Check::Hyperpolar(p) => format!("hyperpolar={p}"),
    }
}

#[derive(Serialize)]
struct EntryJson {
    id: String,
    description: String,
    checks: Vec<String>,
}

pub fn catalog_list(entries: &[polarcheck_core::catalog::CatalogEntry], json: bool) -> String {
    if json {
        let v: Vec<_> = entries
            .iter()
            .map(|e| EntryJson {
                id: e.id.clone(),
                description: e.description.clone(),
                checks: e.checks.iter().map(check_label).collect(),
            })
            .collect();
        return to_json(&v);
    }
    let mut s = String::new();
    for e in entries {
        let checks: Vec<_> = e.checks.iter().map(check_label).collect();
        let _ = writeln!(s, "{:<24} {}  [{}]", e.id, e.description, checks.join(", "));
    }
    s
}

#[derive(Serialize)]
struct OutcomeJson {
    check: String,
    observed: String,
    passed: bool,
}

#[derive(Serialize)]
struct ResultJson {
    id: String,
    passed: bool,
    checks: Vec<OutcomeJson>,
    cohomogeneity: Option<usize>,
    polar: Option<bool>,
    hyperpolar: Option<bool>,
    residual_triple: Option<Num>,
    residual_orth: Option<Num>,
    residual_abelian: Option<Num>,
    transitive: Option<bool>,
    factors_alone_transitive: Option<(bool, bool)>,
    error: Option<String>,
}

impl From<&EntryResult> for ResultJson {
    fn from(r: &EntryResult) -> Self {
        let rep = r.report.as_ref();
        Self {
            id: r.id.clone(),
            passed: r.passed(),
            checks: r
                .outcomes
                .iter()
                .map(|o| OutcomeJson {
                    check: check_label(&o.check),
                    observed: o.observed.clone(),
                    passed: o.passed,
                })
                .collect(),
            cohomogeneity: rep.map(|r| r.cohomogeneity),
            polar: rep.map(|r| r.polar),
            hyperpolar: rep.map(|r| r.hyperpolar),
            residual_triple: rep.map(|r| num(r.residual_triple)),
            residual_orth: rep.map(|r| num(r.residual_orth)),
            residual_abelian: rep.map(|r| num(r.residual_abelian)),
            transitive: r.transitive,
            factors_alone_transitive: r.factors_alone_transitive,
            error: r.error.clone(),
        }
    }
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    entries: Vec<ResultJson>,
    passed: usize,
    failed: usize,
    config: &'a RunConfig,
}

pub fn suite(summary: &SuiteSummary, config: &RunConfig, json: bool) -> String {
    if json {
        return to_json(&SuiteJson {
            entries: summary.results.iter().map(Into::into).collect(),
            passed: summary.passed(),
            failed: summary.failed(),
            config,
        });
    }
    let mut s = String::new();
    for r in &summary.results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(s, "{status} {:<24}", r.id);
        for o in &r.outcomes {
            let _ = write!(s, " {}", check_label(&o.check));
            if !o.passed {
                let _ = write!(s, " (got {})", o.observed);
            }
        }
        if let Some(rep) = &r.report {
            let _ = write!(
                s,
                " residuals {:.2e}/{:.2e}/{:.2e}",
                rep.residual_triple, rep.residual_orth, rep.residual_abelian
            );
        }
        if let Some((a, b)) = r.factors_alone_transitive {
            if a || b {
                let _ = write!(s, " factor alone transitive: h1={a} h2={b}");
            }
        }
        if let Some(e) = &r.error {
            let _ = write!(s, " error: {e}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} passed, {} failed", summary.passed(), summary.failed());
    s
}

#[derive(Serialize)]
struct Table1Json<'a> {
    row: String,
    param: Option<usize>,
    algebra: &'a str,
    dim_l: usize,
    dim_h1: usize,
    dim_h2: usize,
    span_rank: usize,
    transitive: bool,
    config: &'a RunConfig,
}

pub fn table1(r: &Table1Record, config: &RunConfig, json: bool) -> String {
    if json {
        return to_json(&Table1Json {
            row: r.row.to_string(),
            param: r.param,
            algebra: &r.algebra,
            dim_l: r.dim_l,
            dim_h1: r.dim_h1,
            dim_h2: r.dim_h2,
            span_rank: r.span_rank,
            transitive: r.transitive,
            config,
        });
    }
    let param = r.param.map(|n| format!(" n={n}")).unwrap_or_default();
    format!(
        "{}{param}: transitive={}  dim h1={} dim h2={} span rank {}, dim {} = {}\n",
        r.row,
        r.transitive,
        r.dim_h1,
        r.dim_h2,
        r.span_rank,
        r.algebra,
        r.dim_l
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(num(0.1).get(), "1.0000000000000001e-1");
        assert_eq!(num(-2.0).get(), "-2.0000000000000000e0");
        assert_eq!(num(f64::NAN).get(), "null");
        let back: f64 = serde_json::from_str(num(std::f64::consts::PI).get()).unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
