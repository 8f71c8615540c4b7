//! Command-line front end: configuration, subgroup expressions, reports and
//! exit codes (0 all expectations met, 1 a verification failed, 2 invalid
//! input).

pub mod config;
pub mod report;
pub mod subgroup;

use std::sync::Arc;

use polarcheck_core::catalog::{self, verify_table1, Table1Row};
use polarcheck_core::lie_algebras::io::parse_matrices;
use polarcheck_core::{analyze, build_classical, ActionSpec, Error, Family, LieAlgebra};

pub use config::{Command, OutputFormat, RunConfig};
use subgroup::{parse_expr, resolve, ResolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// What a run produced: the report (for stdout or `--out`) and diagnostics
/// for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub diagnostics: String,
}

impl Outcome {
    fn ok(code: i32, report: String) -> Self {
        Self {
            code,
            report,
            diagnostics: String::new(),
        }
    }

    fn error(code: i32, diagnostics: String) -> Self {
        Self {
            code,
            report: String::new(),
            diagnostics,
        }
    }
}

fn core_error(e: &Error) -> Outcome {
    let code = match e {
        Error::InternalConsistency { .. } => EXIT_FAILED,
        _ => EXIT_INVALID,
    };
    Outcome::error(code, format!("error: {e}\n"))
}

fn resolve_error(e: &ResolveError) -> Outcome {
    match e {
        ResolveError::Spec(s) => Outcome::error(
            EXIT_INVALID,
            format!("error: invalid subgroup: {}\noffending token: {}\n", s.message, s.token),
        ),
        ResolveError::Core(c) => core_error(c),
    }
}

enum Group {
    Algebra(Arc<LieAlgebra>),
    Entry(catalog::CatalogEntry),
}

fn parse_group(s: &str, tol: &polarcheck_core::ToleranceConfig) -> Result<Group, Outcome> {
    let invalid = |msg: String| Outcome::error(EXIT_INVALID, format!("error: {msg}\noffending token: {s}\n"));
    if let Some(path) = s.strip_prefix("file=") {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))?;
        let (_, basis) = parse_matrices(&text).map_err(|e| core_error(&e))?;
        let l = LieAlgebra::from_basis(path, basis, tol).map_err(|e| core_error(&e))?;
        return Ok(Group::Algebra(Arc::new(l)));
    }
    if let Ok(entry) = catalog::find_entry(s) {
        return Ok(Group::Entry(entry));
    }
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (family, n) = s.split_at(split);
    let family: Family = family
        .parse()
        .map_err(|_| invalid("expected su<n>, so<n>, sp<n>, a catalog id or file=<path>".into()))?;
    let n: usize = n.parse().map_err(|_| invalid("missing size".into()))?;
    if family == Family::U {
        return Err(invalid("u(n) is not simple".into()));
    }
    build_classical(family, n)
        .map(|l| Group::Algebra(Arc::new(l)))
        .map_err(|e| core_error(&e))
}

fn run_analyze(config: &RunConfig, group: &str, subgroup: Option<&str>) -> Outcome {
    let tol = &config.tol;
    let (action, what) = match parse_group(group, tol) {
        Err(o) => return o,
        Ok(Group::Entry(entry)) => {
            if subgroup.is_some() {
                return Outcome::error(
                    EXIT_INVALID,
                    format!("error: catalog entry {group} already fixes the subgroup\n"),
                );
            }
            match entry.build(1.0, tol) {
                Ok(b) => (b.action, format!("{}: {}", entry.id, entry.description)),
                Err(e) => return core_error(&e),
            }
        }
        Ok(Group::Algebra(l)) => {
            let Some(src) = subgroup else {
                return Outcome::error(EXIT_INVALID, "error: --subgroup is required for this group\n".into());
            };
            let expr = match parse_expr(src) {
                Ok(e) => e,
                Err(e) => return resolve_error(&ResolveError::Spec(e)),
            };
            let h = match resolve(&l, &expr, tol) {
                Ok(h) => h,
                Err(e) => return resolve_error(&e),
            };
            match ActionSpec::new(h) {
                Ok(a) => (a, format!("{expr} on {}", l.name())),
                Err(e) => return core_error(&e),
            }
        }
    };
    match analyze(&action, tol) {
        Ok(r) => Outcome::ok(
            EXIT_OK,
            match config.format {
                OutputFormat::Json => report::analyze_json(&r, config),
                OutputFormat::Text => report::analyze_text(&r, &what),
            },
        ),
        Err(e) => core_error(&e),
    }
}

/// Executes a configuration without touching stdout, stderr or `--out`.
pub fn run(config: &RunConfig) -> Outcome {
    if let Err(e) = config.tol.validate() {
        return core_error(&e);
    }
    let json = config.format == OutputFormat::Json;
    match &config.command {
        Command::Analyze { group, subgroup } => run_analyze(config, group, subgroup.as_deref()),
        Command::CatalogList => Outcome::ok(EXIT_OK, report::catalog_list(&catalog::catalog(), json)),
        Command::CatalogRun { ids } => match catalog::run_known_answer_suite(ids, &config.tol) {
            Ok(summary) => {
                let code = if summary.failed() == 0 { EXIT_OK } else { EXIT_FAILED };
                Outcome::ok(code, report::suite(&summary, config, json))
            }
            Err(e) => core_error(&e),
        },
        Command::VerifyTable1 { row, param } => {
            let row: Table1Row = match row.parse() {
                Ok(r) => r,
                Err(e) => return core_error(&e),
            };
            match verify_table1(row, *param, &config.tol) {
                Ok(rec) => {
                    let code = if rec.transitive { EXIT_OK } else { EXIT_FAILED };
                    Outcome::ok(code, report::table1(&rec, config, json))
                }
                Err(e) => core_error(&e),
            }
        }
    }
}
