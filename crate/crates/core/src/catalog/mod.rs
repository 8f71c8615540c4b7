//! Named actions with known answers: conjugation and σ-actions, a Hermann
//! action, every transitive row, a negative control and the two diagonal
//! `so(7)` subalgebras of `so(8) ⊕ so(8)`.

mod table1;

use std::sync::Arc;

use nalgebra::DMatrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{analyze, is_transitive, sample_group_point, ActionSpec, PolarityReport};
use crate::error::{Error, Result};
use crate::lie_algebras::{build_classical, make_automorphism, Automorphism, AutomorphismSpec, Family, LieAlgebra};
use crate::numerics::ToleranceConfig;
use crate::subalgebras::{diagonal_sigma, embeddings, graph, product, Parent, Subalgebra};

pub use table1::{verify_table1, Table1Record, Table1Row};

/// One expected property of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Transitive(bool),
    Cohomogeneity(usize),
    CohomogeneityAtLeast(usize),
    Polar(bool),
    Hyperpolar(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Recipe {
    Diagonal(Family, usize, Option<OuterKind>),
    Hermann,
    Table(Table1Row),
    NegativeSu4,
    So7Diagonal { twisted: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OuterKind {
    OuterSu,
    OuterSoEven,
}

/// A catalog action, built either from a subalgebra of `l ⊕ l` or from a
/// pair `h₁, h₂ ⊆ l` (in which case the action is that of `h₁ × h₂`).
#[derive(Debug, Clone)]
pub struct Built {
    pub action: ActionSpec,
    pub pair: Option<(Subalgebra, Subalgebra)>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub checks: Vec<Check>,
    recipe: Recipe,
}

impl CatalogEntry {
    /// Builds the entry with the invariant form scaled by `form_scale`.
    pub fn build(&self, form_scale: f64, tol: &ToleranceConfig) -> Result<Built> {
        let make = |f: Family, n: usize| -> Result<Arc<LieAlgebra>> {
            let l = build_classical(f, n)?;
            Ok(Arc::new(if form_scale == 1.0 { l } else { l.with_form_scale(form_scale)? }))
        };
        let from_pair = |h1: Subalgebra, h2: Subalgebra| -> Result<Built> {
            Ok(Built {
                action: ActionSpec::new(product(&h1, &h2, tol)?)?,
                pair: Some((h1, h2)),
            })
        };
        match self.recipe {
            Recipe::Diagonal(f, n, sigma) => {
                let l = make(f, n)?;
                let sigma = match sigma {
                    None => Automorphism::identity(&l),
                    Some(OuterKind::OuterSu) => make_automorphism(&l, AutomorphismSpec::OuterSu, tol)?,
                    Some(OuterKind::OuterSoEven) => {
                        make_automorphism(&l, AutomorphismSpec::OuterSoEven, tol)?
                    }
                };
                Ok(Built {
                    action: ActionSpec::new(diagonal_sigma(&l, &sigma, tol)?)?,
                    pair: None,
                })
            }
            Recipe::Hermann => {
                let l = make(Family::Su, 3)?;
                let k = embeddings::real_form(&l, tol)?;
                from_pair(k.clone(), k)
            }
            Recipe::Table(row) => {
                let (_, h1, h2) = row.build(None, form_scale, tol)?;
                from_pair(h1, h2)
            }
            Recipe::NegativeSu4 => {
                let l = make(Family::Su, 4)?;
                let h = embeddings::corner_su(&l, 3, tol)?;
                from_pair(h.clone(), h)
            }
            Recipe::So7Diagonal { twisted } => {
                let l = make(Family::So, 8)?;
                let so7 = embeddings::corner_so(&l, 7, tol)?;
                let map = if twisted {
                    embeddings::spin7_twist(&l, tol)?
                } else {
                    DMatrix::identity(l.dim(), l.dim())
                };
                Ok(Built {
                    action: ActionSpec::new(graph(&so7, &map, tol)?)?,
                    pair: None,
                })
            }
        }
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    use Check::*;
    let entry = |id: &str, description: &str, checks: Vec<Check>, recipe| CatalogEntry {
        id: id.to_string(),
        description: description.to_string(),
        checks,
        recipe,
    };
    let mut out = vec![
        entry(
            "conj-su3",
            "conjugation action of SU(3); sections are maximal tori",
            vec![Cohomogeneity(2), Polar(true), Hyperpolar(true)],
            Recipe::Diagonal(Family::Su, 3, None),
        ),
        entry(
            "conj-so5",
            "conjugation action of SO(5); sections are maximal tori",
            vec![Cohomogeneity(2), Polar(true), Hyperpolar(true)],
            Recipe::Diagonal(Family::So, 5, None),
        ),
        entry(
            "sigma-su3-outer",
            "twisted diagonal of SU(3) by complex conjugation",
            vec![Polar(true), Hyperpolar(true)],
            Recipe::Diagonal(Family::Su, 3, Some(OuterKind::OuterSu)),
        ),
        entry(
            "sigma-so8-outer",
            "twisted diagonal of SO(8) by a reflection",
            vec![Polar(true), Hyperpolar(true)],
            Recipe::Diagonal(Family::So, 8, Some(OuterKind::OuterSoEven)),
        ),
        entry(
            "hermann-so3-su3",
            "SO(3) x SO(3) acting on SU(3)",
            vec![Cohomogeneity(2), Polar(true), Hyperpolar(true)],
            Recipe::Hermann,
        ),
    ];
    for row in Table1Row::ALL {
        let (h1, l, h2) = table_names(row);
        out.push(entry(
            &format!("table1-{}", row.id()),
            &format!("{h1} x {h2} acting on {l}"),
            vec![Transitive(true), Cohomogeneity(0)],
            Recipe::Table(row),
        ));
    }
    out.push(entry(
        "neg-su3-su4",
        "SU(3) x SU(3) acting on SU(4), both factors in the same corner",
        vec![Transitive(false)],
        Recipe::NegativeSu4,
    ));
    out.push(entry(
        "so7-diagonal-standard",
        "diagonal {(X, X) : X in so(7)} acting on SO(8)",
        vec![CohomogeneityAtLeast(7)],
        Recipe::So7Diagonal { twisted: false },
    ));
    out.push(entry(
        "so7-diagonal-twisted",
        "{(X, spin(X)) : X in so(7)} acting on SO(8)",
        vec![CohomogeneityAtLeast(7)],
        Recipe::So7Diagonal { twisted: true },
    ));
    out
}

fn table_names(row: Table1Row) -> (&'static str, &'static str, &'static str) {
    match row {
        Table1Row::SpSuSuxu => ("Sp(2)", "SU(4)", "S(U(3)U(1))"),
        Table1Row::SpSuSu => ("Sp(2)", "SU(4)", "SU(3)"),
        Table1Row::SoSoU => ("SO(5)", "SO(6)", "U(3)"),
        Table1Row::SoSoSu => ("SO(5)", "SO(6)", "SU(3)"),
        Table1Row::SoSoSpSp => ("SO(7)", "SO(8)", "Sp(2)Sp(1)"),
        Table1Row::SoSoSpU => ("SO(7)", "SO(8)", "Sp(2)U(1)"),
        Table1Row::SoSoSp => ("SO(7)", "SO(8)", "Sp(2)"),
        Table1Row::G2So6 => ("G2", "SO(7)", "SO(6)"),
        Table1Row::G2So5So2 => ("G2", "SO(7)", "SO(5)SO(2)"),
        Table1Row::G2So5 => ("G2", "SO(7)", "SO(5)"),
        Table1Row::Spin7 => ("Spin(7)", "SO(8)", "SO(7)"),
        Table1Row::Spin9 => ("Spin(9)", "SO(16)", "SO(15)"),
    }
}

pub fn find_entry(id: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry '{id}'")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub check: Check,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct EntryResult {
    pub id: String,
    pub outcomes: Vec<CheckOutcome>,
    pub report: Option<PolarityReport>,
    pub transitive: Option<bool>,
    /// Transitivity of `h₁ × 0` and `0 × h₂`; both factors are proper, so
    /// neither may be transitive.
    pub factors_alone_transitive: Option<(bool, bool)>,
    pub error: Option<String>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.outcomes.iter().all(|o| o.passed)
            && self.factors_alone_transitive.is_none_or(|(a, b)| !a && !b)
    }
}

pub fn run_entry(entry: &CatalogEntry, tol: &ToleranceConfig) -> EntryResult {
    let mut result = EntryResult {
        id: entry.id.clone(),
        outcomes: Vec::new(),
        report: None,
        transitive: None,
        factors_alone_transitive: None,
        error: None,
    };
    if let Err(e) = fill_entry(entry, tol, &mut result) {
        result.error = Some(e.to_string());
    }
    result
}

fn fill_entry(entry: &CatalogEntry, tol: &ToleranceConfig, out: &mut EntryResult) -> Result<()> {
    let built = entry.build(1.0, tol)?;
    if let Some((h1, h2)) = &built.pair {
        out.transitive = Some(is_transitive(h1, h2, tol)?);
        let zero = Subalgebra::zero(Parent::Algebra(Arc::clone(h1.algebra())));
        out.factors_alone_transitive = Some((is_transitive(h1, &zero, tol)?, is_transitive(&zero, h2, tol)?));
    }
    let report = analyze(&built.action, tol)?;
    for &check in &entry.checks {
        let (observed, passed) = match check {
            Check::Transitive(t) => match out.transitive {
                Some(v) => (v.to_string(), v == t),
                None => ("n/a".to_string(), false),
            },
            Check::Cohomogeneity(k) => (report.cohomogeneity.to_string(), report.cohomogeneity == k),
            Check::CohomogeneityAtLeast(k) => (report.cohomogeneity.to_string(), report.cohomogeneity >= k),
            Check::Polar(p) => (report.polar.to_string(), report.polar == p),
            Check::Hyperpolar(p) => (report.hyperpolar.to_string(), report.hyperpolar == p),
        };
        out.outcomes.push(CheckOutcome { check, observed, passed });
    }
    out.report = Some(report);
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub results: Vec<EntryResult>,
}

impl SuiteSummary {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

/// Runs the given entries (all of them if `ids` is empty) concurrently;
/// results come back in catalog order.
pub fn run_known_answer_suite(ids: &[String], tol: &ToleranceConfig) -> Result<SuiteSummary> {
    let entries: Vec<CatalogEntry> = if ids.is_empty() {
        catalog()
    } else {
        ids.iter().map(|id| find_entry(id)).collect::<Result<_>>()?
    };
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = entries.iter().map(|e| s.spawn(move || run_entry(e, tol))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("catalog thread panicked"))
            .collect()
    });
    Ok(SuiteSummary { results })
}

/// `(cohomogeneity, polar, hyperpolar)`.
pub type Verdict = (usize, bool, bool);

fn verdict(r: &PolarityReport) -> Verdict {
    (r.cohomogeneity, r.polar, r.hyperpolar)
}

#[derive(Debug, Clone)]
pub struct InvarianceRecord {
    pub id: String,
    pub baseline: Verdict,
    /// Every verdict that differed from the baseline, with what caused it.
    pub flips: Vec<(String, Verdict)>,
    pub trials: usize,
}

/// Recomputes an entry's verdict after conjugating `h` by random group
/// pairs, rescaling the form, and reseeding the sampler.
pub fn invariance_check(
    entry: &CatalogEntry,
    conjugations: usize,
    scales: &[f64],
    seeds: &[u64],
    tol: &ToleranceConfig,
) -> Result<InvarianceRecord> {
    let built = entry.build(1.0, tol)?;
    let baseline = verdict(&analyze(&built.action, tol)?);
    let mut flips = Vec::new();
    let mut trials = 0;
    let mut record = |label: String, v: Verdict| {
        trials += 1;
        if v != baseline {
            flips.push((label, v));
        }
    };
    let l = built.action.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(tol.seed ^ 0x5eed_c0de);
    for i in 0..conjugations {
        let a = sample_group_point(l, &mut rng);
        let b = sample_group_point(l, &mut rng);
        let conj = built.action.conjugate(&a, &b, tol)?;
        record(format!("conjugation {i}"), verdict(&analyze(&conj, tol)?));
    }
    for &c in scales {
        let scaled = entry.build(c, tol)?;
        record(format!("form scale {c}"), verdict(&analyze(&scaled.action, tol)?));
    }
    for &seed in seeds {
        let reseeded = tol.with_seed(seed);
        record(format!("seed {seed}"), verdict(&analyze(&built.action, &reseeded)?));
    }
    Ok(InvarianceRecord {
        id: entry.id.clone(),
        baseline,
        flips,
        trials,
    })
}

/// Cohomogeneity of both diagonal `so(7)` subalgebras of `so(8) ⊕ so(8)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionRecord {
    pub dim_l: usize,
    pub dim_h: usize,
    pub standard_cohomogeneity: usize,
    pub twisted_cohomogeneity: usize,
}

impl ObstructionRecord {
    /// A cohomogeneity-two action would need `dim h ≥ dim l − 2`.
    pub fn holds(&self) -> bool {
        let bound = self.dim_l - self.dim_h;
        self.standard_cohomogeneity >= bound && self.twisted_cohomogeneity >= bound && bound > 2
    }
}

pub fn verify_so7_diagonal_obstruction(tol: &ToleranceConfig) -> Result<ObstructionRecord> {
    let standard = find_entry("so7-diagonal-standard")?.build(1.0, tol)?;
    let twisted = find_entry("so7-diagonal-twisted")?.build(1.0, tol)?;
    let (standard_cohomogeneity, _) = crate::action::cohomogeneity(&standard.action, tol)?;
    let (twisted_cohomogeneity, _) = crate::action::cohomogeneity(&twisted.action, tol)?;
    let dim_h = standard.action.h().dim();
    if twisted.action.h().dim() != dim_h {
        return Err(Error::InternalConsistency {
            what: "the two diagonal so(7) subalgebras differ in dimension".into(),
            residual: (twisted.action.h().dim() as f64 - dim_h as f64).abs(),
        });
    }
    Ok(ObstructionRecord {
        dim_l: standard.action.algebra().dim(),
        dim_h,
        standard_cohomogeneity,
        twisted_cohomogeneity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique() {
        let c = catalog();
        let ids: HashSet<_> = c.iter().map(|e| e.id.clone()).collect();
        assert_eq!(ids.len(), c.len());
        assert!(find_entry("missing").is_err());
    }

    #[test]
    fn conjugation_entry_passes() {
        let r = run_entry(&find_entry("conj-su3").unwrap(), &ToleranceConfig::default());
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn negative_control_passes_as_non_transitive() {
        let r = run_entry(&find_entry("neg-su3-su4").unwrap(), &ToleranceConfig::default());
        assert_eq!(r.transitive, Some(false));
        assert!(r.passed());
    }

    #[test]
    fn obstruction_dimensions() {
        let rec = verify_so7_diagonal_obstruction(&ToleranceConfig::default()).unwrap();
        assert_eq!((rec.dim_l, rec.dim_h), (28, 21));
        assert!(rec.holds(), "{rec:?}");
    }
}
