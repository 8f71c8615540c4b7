use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polarcheck_core::ToleranceConfig;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "polarcheck", version, about = "Decide polarity of actions of H ⊆ L×L on compact simple L")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Cohomogeneity, principal point and polarity verdicts for one action
    Analyze {
        /// `su<n>`, `so<n>`, `sp<n>`, a catalog id, or `file=<path>`
        #[arg(long)]
        group: String,
        /// Subalgebra of l ⊕ l, e.g. `delta(sigma=id)` or `product(h1=so3,h2=so3)`
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Known-answer catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Check one row of the table of transitive actions
    #[command(name = "verify-table1")]
    VerifyTable1 {
        #[arg(long)]
        row: String,
        #[arg(long)]
        param: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCmd {
    List,
    Run {
        /// Entry ids; all entries when omitted
        #[arg(long = "id")]
        ids: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 8)]
    samples: usize,
    #[arg(long, global = true, env = "POLARCHECK_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long = "rank-tol", global = true, default_value_t = 1e-9)]
    rank_tol: f64,
    #[arg(long = "residual-tol", global = true, default_value_t = 1e-8)]
    residual_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Analyze { group: String, subgroup: Option<String> },
    CatalogList,
    CatalogRun { ids: Vec<String> },
    VerifyTable1 { row: String, param: Option<usize> },
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    #[serde(skip)]
    pub tol: ToleranceConfig,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Parses a full argument list, program name first.
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let command = match cli.command {
            Cmd::Analyze { group, subgroup } => Command::Analyze { group, subgroup },
            Cmd::Catalog { action: CatalogCmd::List } => Command::CatalogList,
            Cmd::Catalog { action: CatalogCmd::Run { ids } } => Command::CatalogRun { ids },
            Cmd::VerifyTable1 { row, param } => Command::VerifyTable1 { row, param },
        };
        let c = cli.common;
        Ok(Self {
            command,
            tol: ToleranceConfig {
                rel_rank_tol: c.rank_tol,
                residual_tol: c.residual_tol,
                num_samples: c.samples,
                seed: c.seed,
            },
            format: c.format,
            out: c.out,
        })
    }

    /// Canonical argument list that parses back to this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec!["polarcheck".to_string()];
        match &self.command {
            Command::Analyze { group, subgroup } => {
                a.extend(["analyze".into(), "--group".into(), group.clone()]);
                if let Some(s) = subgroup {
                    a.extend(["--subgroup".into(), s.clone()]);
                }
            }
            Command::CatalogList => a.extend(["catalog".into(), "list".into()]),
            Command::CatalogRun { ids } => {
                a.extend(["catalog".into(), "run".into()]);
                for id in ids {
                    a.extend(["--id".into(), id.clone()]);
                }
            }
            Command::VerifyTable1 { row, param } => {
                a.extend(["verify-table1".into(), "--row".into(), row.clone()]);
                if let Some(n) = param {
                    a.extend(["--param".into(), n.to_string()]);
                }
            }
        }
        let t = &self.tol;
        a.extend([
            "--samples".into(),
            t.num_samples.to_string(),
            "--seed".into(),
            t.seed.to_string(),
            "--rank-tol".into(),
            t.rel_rank_tol.to_string(),
            "--residual-tol".into(),
            t.residual_tol.to_string(),
            "--format".into(),
            match self.format {
                OutputFormat::Text => "text".into(),
                OutputFormat::Json => "json".into(),
            },
        ]);
        if let Some(p) = &self.out {
            a.extend(["--out".into(), p.display().to_string()]);
        }
        a
    }
}
