//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_box, RunConfig};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "rieszlab",
    version,
    about = "Exact decisions and constructions in piecewise-linear Riesz spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Ambient dimension of the box.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Domain box as `lo:hi` intervals, e.g. `0:1,-1/2:1/2`.
    #[arg(long = "box", global = true, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[arg(long, global = true, env = "RIESZLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub cases: usize,
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 3)]
    pub dimension_cap: usize,
    /// Largest multiplier tried by the dominance search.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub doubling_ceiling: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide `a <= b` on the box; a failing answer carries a point.
    DecideLeq { a: String, b: String },
    /// Decide `a⁺ <= n·b⁺` for some n, reporting the least n or a witness.
    Dominates { a: String, b: String },
    /// Sup-norm relative to the unit, with the extrema of the term.
    Norm { a: String },
    /// Meet, join and order of the basic opens D(a) and D(b).
    Lattice { a: String, b: String },
    /// Slice partition of `0 <= f <= 1` (term or JSON vector) with `--k`
    /// slices, or with `--cover` a partition subordinate to the opens D(t).
    Partition {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        cover: bool,
    },
    /// Staircase approximation of `0 <= f <= 1` with `--n` levels.
    Approx {
        f: String,
        /// Build the approximant from a partition subordinate to the level
        /// cover instead of the slice partition (terms only).
        #[arg(long)]
        cover: bool,
    },
    /// Inequality ledger of the commutativity argument for a bilinear map.
    Ledger {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// Uniform bound on `[(f ∧ g)h − n·f(g ∧ h)]⁺` at `n = m²`.
    Dini {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
    },
    /// Run a seeded check suite.
    Suite { name: String },
}

impl GlobalArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let config = RunConfig {
            dimension_cap: self.dimension_cap,
            domain: self.domain.as_deref().map(parse_box).transpose()?,
            dim: self.dim,
            seed: self.seed,
            cases: self.cases,
            doubling_ceiling: self.doubling_ceiling,
            output_path: self.report.clone(),
            k: self.k,
            m: self.m,
            n: self.n,
        };
        config.validate()?;
        Ok(config)
    }
}
