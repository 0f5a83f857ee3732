//! Run configuration shared by every subcommand.

use std::path::PathBuf;

use rieszlab::lp::DEFAULT_DIMENSION_CAP;
use rieszlab::rational::{self, Rational};
use rieszlab::{BoxDomain, DecisionConfig, PlSpace};
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub dimension_cap: usize,
    /// An explicit box; when absent the unit cube of the working dimension.
    pub domain: Option<Vec<(Rational, Rational)>>,
    /// Working dimension; suites alternate 1 and 2 when absent.
    pub dim: Option<usize>,
    pub seed: u64,
    pub cases: usize,
    pub doubling_ceiling: u64,
    pub output_path: Option<PathBuf>,
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dimension_cap: DEFAULT_DIMENSION_CAP,
            domain: None,
            dim: None,
            seed: 0,
            cases: 100,
            doubling_ceiling: DecisionConfig::default().doubling_ceiling,
            output_path: None,
            k: None,
            m: None,
            n: None,
        }
    }
}

/// `lo:hi` intervals separated by commas, e.g. `0:1,-1/2:1/2`.
pub fn parse_box(text: &str) -> Result<Vec<(Rational, Rational)>, CliError> {
    text.split(',')
        .map(|part| {
            let (lo, hi) = part.split_once(':').ok_or_else(|| {
                CliError::Usage(format!("interval `{part}` is not of the form lo:hi"))
            })?;
            Ok((rational::parse(lo.trim())?, rational::parse(hi.trim())?))
        })
        .collect()
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.dimension_cap == 0 {
            return Err(CliError::Usage("dimension cap must be at least 1".into()));
        }
        if self.cases == 0 {
            return Err(CliError::Usage("case count must be at least 1".into()));
        }
        if let (Some(d), Some(b)) = (self.dim, &self.domain) {
            if d != b.len() {
                return Err(CliError::Usage(format!(
                    "--dim {d} disagrees with a box of dimension {}",
                    b.len()
                )));
            }
        }
        if let Some(b) = &self.domain {
            BoxDomain::new(b.clone())?;
        }
        if self.dimension() == 0 {
            return Err(CliError::Usage("dimension must be at least 1".into()));
        }
        Ok(())
    }

    /// The dimension fixed by `--dim` or `--box`, else 1.
    pub fn dimension(&self) -> usize {
        self.domain.as_ref().map(Vec::len).or(self.dim).unwrap_or(1)
    }

    /// Whether the dimension was pinned explicitly.
    pub fn pinned_dimension(&self) -> Option<usize> {
        self.domain.as_ref().map(Vec::len).or(self.dim)
    }

    pub fn decision_config(&self) -> DecisionConfig {
        DecisionConfig {
            dimension_cap: self.dimension_cap,
            doubling_ceiling: self.doubling_ceiling,
        }
    }

    /// The configured box, or the unit cube of dimension `dim`.
    pub fn space_of_dim(&self, dim: usize) -> PlSpace {
        let dom = match &self.domain {
            Some(b) => BoxDomain::new(b.clone()).expect("validated box"),
            None => BoxDomain::unit_cube(dim),
        };
        PlSpace::with_config(dom, self.decision_config())
    }

    pub fn space(&self) -> PlSpace {
        self.space_of_dim(self.dimension())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            dimension_cap: self.dimension_cap,
            domain: self.domain.as_ref().map(|b| {
                b.iter()
                    .map(|(lo, hi)| [rational::to_text(lo), rational::to_text(hi)])
                    .collect()
            }),
            dim: self.dim,
            seed: self.seed,
            case_count: self.cases,
            doubling_ceiling: self.doubling_ceiling,
            output_path: self.output_path.as_ref().map(|p| p.display().to_string()),
            k: self.k,
            m: self.m,
            n: self.n,
        }
    }
}

/// The configuration as recorded in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfigEcho {
    pub dimension_cap: usize,
    pub domain: Option<Vec<[String; 2]>>,
    pub dim: Option<usize>,
    pub seed: u64,
    pub case_count: usize,
    pub doubling_ceiling: u64,
    pub output_path: Option<String>,
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
}
