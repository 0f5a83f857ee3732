//! Piecewise-linear functions on a rational box: the concrete Riesz space.

mod domain;
mod nf;
mod regions;
mod space;
mod term;
mod text;

pub use domain::BoxDomain;
pub use nf::MaxMinNF;
pub use space::{DecisionConfig, DominanceResult, PlSpace};
pub use term::PLTerm;
pub use text::parse_term;
