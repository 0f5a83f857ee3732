//! Exact computations in piecewise-linear Riesz spaces and finite
//! f-algebras: order and dominance decisions, the spectrum lattice of
//! basic opens, partitions of unity, and the inequality ledgers behind the
//! commutativity of almost f-algebras.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod constructions;
pub mod dini;
pub mod error;
pub mod falgebra;
pub mod lp;
pub mod pl;
pub mod random;
pub mod rational;
pub mod spectrum;

pub use constructions::{BoundsLedger, FinSpace, Partition, ProductSpace, RieszSpace};
pub use error::{Error, Result};
pub use falgebra::{BilinearMap, FinVec};
pub use pl::{BoxDomain, DecisionConfig, DominanceResult, MaxMinNF, PLTerm, PlSpace};
pub use rational::Rational;
pub use spectrum::{SpecOpen, Spectrum};
