//! Seeded generators for terms, vectors and bilinear maps.
//!
//! Streams are ChaCha8 seeded from a `u64`, so a seed reproduces the same
//! values on every platform. No floating point is involved: probabilities
//! are drawn as integer percentages.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::falgebra::{BilinearMap, FinVec};
use crate::pl::PLTerm;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermParams {
    pub depth: u32,
    pub max_numer: i64,
    pub max_denom: i64,
}

impl Default for TermParams {
    fn default() -> Self {
        TermParams {
            depth: 6,
            max_numer: 16,
            max_denom: 16,
        }
    }
}

pub struct RandomSource {
    rng: ChaCha8Rng,
}

/// SplitMix64 step; decorrelates derived seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for case `index` of a run, so cases can be
    /// generated in any order.
    pub fn for_case(seed: u64, stream: u64, index: u64) -> Self {
        Self::new(mix(mix(seed ^ mix(stream)) ^ index))
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.random_range(0..n)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn percent(&mut self, p: u32) -> bool {
        self.below(100) < p
    }

    pub fn rational(&mut self, max_numer: i64, max_denom: i64) -> Rational {
        let q = self.range(1, max_denom.max(1));
        rational::ratio(self.range(-max_numer, max_numer), q)
    }

    pub fn nonzero_rational(&mut self, max_numer: i64, max_denom: i64) -> Rational {
        let q = self.range(1, max_denom.max(1));
        let mut p = self.range(1, max_numer.max(1));
        if self.percent(50) {
            p = -p;
        }
        rational::ratio(p, q)
    }

    /// A rational in `[0, 1]`.
    pub fn unit_rational(&mut self, max_denom: i64) -> Rational {
        let q = self.range(1, max_denom.max(1));
        rational::ratio(self.range(0, q), q)
    }

    pub fn term(&mut self, dim: usize, params: &TermParams) -> PLTerm {
        self.term_at(dim, params, params.depth)
    }

    fn leaf(&mut self, dim: usize, params: &TermParams) -> PLTerm {
        match self.below(10) {
            0..=4 => PLTerm::gen(self.below(dim as u32) as usize),
            5 => PLTerm::unit(),
            _ => PLTerm::constant(self.rational(params.max_numer, params.max_denom)),
        }
    }

    fn term_at(&mut self, dim: usize, params: &TermParams, left: u32) -> PLTerm {
        // leaves get likelier with depth, which keeps typical terms small
        let used = params.depth - left;
        if left == 0 || self.percent(30 + 12 * used) {
            return self.leaf(dim, params);
        }
        match self.below(4) {
            0 => {
                let a = self.term_at(dim, params, left - 1);
                let b = self.term_at(dim, params, left - 1);
                a.add(&b)
            }
            1 => {
                let q = self.nonzero_rational(params.max_numer, params.max_denom);
                self.term_at(dim, params, left - 1).scale(q)
            }
            2 => {
                let a = self.term_at(dim, params, left - 1);
                let b = self.term_at(dim, params, left - 1);
                a.join(&b)
            }
            _ => {
                let a = self.term_at(dim, params, left - 1);
                let b = self.term_at(dim, params, left - 1);
                a.meet(&b)
            }
        }
    }

    /// `(t ∨ 0) ∧ 1`, which always lies between 0 and 1.
    pub fn unit_range_term(&mut self, dim: usize, params: &TermParams) -> PLTerm {
        self.term(dim, params).pos().meet(&PLTerm::unit())
    }

    pub fn positive_term(&mut self, dim: usize, params: &TermParams) -> PLTerm {
        self.term(dim, params).pos()
    }

    /// A vector with entries in `[0, 1]`.
    pub fn unit_vector(&mut self, m: usize, max_denom: i64) -> FinVec {
        FinVec::new((0..m).map(|_| self.unit_rational(max_denom)).collect()).expect("m >= 1")
    }

    pub fn signed_vector(&mut self, m: usize, max_numer: i64, max_denom: i64) -> FinVec {
        FinVec::new(
            (0..m)
                .map(|_| self.rational(max_numer, max_denom))
                .collect(),
        )
        .expect("m >= 1")
    }

    /// Positive diagonal (hence orthosymmetric) map.
    pub fn diagonal_map(&mut self, m: usize, max_denom: i64) -> BilinearMap {
        let d: Vec<Rational> = (0..m).map(|_| self.unit_rational(max_denom)).collect();
        BilinearMap::diagonal(&d)
    }

    /// Nonnegative entries in `[0, 1]`, no structure imposed.
    pub fn dense_map(&mut self, m: usize, max_denom: i64) -> BilinearMap {
        let rows = (0..m)
            .map(|_| (0..m).map(|_| self.unit_rational(max_denom)).collect())
            .collect();
        BilinearMap::new(rows).expect("square")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    Term,
    Vector,
    Bilinear,
    PartitionInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomValue {
    Term(PLTerm),
    Vector(FinVec),
    Bilinear(BilinearMap),
}

/// Size parameters for [`generate_random`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeParams {
    pub dim: usize,
    pub m: usize,
    pub term: TermParams,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams {
            dim: 1,
            m: 4,
            term: TermParams::default(),
        }
    }
}

/// One value of the given kind. `PartitionInput` yields a term clamped into
/// `[0, 1]`.
pub fn generate_random(kind: RandomKind, seed: u64, size: &SizeParams) -> RandomValue {
    let mut r = RandomSource::new(seed);
    match kind {
        RandomKind::Term => RandomValue::Term(r.term(size.dim, &size.term)),
        RandomKind::Vector => RandomValue::Vector(r.unit_vector(size.m, size.term.max_denom)),
        RandomKind::Bilinear => RandomValue::Bilinear(r.dense_map(size.m, size.term.max_denom)),
        RandomKind::PartitionInput => RandomValue::Term(r.unit_range_term(size.dim, &size.term)),
    }
}
