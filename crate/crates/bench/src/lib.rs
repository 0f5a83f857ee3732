//! Fixed workloads shared by the benchmarks.

use rieszlab::random::{RandomSource, TermParams};
use rieszlab::PLTerm;

/// `count` seeded term pairs of the given dimension and depth.
pub fn term_pairs(seed: u64, dim: usize, depth: u32, count: u64) -> Vec<(PLTerm, PLTerm)> {
    let params = TermParams {
        depth,
        ..TermParams::default()
    };
    (0..count)
        .map(|i| {
            let mut r = RandomSource::for_case(seed, dim as u64, i);
            (r.term(dim, &params), r.term(dim, &params))
        })
        .collect()
}
