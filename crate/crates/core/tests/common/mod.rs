#![allow(dead_code)]

use num_traits::Signed;
use rieszlab::random::{RandomSource, TermParams};
use rieszlab::rational::{int, ratio};
use rieszlab::{PLTerm, PlSpace, Rational};

pub fn eval(space: &PlSpace, t: &PLTerm, x: &[Rational]) -> Rational {
    space.eval(t, x).expect("point inside the box")
}

/// Points of `[lo, hi]` between which `t` is affine, found by structural
/// recursion: only join and meet create kinks, at sign changes of the
/// difference of their arguments.
pub fn breakpoints_1d(space: &PlSpace, t: &PLTerm, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    match t {
        PLTerm::Generator(_) | PLTerm::Unit | PLTerm::Const(_) => vec![lo.clone(), hi.clone()],
        PLTerm::Scale(_, s) => breakpoints_1d(space, s, lo, hi),
        PLTerm::Add(l, r) => merged(
            breakpoints_1d(space, l, lo, hi),
            breakpoints_1d(space, r, lo, hi),
        ),
        PLTerm::Join(l, r) | PLTerm::Meet(l, r) => {
            let pts = merged(
                breakpoints_1d(space, l, lo, hi),
                breakpoints_1d(space, r, lo, hi),
            );
            let diff = |x: &Rational| {
                let p = [x.clone()];
                eval(space, l, &p) - eval(space, r, &p)
            };
            let mut out = pts.clone();
            for w in pts.windows(2) {
                let (dp, dq) = (diff(&w[0]), diff(&w[1]));
                if (&dp * &dq).is_negative() {
                    out.push(&w[0] + (&w[1] - &w[0]) * &dp / (&dp - &dq));
                }
            }
            out.sort();
            out.dedup();
            out
        }
    }
}

fn merged(mut a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    a.extend(b);
    a.sort();
    a.dedup();
    a
}

/// `a <= b` on `[0, 1]`, decided by evaluating at every breakpoint.
pub fn leq_by_breakpoints(space: &PlSpace, a: &PLTerm, b: &PLTerm) -> bool {
    let d = b.sub(a);
    breakpoints_1d(space, &d, &int(0), &int(1))
        .iter()
        .all(|x| !eval(space, &d, std::slice::from_ref(x)).is_negative())
}

/// About 10,000 points of the unit cube in dimension 1 or 2.
pub fn grid(dim: usize) -> Vec<Vec<Rational>> {
    match dim {
        1 => (0..10_000).map(|i| vec![ratio(i, 9_999)]).collect(),
        2 => (0..100)
            .flat_map(|i| (0..100).map(move |j| vec![ratio(i, 99), ratio(j, 99)]))
            .collect(),
        _ => panic!("grid oracle covers dimensions 1 and 2"),
    }
}

/// A grid point with `a > b`, if any.
pub fn grid_refutation(
    space: &PlSpace,
    grid: &[Vec<Rational>],
    a: &PLTerm,
    b: &PLTerm,
) -> Option<Vec<Rational>> {
    grid.iter()
        .find(|x| eval(space, a, x) > eval(space, b, x))
        .cloned()
}

pub fn small_params() -> TermParams {
    TermParams {
        depth: 4,
        ..TermParams::default()
    }
}

pub fn term_pair(
    seed: u64,
    stream: u64,
    i: u64,
    dim: usize,
    params: &TermParams,
) -> (PLTerm, PLTerm) {
    let mut r = RandomSource::for_case(seed, stream, i);
    let a = r.term(dim, params);
    let b = r.term(dim, params);
    (a, b)
}
