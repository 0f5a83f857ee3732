//! Independent refutation oracles for the order decision.

use num_traits::Signed;
use rieszlab::rational::Rational;
use rieszlab::{PLTerm, PlSpace};

fn eval(space: &PlSpace, t: &PLTerm, x: &[Rational]) -> Rational {
    space.eval(t, x).expect("oracle points lie in the box")
}

/// About 10,000 rational points of the box: 10,000 in dimension 1, a
/// 100 × 100 grid in dimension 2, 22³ in dimension 3.
pub fn grid(bounds: &[(Rational, Rational)]) -> Vec<Vec<Rational>> {
    let steps: i64 = match bounds.len() {
        1 => 9_999,
        2 => 99,
        _ => 21,
    };
    let axis = |lo: &Rational, hi: &Rational| -> Vec<Rational> {
        (0..=steps)
            .map(|i| lo + (hi - lo) * Rational::new(i.into(), steps.into()))
            .collect()
    };
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for (lo, hi) in bounds {
        let ax = axis(lo, hi);
        out = out
            .into_iter()
            .flat_map(|p| {
                ax.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// A grid point with `a(x) > b(x)`.
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

/// Points of `[lo, hi]` between consecutive members of which `t` is
/// affine, by structural recursion: kinks arise only from join and meet,
/// where the difference of the arguments changes sign.
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

/// `a <= b` on a one-dimensional box, decided at every breakpoint of
/// `b − a`; returns a refuting breakpoint.
pub fn breakpoint_refutation(space: &PlSpace, a: &PLTerm, b: &PLTerm) -> Option<Rational> {
    let (lo, hi) = &space.domain().bounds()[0];
    let d = b.sub(a);
    breakpoints_1d(space, &d, lo, hi)
        .into_iter()
        .find(|x| eval(space, &d, std::slice::from_ref(x)).is_negative())
}
