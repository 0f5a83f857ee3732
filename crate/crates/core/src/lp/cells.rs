//! Full-dimensional cells of a hyperplane arrangement inside a box.

use std::collections::HashSet;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lp::fm::{box_ineqs, feasible_point, Ineq};
use crate::lp::AffineForm;
use crate::rational::Rational;

/// Default bound on the ambient dimension for arrangement enumeration.
pub const DEFAULT_DIMENSION_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// One open cell: the sign of every input form on it and a strictly
/// interior rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signs: Vec<Sign>,
    pub sample: Vec<Rational>,
}

struct OpenCell {
    walls: Vec<Ineq>,
    sample: Vec<Rational>,
}

/// Distinct hyperplanes (up to nonzero scaling) that meet the open box.
pub(crate) fn crossing_hyperplanes<'a>(
    forms: impl IntoIterator<Item = &'a AffineForm>,
    bounds: &[(Rational, Rational)],
) -> Vec<AffineForm> {
    let mut seen: HashSet<AffineForm> = HashSet::new();
    let mut out = Vec::new();
    for form in forms {
        let Some(key) = form.hyperplane_key() else {
            continue;
        };
        if seen.contains(&key) {
            continue;
        }
        // a hyperplane misses the open box iff the form keeps one weak sign
        let lo = key.min_over_box(bounds);
        let hi = key.max_over_box(bounds);
        if !lo.is_negative() || !hi.is_positive() {
            continue;
        }
        seen.insert(key.clone());
        out.push(key);
    }
    out
}

/// Splits the open box by each hyperplane in turn; returns one interior
/// sample per nonempty open cell.
pub(crate) fn arrangement_samples(
    hyperplanes: &[AffineForm],
    bounds: &[(Rational, Rational)],
) -> Vec<Vec<Rational>> {
    let dim = bounds.len();
    let center: Vec<Rational> = bounds
        .iter()
        .map(|(lo, hi)| crate::rational::midpoint(lo, hi))
        .collect();
    let mut cells = vec![OpenCell {
        walls: box_ineqs(bounds, true),
        sample: center,
    }];
    for h in hyperplanes {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            let side = Sign::of(&h.eval_unchecked(&cell.sample));
            let try_side = |form: AffineForm| {
                let mut walls = cell.walls.clone();
                walls.push(Ineq::new(form, true));
                feasible_point(walls.clone(), dim).map(|p| OpenCell { walls, sample: p })
            };
            match side {
                Sign::Zero => {
                    next.extend(try_side(h.clone()));
                    next.extend(try_side(h.neg()));
                }
                Sign::Positive | Sign::Negative => {
                    let (same, other) = if side == Sign::Positive {
                        (h.clone(), h.neg())
                    } else {
                        (h.neg(), h.clone())
                    };
                    match try_side(other) {
                        Some(split) => {
                            let mut walls = cell.walls;
                            walls.push(Ineq::new(same, true));
                            next.push(OpenCell {
                                walls,
                                sample: cell.sample,
                            });
                            next.push(split);
                        }
                        None => next.push(cell),
                    }
                }
            }
        }
        cells = next;
    }
    cells.into_iter().map(|c| c.sample).collect()
}

/// One strictly interior sample per nonempty full-dimensional cell of the
/// arrangement `{form = 0}` restricted to the box.
pub fn cell_samples(
    forms: &[AffineForm],
    bounds: &[(Rational, Rational)],
    dimension_cap: usize,
) -> Result<Vec<Cell>> {
    let dim = bounds.len();
    if dim > dimension_cap {
        return Err(Error::DimensionCap {
            dim,
            cap: dimension_cap,
        });
    }
    if let Some(bad) = forms.iter().find(|f| f.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let hyperplanes = crossing_hyperplanes(forms, bounds);
    let samples = arrangement_samples(&hyperplanes, bounds);
    Ok(samples
        .into_iter()
        .map(|sample| Cell {
            signs: forms
                .iter()
                .map(|f| Sign::of(&f.eval_unchecked(&sample)))
                .collect(),
            sample,
        })
        .collect())
}
