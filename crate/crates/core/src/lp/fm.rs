//! Fourier–Motzkin elimination over exact rationals.
//!
//! Strict and non-strict inequalities are carried side by side: combining a
//! strict inequality with anything yields a strict one. After every
//! elimination step, inequalities with the same normalized direction are
//! collapsed to the tightest one, and constant inequalities are either
//! dropped (true) or end the run (false).

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{AffineForm, LinearSystem};
use crate::rational::{self, Rational};

/// Outcome of a feasibility query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

/// Exact extrema of an affine form over a closed region, with attaining points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema {
    pub min: Rational,
    pub argmin: Vec<Rational>,
    pub max: Rational,
    pub argmax: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub(crate) struct Ineq {
    pub(crate) form: AffineForm,
    pub(crate) strict: bool,
}

impl Ineq {
    pub(crate) fn new(form: AffineForm, strict: bool) -> Self {
        Ineq { form, strict }
    }
}

pub(crate) fn box_ineqs(bounds: &[(Rational, Rational)], strict: bool) -> Vec<Ineq> {
    let dim = bounds.len();
    let mut out = Vec::with_capacity(2 * dim);
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let x = AffineForm::variable(dim, i);
        out.push(Ineq::new(
            x.sub(&AffineForm::constant(dim, lo.clone())),
            strict,
        ));
        out.push(Ineq::new(
            AffineForm::constant(dim, hi.clone()).sub(&x),
            strict,
        ));
    }
    out
}

/// Eliminated stages: `stages[r]` only mentions variables `< r`.
struct Elimination {
    stages: Vec<Vec<Ineq>>,
}

fn prune(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut kept: Vec<Ineq> = Vec::with_capacity(ineqs.len());
    let mut by_direction: HashMap<Vec<Rational>, usize> = HashMap::new();
    for ineq in ineqs {
        let lead = ineq.form.coeffs().iter().find(|c| !c.is_zero()).cloned();
        let Some(lead) = lead else {
            let c = ineq.form.constant_term();
            let ok = if ineq.strict {
                c.is_positive()
            } else {
                !c.is_negative()
            };
            if !ok {
                return None;
            }
            continue;
        };
        let scaled = Ineq::new(ineq.form.scale(&lead.abs().recip()), ineq.strict);
        match by_direction.get(scaled.form.coeffs()) {
            Some(&slot) => {
                let old = &kept[slot];
                let tighter = scaled.form.constant_term() < old.form.constant_term()
                    || (scaled.form.constant_term() == old.form.constant_term()
                        && scaled.strict
                        && !old.strict);
                if tighter {
                    kept[slot] = scaled;
                }
            }
            None => {
                by_direction.insert(scaled.form.coeffs().to_vec(), kept.len());
                kept.push(scaled);
            }
        }
    }
    Some(kept)
}

fn eliminate_var(ineqs: &[Ineq], var: usize) -> Vec<Ineq> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for ineq in ineqs {
        let c = &ineq.form.coeffs()[var];
        if c.is_positive() {
            pos.push(ineq);
        } else if c.is_negative() {
            neg.push(ineq);
        } else {
            out.push(ineq.clone());
        }
    }
    for p in &pos {
        let p_scaled = p.form.scale(&p.form.coeffs()[var].recip());
        for n in &neg {
            let n_scaled = n.form.scale(&(-&n.form.coeffs()[var]).recip());
            out.push(Ineq::new(p_scaled.add(&n_scaled), p.strict || n.strict));
        }
    }
    out
}

impl Elimination {
    /// `None` when the system is infeasible.
    fn run(ineqs: Vec<Ineq>, dim: usize) -> Option<Elimination> {
        let mut stages = vec![Vec::new(); dim + 1];
        stages[dim] = prune(ineqs)?;
        for r in (1..=dim).rev() {
            stages[r - 1] = prune(eliminate_var(&stages[r], r - 1))?;
        }
        Some(Elimination { stages })
    }

    /// Bounds on variable `var` once the smaller-indexed ones are fixed.
    fn bounds_for(&self, var: usize, prefix: &[Rational]) -> VarBounds {
        let mut b = VarBounds::default();
        for ineq in &self.stages[var + 1] {
            let a = &ineq.form.coeffs()[var];
            if a.is_zero() {
                continue;
            }
            let rest = ineq.form.coeffs()[..var]
                .iter()
                .zip(prefix)
                .fold(ineq.form.constant_term().clone(), |acc, (c, x)| acc + c * x);
            let bound = -rest / a;
            if a.is_positive() {
                b.raise(bound, ineq.strict);
            } else {
                b.lower_upper(bound, ineq.strict);
            }
        }
        b
    }

    /// Extends a feasible prefix to a full feasible point.
    fn complete(&self, mut point: Vec<Rational>, dim: usize) -> Vec<Rational> {
        for var in point.len()..dim {
            let value = self.bounds_for(var, &point).pick();
            point.push(value);
        }
        point
    }
}

#[derive(Default)]
struct VarBounds {
    lower: Option<(Rational, bool)>,
    upper: Option<(Rational, bool)>,
}

impl VarBounds {
    fn raise(&mut self, value: Rational, strict: bool) {
        let replace = match &self.lower {
            None => true,
            Some((v, s)) => value > *v || (value == *v && strict && !s),
        };
        if replace {
            self.lower = Some((value, strict));
        }
    }

    fn lower_upper(&mut self, value: Rational, strict: bool) {
        let replace = match &self.upper {
            None => true,
            Some((v, s)) => value < *v || (value == *v && strict && !s),
        };
        if replace {
            self.upper = Some((value, strict));
        }
    }

    fn pick(&self) -> Rational {
        match (&self.lower, &self.upper) {
            (Some((lo, _)), Some((hi, _))) => {
                if lo == hi {
                    lo.clone()
                } else {
                    rational::midpoint(lo, hi)
                }
            }
            (Some((lo, _)), None) => lo + rational::int(1),
            (None, Some((hi, _))) => hi - rational::int(1),
            (None, None) => Rational::zero(),
        }
    }
}

pub(crate) fn feasible_point(ineqs: Vec<Ineq>, dim: usize) -> Option<Vec<Rational>> {
    let elim = Elimination::run(ineqs, dim)?;
    Some(elim.complete(Vec::with_capacity(dim), dim))
}

fn system_ineqs(sys: &LinearSystem) -> Vec<Ineq> {
    let mut ineqs = box_ineqs(sys.bounds(), false);
    ineqs.extend(
        sys.constraints()
            .iter()
            .map(|c| Ineq::new(c.form.clone(), c.is_strict())),
    );
    ineqs
}

/// Decides whether the system has a rational solution, returning one if so.
pub fn fm_feasible(sys: &LinearSystem) -> Result<Feasibility> {
    if sys.dim() == 0 {
        return Err(Error::precondition(
            "linear system needs at least one variable",
        ));
    }
    Ok(match feasible_point(system_ineqs(sys), sys.dim()) {
        Some(w) => Feasibility::Feasible(w),
        None => Feasibility::Infeasible,
    })
}

/// Maximum over the region of `min_j objectives[j](x)` together with a
/// maximizer. `Ok(None)` when the region is empty.
pub(crate) fn maximize_min(
    region: &[Ineq],
    dim: usize,
    objectives: &[AffineForm],
) -> Option<(Rational, Vec<Rational>)> {
    assert!(!objectives.is_empty(), "maximize_min needs an objective");
    // variable 0 is the level t; the region's variables shift up by one
    let lift = |f: &AffineForm, t_coeff: i64| {
        let mut coeffs = Vec::with_capacity(dim + 1);
        coeffs.push(rational::int(t_coeff));
        coeffs.extend(f.coeffs().iter().cloned());
        AffineForm::new(coeffs, f.constant_term().clone())
    };
    let mut ineqs: Vec<Ineq> = region
        .iter()
        .map(|i| Ineq::new(lift(&i.form, 0), i.strict))
        .collect();
    ineqs.extend(objectives.iter().map(|f| Ineq::new(lift(f, -1), false)));
    let elim = Elimination::run(ineqs, dim + 1)?;
    let (top, _) = elim
        .bounds_for(0, &[])
        .upper
        .expect("objective is bounded on a bounded region");
    let point = elim.complete(vec![top.clone()], dim + 1);
    Some((top, point[1..].to_vec()))
}

/// Exact minimum and maximum of `form` over a region given by non-strict
/// constraints intersected with the system's box.
pub fn affine_extrema(form: &AffineForm, sys: &LinearSystem) -> Result<Extrema> {
    if form.dim() != sys.dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            found: form.dim(),
        });
    }
    if sys.has_strict() {
        return Err(Error::precondition(
            "extrema are only defined over closed regions (non-strict constraints)",
        ));
    }
    let region = system_ineqs(sys);
    let dim = sys.dim();
    let (max, argmax) =
        maximize_min(&region, dim, std::slice::from_ref(form)).ok_or(Error::EmptyRegion)?;
    let (neg_min, argmin) = maximize_min(&region, dim, &[form.neg()]).ok_or(Error::EmptyRegion)?;
    Ok(Extrema {
        min: -neg_min,
        argmin,
        max,
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Constraint;
    use crate::rational::{int, ratio};

    fn x1(c: i64, k: i64) -> AffineForm {
        AffineForm::new(vec![int(c)], int(k))
    }

    #[test]
    fn contradictory_signs_are_infeasible() {
        let sys = LinearSystem::new(
            vec![
                Constraint::positive(x1(1, 0)),
                Constraint::non_negative(x1(-1, 0)),
            ],
            vec![(int(0), int(1))],
        )
        .unwrap();
        assert_eq!(fm_feasible(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn empty_system_returns_box_center() {
        let sys = LinearSystem::unit_cube(2);
        assert_eq!(
            fm_feasible(&sys).unwrap(),
            Feasibility::Feasible(vec![ratio(1, 2), ratio(1, 2)])
        );
    }

    #[test]
    fn disjoint_open_intervals_are_infeasible() {
        let sys = LinearSystem::new(
            vec![
                Constraint::positive(x1(2, -1)),
                Constraint::positive(x1(-3, 1)),
            ],
            vec![(int(0), int(1))],
        )
        .unwrap();
        assert_eq!(fm_feasible(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn strict_touching_bounds_are_infeasible() {
        // x > 1/2 and x <= 1/2
        let sys = LinearSystem::new(
            vec![
                Constraint::positive(x1(2, -1)),
                Constraint::non_negative(x1(-2, 1)),
            ],
            vec![(int(0), int(1))],
        )
        .unwrap();
        assert!(!fm_feasible(&sys).unwrap().is_feasible());
        // x >= 1/2 and x <= 1/2 has exactly one point
        let sys = LinearSystem::new(
            vec![
                Constraint::non_negative(x1(2, -1)),
                Constraint::non_negative(x1(-2, 1)),
            ],
            vec![(int(0), int(1))],
        )
        .unwrap();
        assert_eq!(
            fm_feasible(&sys).unwrap(),
            Feasibility::Feasible(vec![ratio(1, 2)])
        );
    }

    #[test]
    fn mismatched_dimension_is_rejected() {
        let err = LinearSystem::new(
            vec![Constraint::positive(x1(1, 0))],
            vec![(int(0), int(1)), (int(0), int(1))],
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn extrema_on_unit_interval() {
        let sys = LinearSystem::unit_cube(1);
        let e = affine_extrema(&x1(1, 0), &sys).unwrap();
        assert_eq!((e.min, e.max), (int(0), int(1)));
        let e = affine_extrema(&x1(0, 1), &sys).unwrap();
        assert_eq!((e.min, e.max), (int(1), int(1)));
    }

    #[test]
    fn extrema_on_half_square() {
        // x + y over the unit square with x >= y; vertices (0,0), (1,0), (1,1)
        let sys = LinearSystem::unit_cube(2)
            .with(Constraint::non_negative(AffineForm::new(
                vec![int(1), int(-1)],
                int(0),
            )))
            .unwrap();
        let sum = AffineForm::new(vec![int(1), int(1)], int(0));
        let vertices = [[0, 0], [1, 0], [1, 1]];
        let values: Vec<Rational> = vertices
            .iter()
            .map(|v| sum.eval(&[int(v[0]), int(v[1])]).unwrap())
            .collect();
        let e = affine_extrema(&sum, &sys).unwrap();
        assert_eq!(&e.min, values.iter().min().unwrap());
        assert_eq!(&e.max, values.iter().max().unwrap());
        assert_eq!((e.min.clone(), e.max.clone()), (int(0), int(2)));
        assert!(sys.satisfied_by(&e.argmin) && sys.satisfied_by(&e.argmax));
        assert_eq!(sum.eval(&e.argmax).unwrap(), e.max);
    }

    #[test]
    fn extrema_of_empty_region() {
        let sys = LinearSystem::unit_cube(1)
            .with(Constraint::non_negative(x1(1, -2)))
            .unwrap();
        assert_eq!(affine_extrema(&x1(1, 0), &sys), Err(Error::EmptyRegion));
    }
}
