use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lp::{self, arrangement_samples, crossing_hyperplanes, feasible_point, Ineq};
use crate::pl::regions::{max_over, min_over, Regions};
use crate::pl::{BoxDomain, MaxMinNF, PLTerm};
use crate::rational::{self, Rational};

/// Limits for the decision procedures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionConfig {
    pub dimension_cap: usize,
    /// Largest multiplier tried when searching for `a <= n·b`.
    pub doubling_ceiling: u64,
}

impl Default for DecisionConfig {
    fn default() -> Self {
        DecisionConfig {
            dimension_cap: lp::DEFAULT_DIMENSION_CAP,
            doubling_ceiling: 1 << 24,
        }
    }
}

/// Outcome of deciding `a ≼ b`, i.e. whether `a⁺ <= n·b⁺` for some `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominanceResult {
    /// The least such `n`.
    Dominated(u64),
    /// A point where `b⁺` vanishes but `a⁺` does not; no multiplier works.
    NotDominated(Vec<Rational>),
}

impl DominanceResult {
    pub fn is_dominated(&self) -> bool {
        matches!(self, DominanceResult::Dominated(_))
    }
}

/// The Riesz space of piecewise-linear functions on a box, with exact
/// decision procedures for its order.
///
/// Decisions run on the linear regions of a term: `d >= 0` holds iff the
/// minimum of each region's piece over the closed region is `>= 0`.
///
/// `negative_point` decides the same question from a normal form alone:
/// on each open cell of the arrangement `{a_ij = 0}` every form has a
/// fixed sign, so one sample per cell suffices, and continuity covers the
/// cell walls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSpace {
    dom: BoxDomain,
    config: DecisionConfig,
}

impl PlSpace {
    pub fn new(dom: BoxDomain) -> Self {
        PlSpace {
            dom,
            config: DecisionConfig::default(),
        }
    }

    pub fn with_config(dom: BoxDomain, config: DecisionConfig) -> Self {
        PlSpace { dom, config }
    }

    pub fn unit_cube(dim: usize) -> Self {
        Self::new(BoxDomain::unit_cube(dim))
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.dom
    }

    pub fn config(&self) -> &DecisionConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.dom.dim()
    }

    fn bounds(&self) -> &[(Rational, Rational)] {
        self.dom.bounds()
    }

    pub fn check_term(&self, t: &PLTerm) -> Result<()> {
        match t.max_generator() {
            Some(index) if index >= self.dim() => Err(Error::GeneratorIndex {
                index,
                dim: self.dim(),
            }),
            _ => Ok(()),
        }
    }

    fn check_cap(&self) -> Result<()> {
        if self.dim() > self.config.dimension_cap {
            return Err(Error::DimensionCap {
                dim: self.dim(),
                cap: self.config.dimension_cap,
            });
        }
        Ok(())
    }

    fn regions(&self, t: &PLTerm) -> Result<Regions> {
        self.check_term(t)?;
        self.check_cap()?;
        Ok(Regions::of_term(t, self.bounds()))
    }

    /// Compact max-min normal form, read off the linear regions of `t`.
    pub fn normalize(&self, t: &PLTerm) -> Result<MaxMinNF> {
        Ok(self.regions(t)?.to_nf(self.bounds()))
    }

    pub fn eval(&self, t: &PLTerm, x: &[Rational]) -> Result<Rational> {
        self.check_term(t)?;
        self.dom.check_point(x)?;
        Ok(t.eval_unchecked(x))
    }

    /// A point of the box where `nf < 0`, if any.
    pub fn negative_point(&self, nf: &MaxMinNF) -> Result<Option<Vec<Rational>>> {
        self.check_cap()?;
        let b = self.bounds();
        // one clause bounded below by zero settles it
        if nf
            .clauses()
            .iter()
            .any(|c| c.iter().all(|f| !f.min_over_box(b).is_negative()))
        {
            return Ok(None);
        }
        let cheap = self.dom.vertices().into_iter().chain([self.dom.center()]);
        for x in cheap {
            if nf.eval(&x).is_negative() {
                return Ok(Some(x));
            }
        }
        let hyperplanes = crossing_hyperplanes(nf.forms(), b);
        Ok(arrangement_samples(&hyperplanes, b)
            .into_iter()
            .find(|x| nf.eval(x).is_negative()))
    }

    /// A point where `a > b`, or `None` when `a <= b` on the whole box.
    pub fn leq_counterexample(&self, a: &PLTerm, b: &PLTerm) -> Result<Option<Vec<Rational>>> {
        let bounds = self.bounds();
        let diff = self.regions(&b.sub(a))?;
        for r in &diff.regions {
            let (m, x) = min_over(bounds, &r.walls, &r.form);
            if m.is_negative() {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    pub fn leq(&self, a: &PLTerm, b: &PLTerm) -> Result<bool> {
        Ok(self.leq_counterexample(a, b)?.is_none())
    }

    /// Pointwise equality on the box.
    pub fn equal(&self, a: &PLTerm, b: &PLTerm) -> Result<bool> {
        Ok(self.leq(a, b)? && self.leq(b, a)?)
    }

    /// Maximum over the box and a maximizer.
    pub fn sup(&self, t: &PLTerm) -> Result<(Rational, Vec<Rational>)> {
        let bounds = self.bounds();
        Ok(self
            .regions(t)?
            .regions
            .iter()
            .map(|r| max_over(bounds, &r.walls, &r.form))
            .max_by(|a, b| a.0.cmp(&b.0))
            .expect("a term has a region"))
    }

    /// Minimum over the box and a minimizer.
    pub fn inf(&self, t: &PLTerm) -> Result<(Rational, Vec<Rational>)> {
        let bounds = self.bounds();
        Ok(self
            .regions(t)?
            .regions
            .iter()
            .map(|r| min_over(bounds, &r.walls, &r.form))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("a term has a region"))
    }

    /// `inf{q : |a| <= q·1}`, which on a compact box is `max |a|`.
    pub fn norm(&self, a: &PLTerm) -> Result<Rational> {
        let (hi, _) = self.sup(a)?;
        let (lo, _) = self.inf(a)?;
        Ok(rational::max(&hi, &-lo).clone())
    }

    /// The one-sided bound `inf{q : a <= q·1}`, i.e. `max a`.
    pub fn upper_bound(&self, a: &PLTerm) -> Result<Rational> {
        Ok(self.sup(a)?.0)
    }

    /// Decides `a⁺ ≼ b⁺`.
    ///
    /// On the common refinement of the regions of `a⁺` and `b⁺` both are
    /// affine. A point with `b⁺ = 0 < a⁺` on some cell refutes every
    /// multiplier. Otherwise searches `n = 1, 2, 4, …` up to the configured
    /// ceiling and bisects down to the least `n` with `a⁺ <= n·b⁺`, each
    /// candidate decided exactly cell by cell.
    pub fn dominates(&self, a: &PLTerm, b: &PLTerm) -> Result<DominanceResult> {
        let bounds = self.bounds();
        let ra = self.regions(&a.pos())?;
        let rb = self.regions(&b.pos())?;
        let mut cells = Vec::new();
        for (walls, alpha, beta) in ra.overlay(&rb, bounds) {
            // cells where a⁺ vanishes never constrain n
            if !max_over(bounds, &walls, alpha).0.is_positive() {
                continue;
            }
            let mut ineqs = lp::fm_box(bounds);
            ineqs.extend(walls.iter().map(|w| Ineq::new(w.clone(), false)));
            ineqs.push(Ineq::new(alpha.clone(), true));
            ineqs.push(Ineq::new(beta.neg(), false));
            if let Some(w) = feasible_point(ineqs, self.dim()) {
                return Ok(DominanceResult::NotDominated(w));
            }
            cells.push((walls, alpha.clone(), beta.clone()));
        }

        let holds = |n: u64| -> bool {
            let n = rational::from_u64(n);
            cells.iter().all(|(walls, alpha, beta)| {
                let gap = beta.scale(&n).sub(alpha);
                !min_over(bounds, walls, &gap).0.is_negative()
            })
        };

        let ceiling = self.config.doubling_ceiling.max(1);
        let mut hi = 1u64;
        while !holds(hi) {
            if hi >= ceiling {
                return Err(Error::DoublingCeiling { ceiling });
            }
            hi = (hi * 2).min(ceiling);
        }
        // invariant: holds(hi), and everything <= lo fails (lo = 0 is vacuous)
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if holds(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(DominanceResult::Dominated(hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x() -> PLTerm {
        PLTerm::gen(0)
    }

    fn c(q: Rational) -> PLTerm {
        PLTerm::constant(q)
    }

    #[test]
    fn order_examples() {
        let s = PlSpace::unit_cube(2);
        let y = PLTerm::gen(1);
        assert!(s.leq(&x(), &x()).unwrap());
        assert!(s.leq(&x(), &x().join(&y)).unwrap());
        assert!(!s.leq(&x().join(&y), &x()).unwrap());
        let s1 = PlSpace::unit_cube(1);
        let tent = x().meet(&PLTerm::from_constant(int(1), &x()));
        assert!(s1.leq(&tent, &c(ratio(1, 2))).unwrap());
        assert!(!s1.leq(&tent, &c(ratio(1, 3))).unwrap());
    }

    #[test]
    fn counterexample_is_genuine() {
        let s = PlSpace::unit_cube(1);
        let a = x();
        let b = c(ratio(9, 10));
        let w = s.leq_counterexample(&a, &b).unwrap().unwrap();
        assert!(s.eval(&a, &w).unwrap() > s.eval(&b, &w).unwrap());
    }

    #[test]
    fn lattice_parts() {
        let s = PlSpace::unit_cube(1);
        assert!(s.equal(&PLTerm::unit().pos(), &PLTerm::unit()).unwrap());
        assert!(s
            .equal(&PLTerm::unit().neg().pos(), &PLTerm::zero())
            .unwrap());
        let a = x().sub(&c(ratio(1, 2)));
        assert_eq!(s.eval(&a.abs(), &[int(0)]).unwrap(), ratio(1, 2));
        assert!(s.equal(&a, &a.pos().sub(&a.neg_part())).unwrap());
    }

    #[test]
    fn norms() {
        let s = PlSpace::unit_cube(1);
        assert_eq!(s.norm(&PLTerm::unit()).unwrap(), int(1));
        assert_eq!(s.norm(&PLTerm::zero()).unwrap(), int(0));
        let a = x().sub(&c(ratio(1, 2)));
        // breakpoint-free in 1D: |a| peaks at an endpoint
        let oracle = [int(0), int(1)]
            .iter()
            .map(|p| s.eval(&a, std::slice::from_ref(p)).unwrap().abs())
            .max()
            .unwrap();
        assert_eq!(s.norm(&a).unwrap(), oracle);
        assert_eq!(oracle, ratio(1, 2));
        // the one-sided bound differs for functions that are mostly negative
        let b = x().sub(&c(int(2)));
        assert_eq!(s.upper_bound(&b).unwrap(), int(-1));
        assert_eq!(s.norm(&b).unwrap(), int(2));
    }

    #[test]
    fn dominance_examples() {
        let s = PlSpace::unit_cube(1);
        assert_eq!(
            s.dominates(&x(), &x().scale(int(2))).unwrap(),
            DominanceResult::Dominated(1)
        );
        let tent = x().meet(&PLTerm::from_constant(int(1), &x()));
        match s.dominates(&PLTerm::unit(), &tent).unwrap() {
            DominanceResult::NotDominated(w) => {
                assert!(w == vec![int(0)] || w == vec![int(1)]);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        let shifted = x().sub(&c(ratio(1, 2))).pos();
        assert_eq!(
            s.dominates(&shifted, &x()).unwrap(),
            DominanceResult::Dominated(1)
        );
        assert!(s.leq(&shifted, &x()).unwrap());
        // 1 <= 4·(x ∨ 1/4) but not 3·(x ∨ 1/4)
        assert_eq!(
            s.dominates(&PLTerm::unit(), &x().join(&c(ratio(1, 4))))
                .unwrap(),
            DominanceResult::Dominated(4)
        );
    }

    #[test]
    fn doubling_ceiling_is_reported() {
        let cfg = DecisionConfig {
            dimension_cap: 3,
            doubling_ceiling: 8,
        };
        let s = PlSpace::with_config(BoxDomain::unit_cube(1), cfg);
        let b = x().join(&c(ratio(1, 100)));
        assert_eq!(
            s.dominates(&PLTerm::unit(), &b),
            Err(Error::DoublingCeiling { ceiling: 8 })
        );
    }

    #[test]
    fn out_of_box_and_bad_generator() {
        let s = PlSpace::unit_cube(1);
        assert!(matches!(
            s.eval(&x(), &[int(2)]),
            Err(Error::OutsideBox { index: 0 })
        ));
        assert!(matches!(
            s.leq(&PLTerm::gen(3), &x()),
            Err(Error::GeneratorIndex { index: 3, dim: 1 })
        ));
        let big = PlSpace::unit_cube(4);
        assert!(matches!(big.norm(&x()), Err(Error::DimensionCap { .. })));
    }
}
