//! Linear-region decomposition of PL terms.
//!
//! A term is split into convex polytopes with nonempty interior, each
//! carrying the affine form the term agrees with there. Binary operations
//! overlay the two decompositions; join and meet split a cell along the
//! hyperplane where the two pieces cross. The decisions of `PlSpace` run
//! one small LP per region, and the compact max-min normal form is read
//! off the regions.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::lp::{self, feasible_point, maximize_min, AffineForm, Ineq};
use crate::pl::{MaxMinNF, PLTerm};
use crate::rational::{self, Rational};

type Bounds = [(Rational, Rational)];

/// `{x in box : walls[i](x) >= 0}`, on which the term equals `form`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Region {
    pub(crate) walls: Vec<AffineForm>,
    pub(crate) form: AffineForm,
}

#[derive(Clone, Debug)]
pub(crate) struct Regions {
    pub(crate) regions: Vec<Region>,
}

fn closed(bounds: &Bounds, walls: &[AffineForm]) -> Vec<Ineq> {
    let mut ineqs = lp::fm_box(bounds);
    ineqs.extend(walls.iter().map(|w| Ineq::new(w.clone(), false)));
    ineqs
}

fn has_interior(bounds: &Bounds, walls: &[AffineForm]) -> bool {
    let mut ineqs = lp::strict_box(bounds);
    ineqs.extend(walls.iter().map(|w| Ineq::new(w.clone(), true)));
    feasible_point(ineqs, bounds.len()).is_some()
}

/// Minimum of `f` over the closed region and a minimizer.
pub(crate) fn min_over(
    bounds: &Bounds,
    walls: &[AffineForm],
    f: &AffineForm,
) -> (Rational, Vec<Rational>) {
    let (v, x) = maximize_min(&closed(bounds, walls), bounds.len(), &[f.neg()])
        .expect("regions are nonempty");
    (-v, x)
}

pub(crate) fn max_over(
    bounds: &Bounds,
    walls: &[AffineForm],
    f: &AffineForm,
) -> (Rational, Vec<Rational>) {
    maximize_min(
        &closed(bounds, walls),
        bounds.len(),
        std::slice::from_ref(f),
    )
    .expect("regions are nonempty")
}

/// Scales so the leading nonzero coefficient is ±1; `None` for constants.
fn normalized(w: &AffineForm) -> Option<AffineForm> {
    let lead = w.coeffs().iter().find(|c| !c.is_zero())?;
    Some(w.scale(&lead.abs().recip()))
}

/// Drops walls implied by the box and the other walls.
fn reduce_walls(bounds: &Bounds, walls: Vec<AffineForm>) -> Vec<AffineForm> {
    let mut by_dir: Vec<AffineForm> = Vec::with_capacity(walls.len());
    for w in walls.iter().filter_map(normalized) {
        match by_dir.iter_mut().find(|v| v.coeffs() == w.coeffs()) {
            Some(v) => {
                if w.constant_term() < v.constant_term() {
                    *v = w;
                }
            }
            None => by_dir.push(w),
        }
    }
    let mut kept = by_dir;
    let mut i = 0;
    while i < kept.len() {
        if !kept[i].min_over_box(bounds).is_negative() {
            kept.remove(i);
            continue;
        }
        let others: Vec<AffineForm> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| w.clone())
            .collect();
        if !others.is_empty() && !min_over(bounds, &others, &kept[i]).0.is_negative() {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Two regions with the same form that differ in exactly one wall, which
/// faces opposite ways, unite to a convex region.
fn merge_partner(a: &Region, b: &Region) -> Option<Vec<AffineForm>> {
    if a.form != b.form || a.walls.len() != b.walls.len() {
        return None;
    }
    let only_a: Vec<&AffineForm> = a.walls.iter().filter(|w| !b.walls.contains(w)).collect();
    let only_b: Vec<&AffineForm> = b.walls.iter().filter(|w| !a.walls.contains(w)).collect();
    if only_a.len() != 1 || only_b.len() != 1 || *only_a[0] != only_b[0].neg() {
        return None;
    }
    Some(
        a.walls
            .iter()
            .filter(|w| *w != only_a[0])
            .cloned()
            .collect(),
    )
}

fn merge(mut regions: Vec<Region>) -> Vec<Region> {
    'outer: loop {
        for i in 0..regions.len() {
            for j in i + 1..regions.len() {
                if let Some(walls) = merge_partner(&regions[i], &regions[j]) {
                    regions.swap_remove(j);
                    regions[i].walls = walls;
                    continue 'outer;
                }
            }
        }
        return regions;
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Join,
    Meet,
}

impl Regions {
    fn single(form: AffineForm) -> Self {
        Regions {
            regions: vec![Region {
                walls: Vec::new(),
                form,
            }],
        }
    }

    fn scale(&self, q: &Rational, dim: usize) -> Self {
        if q.is_zero() {
            return Self::single(AffineForm::zero(dim));
        }
        Regions {
            regions: self
                .regions
                .iter()
                .map(|r| Region {
                    walls: r.walls.clone(),
                    form: r.form.scale(q),
                })
                .collect(),
        }
    }

    /// Common refinement: the nonempty intersections of a region of each.
    pub(crate) fn overlay<'a>(
        &'a self,
        other: &'a Regions,
        bounds: &'a Bounds,
    ) -> impl Iterator<Item = (Vec<AffineForm>, &'a AffineForm, &'a AffineForm)> + 'a {
        self.regions.iter().flat_map(move |ra| {
            other.regions.iter().filter_map(move |rb| {
                let walls: Vec<AffineForm> = ra.walls.iter().chain(&rb.walls).cloned().collect();
                if rb.walls.is_empty() || ra.walls.is_empty() {
                    return Some((walls, &ra.form, &rb.form));
                }
                if !has_interior(bounds, &walls) {
                    return None;
                }
                Some((reduce_walls(bounds, walls), &ra.form, &rb.form))
            })
        })
    }

    fn combine(&self, other: &Regions, op: Op, bounds: &Bounds) -> Self {
        let mut out = Vec::new();
        for (walls, fa, fb) in self.overlay(other, bounds) {
            let (hi, lo) = match op {
                Op::Add => {
                    out.push(Region {
                        walls,
                        form: fa.add(fb),
                    });
                    continue;
                }
                Op::Join => (fa, fb),
                Op::Meet => (fb, fa),
            };
            // `hi` wins where fa >= fb
            let d = fa.sub(fb);
            if !min_over(bounds, &walls, &d).0.is_negative() {
                out.push(Region {
                    walls,
                    form: hi.clone(),
                });
            } else if !max_over(bounds, &walls, &d).0.is_positive() {
                out.push(Region {
                    walls,
                    form: lo.clone(),
                });
            } else {
                let d = normalized(&d).expect("a crossing difference is not constant");
                let mut up = walls.clone();
                up.push(d.clone());
                let mut down = walls;
                down.push(d.neg());
                out.push(Region {
                    walls: reduce_walls(bounds, up),
                    form: hi.clone(),
                });
                out.push(Region {
                    walls: reduce_walls(bounds, down),
                    form: lo.clone(),
                });
            }
        }
        Regions {
            regions: merge(out),
        }
    }

    pub(crate) fn of_term(term: &PLTerm, bounds: &Bounds) -> Regions {
        let simplified = term.simplify();
        let mut memo = HashMap::new();
        build(&simplified, bounds, &mut memo)
    }

    pub(crate) fn forms(&self) -> impl Iterator<Item = &AffineForm> {
        self.regions.iter().map(|r| &r.form)
    }

    /// Max-min form over the distinct pieces: one clause per region,
    /// holding every piece that lies above the region's own piece on it.
    pub(crate) fn to_nf(&self, bounds: &Bounds) -> MaxMinNF {
        let mut pieces: Vec<AffineForm> = Vec::new();
        for f in self.forms() {
            if !pieces.contains(f) {
                pieces.push(f.clone());
            }
        }
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for r in &self.regions {
            let set: Vec<usize> = (0..pieces.len())
                .filter(|&j| {
                    pieces[j] == r.form
                        || !min_over(bounds, &r.walls, &pieces[j].sub(&r.form))
                            .0
                            .is_negative()
                })
                .collect();
            if sets.iter().any(|s| s.iter().all(|j| set.contains(j))) {
                continue;
            }
            sets.retain(|s| !set.iter().all(|j| s.contains(j)));
            sets.push(set);
        }
        let clauses = sets
            .into_iter()
            .map(|s| s.into_iter().map(|j| pieces[j].clone()).collect())
            .collect();
        MaxMinNF::from_clauses(bounds.len(), clauses)
    }
}

fn build_arc(
    t: &Arc<PLTerm>,
    bounds: &Bounds,
    memo: &mut HashMap<*const PLTerm, Arc<Regions>>,
) -> Arc<Regions> {
    let key = Arc::as_ptr(t);
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let r = Arc::new(build(t, bounds, memo));
    memo.insert(key, r.clone());
    r
}

fn build(t: &PLTerm, bounds: &Bounds, memo: &mut HashMap<*const PLTerm, Arc<Regions>>) -> Regions {
    let n = bounds.len();
    match t {
        PLTerm::Generator(i) => Regions::single(AffineForm::variable(n, *i)),
        PLTerm::Unit => Regions::single(AffineForm::constant(n, rational::int(1))),
        PLTerm::Const(q) => Regions::single(AffineForm::constant(n, q.clone())),
        PLTerm::Scale(q, s) => build_arc(s, bounds, memo).scale(q, n),
        PLTerm::Add(l, r) => {
            build_arc(l, bounds, memo).combine(&build_arc(r, bounds, memo), Op::Add, bounds)
        }
        PLTerm::Join(l, r) => {
            build_arc(l, bounds, memo).combine(&build_arc(r, bounds, memo), Op::Join, bounds)
        }
        PLTerm::Meet(l, r) => {
            build_arc(l, bounds, memo).combine(&build_arc(r, bounds, memo), Op::Meet, bounds)
        }
    }
}
