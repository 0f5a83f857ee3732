//! Max-of-mins normal forms of piecewise-linear terms.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::lp::{maximize_min, AffineForm};
use crate::pl::{BoxDomain, PLTerm};
use crate::rational::{self, Rational};

/// `value(x) = max_i min_j clauses[i][j](x)`.
///
/// Every operation prunes against the domain box: a form that is
/// everywhere above another form of the same clause is dropped, and so is
/// a clause that is everywhere below another clause (detected form by
/// form). Pruning never changes the value at any point of the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxMinNF {
    dim: usize,
    clauses: Vec<Vec<AffineForm>>,
}

/// `lower <= upper` everywhere on the box.
fn below_on_box(lower: &AffineForm, upper: &AffineForm, bounds: &[(Rational, Rational)]) -> bool {
    !upper.sub(lower).min_over_box(bounds).is_negative()
}

fn prune_clause(forms: Vec<AffineForm>, bounds: &[(Rational, Rational)]) -> Vec<AffineForm> {
    let mut kept: Vec<AffineForm> = Vec::with_capacity(forms.len());
    for f in forms {
        if kept.iter().any(|g| below_on_box(g, &f, bounds)) {
            continue;
        }
        kept.retain(|g| !below_on_box(&f, g, bounds));
        kept.push(f);
    }
    kept
}

/// `min c <= min d` everywhere, witnessed form by form.
fn clause_below(c: &[AffineForm], d: &[AffineForm], bounds: &[(Rational, Rational)]) -> bool {
    d.iter()
        .all(|dj| c.iter().any(|ci| below_on_box(ci, dj, bounds)))
}

fn prune_clauses(
    clauses: Vec<Vec<AffineForm>>,
    bounds: &[(Rational, Rational)],
) -> Vec<Vec<AffineForm>> {
    let mut kept: Vec<Vec<AffineForm>> = Vec::with_capacity(clauses.len());
    for c in clauses {
        let c = prune_clause(c, bounds);
        if kept.iter().any(|d| clause_below(&c, d, bounds)) {
            continue;
        }
        kept.retain(|d| !clause_below(d, &c, bounds));
        kept.push(c);
    }
    kept
}

impl MaxMinNF {
    pub fn affine(form: AffineForm) -> Self {
        MaxMinNF {
            dim: form.dim(),
            clauses: vec![vec![form]],
        }
    }

    pub(crate) fn from_clauses(dim: usize, clauses: Vec<Vec<AffineForm>>) -> Self {
        debug_assert!(!clauses.is_empty() && clauses.iter().all(|c| !c.is_empty()));
        MaxMinNF { dim, clauses }
    }

    pub fn constant(dim: usize, q: Rational) -> Self {
        Self::affine(AffineForm::constant(dim, q))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clauses(&self) -> &[Vec<AffineForm>] {
        &self.clauses
    }

    pub fn forms(&self) -> impl Iterator<Item = &AffineForm> {
        self.clauses.iter().flatten()
    }

    pub fn form_count(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|f| f.eval_unchecked(x))
                    .min()
                    .expect("clauses are nonempty")
            })
            .max()
            .expect("normal form has a clause")
    }

    pub fn join(&self, other: &MaxMinNF, bounds: &[(Rational, Rational)]) -> MaxMinNF {
        let clauses = self.clauses.iter().chain(&other.clauses).cloned().collect();
        MaxMinNF {
            dim: self.dim,
            clauses: prune_clauses(clauses, bounds),
        }
    }

    pub fn meet(&self, other: &MaxMinNF, bounds: &[(Rational, Rational)]) -> MaxMinNF {
        let mut clauses = Vec::with_capacity(self.clauses.len() * other.clauses.len());
        for c in &self.clauses {
            for d in &other.clauses {
                clauses.push(c.iter().chain(d).cloned().collect());
            }
        }
        MaxMinNF {
            dim: self.dim,
            clauses: prune_clauses(clauses, bounds),
        }
    }

    pub fn add(&self, other: &MaxMinNF, bounds: &[(Rational, Rational)]) -> MaxMinNF {
        let mut clauses = Vec::with_capacity(self.clauses.len() * other.clauses.len());
        for c in &self.clauses {
            for d in &other.clauses {
                let mut sums = Vec::with_capacity(c.len() * d.len());
                for f in c {
                    for g in d {
                        sums.push(f.add(g));
                    }
                }
                clauses.push(sums);
            }
        }
        MaxMinNF {
            dim: self.dim,
            clauses: prune_clauses(clauses, bounds),
        }
    }

    /// Scaling by a negative rational turns max-of-mins into min-of-maxes,
    /// which is redistributed back into max-of-mins.
    pub fn scale(&self, q: &Rational, bounds: &[(Rational, Rational)]) -> MaxMinNF {
        if q.is_zero() {
            return MaxMinNF::constant(self.dim, Rational::zero());
        }
        let scaled: Vec<Vec<AffineForm>> = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|f| f.scale(q)).collect())
            .collect();
        if q.is_positive() {
            return MaxMinNF {
                dim: self.dim,
                clauses: scaled,
            };
        }
        // min_i max_j s_ij as the meet over i of the joins max_j s_ij
        let mut acc: Option<MaxMinNF> = None;
        for c in scaled {
            let joins = MaxMinNF {
                dim: self.dim,
                clauses: prune_clauses(c.into_iter().map(|f| vec![f]).collect(), bounds),
            };
            acc = Some(match acc {
                None => joins,
                Some(a) => a.meet(&joins, bounds),
            });
        }
        acc.expect("normal form has a clause")
    }

    pub fn neg(&self, bounds: &[(Rational, Rational)]) -> MaxMinNF {
        self.scale(&rational::int(-1), bounds)
    }

    /// Maximum over the closed box and a point attaining it.
    pub fn sup(&self, dom: &BoxDomain) -> (Rational, Vec<Rational>) {
        let region = crate::lp::fm_box(dom.bounds());
        self.clauses
            .iter()
            .map(|c| maximize_min(&region, dom.dim(), c).expect("box is nonempty"))
            .max_by(|a, b| a.0.cmp(&b.0))
            .expect("normal form has a clause")
    }

    /// Normal form by syntactic distribution, with the term simplified
    /// first. `PlSpace::normalize` gives a far smaller equivalent form.
    pub fn of_term(term: &PLTerm, dom: &BoxDomain) -> MaxMinNF {
        let simplified = term.simplify();
        let mut memo = HashMap::new();
        let nf = build(&simplified, dom, &mut memo);
        Rc::try_unwrap(nf).unwrap_or_else(|rc| (*rc).clone())
    }
}

fn build_arc(
    t: &Arc<PLTerm>,
    dom: &BoxDomain,
    memo: &mut HashMap<*const PLTerm, Rc<MaxMinNF>>,
) -> Rc<MaxMinNF> {
    let key = Arc::as_ptr(t);
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let nf = build(t, dom, memo);
    memo.insert(key, nf.clone());
    nf
}

fn build(
    t: &PLTerm,
    dom: &BoxDomain,
    memo: &mut HashMap<*const PLTerm, Rc<MaxMinNF>>,
) -> Rc<MaxMinNF> {
    let n = dom.dim();
    let b = dom.bounds();
    Rc::new(match t {
        PLTerm::Generator(i) => MaxMinNF::affine(AffineForm::variable(n, *i)),
        PLTerm::Unit => MaxMinNF::constant(n, rational::int(1)),
        PLTerm::Const(q) => MaxMinNF::constant(n, q.clone()),
        PLTerm::Scale(q, s) => build_arc(s, dom, memo).scale(q, b),
        PLTerm::Add(l, r) => build_arc(l, dom, memo).add(&build_arc(r, dom, memo), b),
        PLTerm::Join(l, r) => build_arc(l, dom, memo).join(&build_arc(r, dom, memo), b),
        PLTerm::Meet(l, r) => build_arc(l, dom, memo).meet(&build_arc(r, dom, memo), b),
    })
}

impl fmt::Display for MaxMinNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "max(")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "min(")?;
            for (j, form) in c.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{form}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}
