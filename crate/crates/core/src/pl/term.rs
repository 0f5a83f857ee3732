use std::collections::HashMap;
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};

/// A Riesz-space expression over generators `x_0 … x_{n-1}` and the unit.
///
/// Children are reference counted so the constructions can reuse large
/// subterms without copying them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PLTerm {
    Generator(usize),
    Unit,
    /// The constant `q·1`.
    Const(Rational),
    Add(Arc<PLTerm>, Arc<PLTerm>),
    Scale(Rational, Arc<PLTerm>),
    Join(Arc<PLTerm>, Arc<PLTerm>),
    Meet(Arc<PLTerm>, Arc<PLTerm>),
}

impl PLTerm {
    pub fn gen(i: usize) -> Self {
        PLTerm::Generator(i)
    }

    pub fn unit() -> Self {
        PLTerm::Unit
    }

    pub fn zero() -> Self {
        PLTerm::Const(Rational::zero())
    }

    pub fn constant(q: Rational) -> Self {
        PLTerm::Const(q)
    }

    pub fn add(&self, other: &PLTerm) -> PLTerm {
        PLTerm::Add(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn sub(&self, other: &PLTerm) -> PLTerm {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: Rational) -> PLTerm {
        PLTerm::Scale(q, Arc::new(self.clone()))
    }

    pub fn neg(&self) -> PLTerm {
        self.scale(rational::int(-1))
    }

    pub fn join(&self, other: &PLTerm) -> PLTerm {
        PLTerm::Join(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn meet(&self, other: &PLTerm) -> PLTerm {
        PLTerm::Meet(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    /// `a⁺ = a ∨ 0`
    pub fn pos(&self) -> PLTerm {
        self.join(&PLTerm::zero())
    }

    /// `a⁻ = (−a) ∨ 0`
    pub fn neg_part(&self) -> PLTerm {
        self.neg().join(&PLTerm::zero())
    }

    /// `|a| = a ∨ (−a)`
    pub fn abs(&self) -> PLTerm {
        self.join(&self.neg())
    }

    /// `q·1 − self`
    pub fn from_constant(q: Rational, t: &PLTerm) -> PLTerm {
        PLTerm::constant(q).sub(t)
    }

    pub fn max_generator(&self) -> Option<usize> {
        match self {
            PLTerm::Generator(i) => Some(*i),
            PLTerm::Unit | PLTerm::Const(_) => None,
            PLTerm::Scale(_, t) => t.max_generator(),
            PLTerm::Add(a, b) | PLTerm::Join(a, b) | PLTerm::Meet(a, b) => {
                a.max_generator().max(b.max_generator())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PLTerm::Generator(_) | PLTerm::Unit | PLTerm::Const(_) => 0,
            PLTerm::Scale(_, t) => 1 + t.depth(),
            PLTerm::Add(a, b) | PLTerm::Join(a, b) | PLTerm::Meet(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Structural evaluation; the caller guarantees the point has enough
    /// coordinates.
    pub(crate) fn eval_unchecked(&self, x: &[Rational]) -> Rational {
        match self {
            PLTerm::Generator(i) => x[*i].clone(),
            PLTerm::Unit => Rational::one(),
            PLTerm::Const(q) => q.clone(),
            PLTerm::Add(a, b) => a.eval_unchecked(x) + b.eval_unchecked(x),
            PLTerm::Scale(q, t) => q * t.eval_unchecked(x),
            PLTerm::Join(a, b) => {
                let (a, b) = (a.eval_unchecked(x), b.eval_unchecked(x));
                if a >= b {
                    a
                } else {
                    b
                }
            }
            PLTerm::Meet(a, b) => {
                let (a, b) = (a.eval_unchecked(x), b.eval_unchecked(x));
                if a <= b {
                    a
                } else {
                    b
                }
            }
        }
    }

    /// Folds constants and collapses nested scalings. Shared subterms stay
    /// shared in the output.
    pub fn simplify(&self) -> PLTerm {
        let mut memo = HashMap::new();
        simplify_node(self, &mut memo)
    }
}

fn const_value(t: &PLTerm) -> Option<Rational> {
    match t {
        PLTerm::Unit => Some(Rational::one()),
        PLTerm::Const(q) => Some(q.clone()),
        _ => None,
    }
}

fn simplify_arc(t: &Arc<PLTerm>, memo: &mut HashMap<*const PLTerm, Arc<PLTerm>>) -> Arc<PLTerm> {
    let key = Arc::as_ptr(t);
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let out = Arc::new(simplify_node(t, memo));
    memo.insert(key, out.clone());
    out
}

fn simplify_node(t: &PLTerm, memo: &mut HashMap<*const PLTerm, Arc<PLTerm>>) -> PLTerm {
    match t {
        PLTerm::Generator(_) | PLTerm::Unit | PLTerm::Const(_) => t.clone(),
        PLTerm::Scale(q, inner) => {
            let inner = simplify_arc(inner, memo);
            if q.is_zero() {
                return PLTerm::zero();
            }
            if q.is_one() {
                return (*inner).clone();
            }
            if let Some(c) = const_value(&inner) {
                return PLTerm::Const(q * c);
            }
            if let PLTerm::Scale(r, s) = &*inner {
                let qr = q * r;
                return if qr.is_one() {
                    (**s).clone()
                } else {
                    PLTerm::Scale(qr, s.clone())
                };
            }
            PLTerm::Scale(q.clone(), inner)
        }
        PLTerm::Add(a, b) => {
            let (a, b) = (simplify_arc(a, memo), simplify_arc(b, memo));
            match (const_value(&a), const_value(&b)) {
                (Some(x), Some(y)) => PLTerm::Const(x + y),
                (Some(x), None) if x.is_zero() => (*b).clone(),
                (None, Some(y)) if y.is_zero() => (*a).clone(),
                _ => PLTerm::Add(a, b),
            }
        }
        PLTerm::Join(a, b) | PLTerm::Meet(a, b) => {
            let is_join = matches!(t, PLTerm::Join(..));
            let (a, b) = (simplify_arc(a, memo), simplify_arc(b, memo));
            if a == b {
                return (*a).clone();
            }
            if let (Some(x), Some(y)) = (const_value(&a), const_value(&b)) {
                let pick = if is_join { x.max(y) } else { x.min(y) };
                return PLTerm::Const(pick);
            }
            if is_join {
                PLTerm::Join(a, b)
            } else {
                PLTerm::Meet(a, b)
            }
        }
    }
}

impl ops::Add for &PLTerm {
    type Output = PLTerm;
    fn add(self, rhs: &PLTerm) -> PLTerm {
        PLTerm::add(self, rhs)
    }
}

impl ops::Sub for &PLTerm {
    type Output = PLTerm;
    fn sub(self, rhs: &PLTerm) -> PLTerm {
        PLTerm::sub(self, rhs)
    }
}

impl ops::Neg for &PLTerm {
    type Output = PLTerm;
    fn neg(self) -> PLTerm {
        PLTerm::neg(self)
    }
}

impl ops::BitOr for &PLTerm {
    type Output = PLTerm;
    fn bitor(self, rhs: &PLTerm) -> PLTerm {
        self.join(rhs)
    }
}

impl ops::BitAnd for &PLTerm {
    type Output = PLTerm;
    fn bitand(self, rhs: &PLTerm) -> PLTerm {
        self.meet(rhs)
    }
}

/// Canonical s-expression text.
impl fmt::Display for PLTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rat = |q: &Rational| format!("(rat {} {})", q.numer(), q.denom());
        match self {
            PLTerm::Generator(i) => write!(f, "(gen {i})"),
            PLTerm::Unit => write!(f, "(unit)"),
            PLTerm::Const(q) => write!(f, "{}", rat(q)),
            PLTerm::Add(a, b) => write!(f, "(+ {a} {b})"),
            PLTerm::Scale(q, t) => write!(f, "(scale {} {t})", rat(q)),
            PLTerm::Join(a, b) => write!(f, "(join {a} {b})"),
            PLTerm::Meet(a, b) => write!(f, "(meet {a} {b})"),
        }
    }
}
