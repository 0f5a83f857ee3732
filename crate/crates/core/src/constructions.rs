//! Partitions of unity built from lattice operations alone, generic over
//! any Riesz space with a strong unit.

use std::fmt::Debug;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::falgebra::FinVec;
use crate::pl::{PLTerm, PlSpace};
use crate::rational::{self, Rational};

/// A Riesz space with strong unit and a decidable order.
pub trait RieszSpace {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    /// `inf{q : |a| <= q·1}`
    fn norm(&self, a: &Self::Elem) -> Result<Rational>;

    fn constant(&self, q: &Rational) -> Self::Elem {
        self.scale(q, &self.unit())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&rational::int(-1), b))
    }

    fn pos(&self, a: &Self::Elem) -> Self::Elem {
        self.join(a, &self.zero())
    }

    fn abs(&self, a: &Self::Elem) -> Self::Elem {
        self.join(a, &self.scale(&rational::int(-1), a))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(None, |acc: Option<Self::Elem>, x| {
                Some(match acc {
                    None => x.clone(),
                    Some(a) => self.add(&a, x),
                })
            })
            .unwrap_or_else(|| self.zero())
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool> {
        Ok(self.leq(a, b)? && self.leq(b, a)?)
    }

    fn in_unit_range(&self, a: &Self::Elem) -> Result<bool> {
        Ok(self.leq(&self.zero(), a)? && self.leq(a, &self.unit())?)
    }
}

/// A Riesz space with a (commutative, almost-f) multiplication.
pub trait ProductSpace: RieszSpace {
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl RieszSpace for PlSpace {
    type Elem = PLTerm;

    fn zero(&self) -> PLTerm {
        PLTerm::zero()
    }
    fn unit(&self) -> PLTerm {
        PLTerm::unit()
    }
    fn add(&self, a: &PLTerm, b: &PLTerm) -> PLTerm {
        a.add(b)
    }
    fn scale(&self, q: &Rational, a: &PLTerm) -> PLTerm {
        a.scale(q.clone())
    }
    fn join(&self, a: &PLTerm, b: &PLTerm) -> PLTerm {
        a.join(b)
    }
    fn meet(&self, a: &PLTerm, b: &PLTerm) -> PLTerm {
        a.meet(b)
    }
    fn leq(&self, a: &PLTerm, b: &PLTerm) -> Result<bool> {
        PlSpace::leq(self, a, b)
    }
    fn norm(&self, a: &PLTerm) -> Result<Rational> {
        PlSpace::norm(self, a)
    }
    fn constant(&self, q: &Rational) -> PLTerm {
        PLTerm::constant(q.clone())
    }
}

/// `ℚ^m` with pointwise order and product; the unit is all ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinSpace {
    pub m: usize,
}

impl FinSpace {
    pub fn new(m: usize) -> Self {
        FinSpace { m }
    }
}

impl RieszSpace for FinSpace {
    type Elem = FinVec;

    fn zero(&self) -> FinVec {
        FinVec::zero(self.m)
    }
    fn unit(&self) -> FinVec {
        FinVec::unit(self.m)
    }
    fn add(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.add(b)
    }
    fn scale(&self, q: &Rational, a: &FinVec) -> FinVec {
        a.scale(q)
    }
    fn join(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.join(b)
    }
    fn meet(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.meet(b)
    }
    fn leq(&self, a: &FinVec, b: &FinVec) -> Result<bool> {
        Ok(a.leq(b))
    }
    fn norm(&self, a: &FinVec) -> Result<Rational> {
        Ok(a.norm())
    }
    fn constant(&self, q: &Rational) -> FinVec {
        FinVec::constant(self.m, q.clone())
    }
}

impl ProductSpace for FinSpace {
    fn mul(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.mul(b)
    }
}

/// A list `u_i` meant to satisfy `Σ u_i = 1` and `0 <= u_i <= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition<E> {
    pub elements: Vec<E>,
}

impl<E: Clone + Debug> Partition<E> {
    pub fn new(elements: Vec<E>) -> Self {
        Partition { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Whether `parts` is a partition of unity in `space`.
pub fn is_partition<S: RieszSpace>(space: &S, parts: &Partition<S::Elem>) -> Result<bool> {
    if parts.is_empty() {
        return Ok(false);
    }
    for u in &parts.elements {
        if !space.in_unit_range(u)? {
            return Ok(false);
        }
    }
    space.equal(&space.sum(&parts.elements), &space.unit())
}

/// One inequality of a proof, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub label: String,
    pub value: Rational,
    pub bound: Rational,
    pub holds: bool,
}

/// A named list of `value <= bound` checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsLedger {
    pub entries: Vec<LedgerEntry>,
}

impl BoundsLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, label: impl Into<String>, value: Rational, bound: Rational) {
        let holds = value <= bound;
        self.entries.push(LedgerEntry {
            label: label.into(),
            value,
            bound,
            holds,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn get(&self, label: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }
}

fn require_unit_range<S: RieszSpace>(space: &S, f: &S::Elem, what: &str) -> Result<()> {
    if space.in_unit_range(f)? {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{what} must satisfy 0 <= {what} <= 1"
        )))
    }
}

/// The level functions `u_n = k·((f − n/k)⁺ ∧ 1/k)` for `0 <= n < k`;
/// each lies in `[0, 1]` and they decrease in `n`.
pub fn slice_levels<S: RieszSpace>(space: &S, f: &S::Elem, k: u32) -> Vec<S::Elem> {
    let kq = rational::from_u64(k.into());
    let step = kq.recip();
    (0..k)
        .map(|n| {
            let level = space.constant(&(rational::from_u64(n.into()) / &kq));
            let above = space.pos(&space.sub(f, &level));
            space.scale(&kq, &space.meet(&above, &space.constant(&step)))
        })
        .collect()
}

/// Freudenthal slicing of `0 <= f <= 1` into `k + 1` pieces `v_0 … v_k`:
/// `v_0 = 1 − u_0`, `v_n = u_{n−1} − u_n`, `v_k = u_{k−1}`. Each `v_n` is
/// supported where `f` is within `1/k` of `n/k`, and `v_n ∧ v_m = 0` when
/// `|n − m| > 1`.
pub fn slice_partition<S: RieszSpace>(
    space: &S,
    f: &S::Elem,
    k: u32,
) -> Result<Partition<S::Elem>> {
    if k == 0 {
        return Err(Error::precondition("slice count k must be positive"));
    }
    require_unit_range(space, f, "f")?;
    let u = slice_levels(space, f, k);
    let mut v = Vec::with_capacity(k as usize + 1);
    v.push(space.sub(&space.unit(), &u[0]));
    for n in 1..k as usize {
        v.push(space.sub(&u[n - 1], &u[n]));
    }
    v.push(u[k as usize - 1].clone());
    Ok(Partition::new(v))
}

/// Exact checks on a slice partition that hold in every Riesz space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub sums_to_unit: bool,
    pub in_unit_range: bool,
    /// `v_n ∧ v_m = 0` whenever `|n − m| > 1`.
    pub near_disjoint: bool,
}

impl SliceReport {
    pub fn holds(&self) -> bool {
        self.sums_to_unit && self.in_unit_range && self.near_disjoint
    }
}

pub fn check_slice_partition<S: RieszSpace>(
    space: &S,
    parts: &Partition<S::Elem>,
) -> Result<SliceReport> {
    let v = &parts.elements;
    let sums_to_unit = space.equal(&space.sum(v), &space.unit())?;
    let mut in_unit_range = true;
    for x in v {
        in_unit_range &= space.in_unit_range(x)?;
    }
    // with everything positive, v_n ∧ (v_{n+2} ∨ … ∨ v_k) = 0 covers all pairs
    let mut near_disjoint = true;
    for n in 0..v.len().saturating_sub(2) {
        let far = v[n + 2..]
            .iter()
            .skip(1)
            .fold(v[n + 2].clone(), |acc, x| space.join(&acc, x));
        near_disjoint &= space.leq(&space.meet(&v[n], &far), &space.zero())?;
        if !near_disjoint {
            break;
        }
    }
    Ok(SliceReport {
        sums_to_unit,
        in_unit_range,
        near_disjoint,
    })
}

/// `max_n ‖f·v_n − (n/k)·v_n‖`; at most `1/k` for a slice partition.
pub fn slice_level_error<S: ProductSpace>(
    space: &S,
    f: &S::Elem,
    parts: &Partition<S::Elem>,
) -> Result<Rational> {
    let k = rational::from_u64(parts.len() as u64 - 1);
    let mut worst = Rational::zero();
    for (n, v) in parts.elements.iter().enumerate() {
        let level = rational::from_u64(n as u64) / &k;
        let gap = space.sub(&space.mul(f, v), &space.scale(&level, v));
        worst = rational::max(&worst, &space.norm(&gap)?).clone();
    }
    Ok(worst)
}

/// The products `w_n = v_i · v'_j`, reindexed row-major as
/// `n = i·(k' + 1) + j`, with the slice levels `α_n = i/k`, `β_n = j/k'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointPartition<E> {
    pub elements: Vec<E>,
    pub index: Vec<(usize, usize)>,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
}

impl<E: Clone + Debug> JointPartition<E> {
    pub fn as_partition(&self) -> Partition<E> {
        Partition::new(self.elements.clone())
    }
}

pub fn joint_partition<S: ProductSpace>(
    space: &S,
    v: &Partition<S::Elem>,
    w: &Partition<S::Elem>,
) -> Result<JointPartition<S::Elem>> {
    if v.is_empty() || w.is_empty() {
        return Err(Error::precondition("joint partition of an empty partition"));
    }
    let levels = |len: usize, i: usize| {
        if len == 1 {
            Rational::zero()
        } else {
            rational::ratio(i as i64, len as i64 - 1)
        }
    };
    let mut out = JointPartition {
        elements: Vec::with_capacity(v.len() * w.len()),
        index: Vec::with_capacity(v.len() * w.len()),
        alpha: Vec::with_capacity(v.len() * w.len()),
        beta: Vec::with_capacity(v.len() * w.len()),
    };
    for (i, vi) in v.elements.iter().enumerate() {
        for (j, wj) in w.elements.iter().enumerate() {
            out.elements.push(space.mul(vi, wj));
            out.index.push((i, j));
            out.alpha.push(levels(v.len(), i));
            out.beta.push(levels(w.len(), j));
        }
    }
    Ok(out)
}

/// `Σ coeffs_n · parts_n`.
pub fn combine<S: RieszSpace>(space: &S, coeffs: &[Rational], parts: &[S::Elem]) -> S::Elem {
    let terms: Vec<S::Elem> = coeffs
        .iter()
        .zip(parts)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, p)| space.scale(c, p))
        .collect();
    space.sum(&terms)
}

/// Partition of unity subordinate to a finite cover by positive elements
/// `b_i` whose join is at least `δ > 0`:
/// `q_i = (b_i − δ/2)⁺`, `r_i = (2/δ)(q_1 ∨ … ∨ q_i) ∧ 1`, `p_i = r_i − r_{i−1}`.
/// The sum telescopes to `r_K = 1`, and `0 <= p_i <= (2/δ) q_i`, so each
/// `p_i` is dominated by `b_i`.
pub fn partition_from_cover<S: RieszSpace>(
    space: &S,
    cover: &[S::Elem],
    delta: &Rational,
) -> Result<Partition<S::Elem>> {
    if cover.is_empty() {
        return Err(Error::precondition("a cover needs at least one element"));
    }
    if !delta.is_positive() {
        return Err(Error::precondition("δ must be positive"));
    }
    let whole = cover[1..]
        .iter()
        .fold(cover[0].clone(), |acc, b| space.join(&acc, b));
    if !space.leq(&space.constant(delta), &whole)? {
        return Err(Error::precondition(
            "δ is not a lower bound of the cover's join",
        ));
    }
    let half = delta / rational::int(2);
    let gain = rational::int(2) / delta;
    let one = space.unit();
    let mut running: Option<S::Elem> = None;
    let mut prev = space.zero();
    let mut parts = Vec::with_capacity(cover.len());
    for b in cover {
        let q = space.pos(&space.sub(b, &space.constant(&half)));
        let acc = match running {
            None => q,
            Some(r) => space.join(&r, &q),
        };
        let r = space.meet(&space.scale(&gain, &acc), &one);
        parts.push(space.sub(&r, &prev));
        prev = r;
        running = Some(acc);
    }
    Ok(Partition::new(parts))
}

/// A staircase approximant of `f` together with its exact distance `‖f − a‖`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation<E> {
    pub approximant: E,
    pub error: Rational,
}

/// `a = Σ_n (n/N) v_n` over the slice partition of `0 <= f <= 1`.
pub fn freudenthal_approx<S: RieszSpace>(
    space: &S,
    f: &S::Elem,
    n: u32,
) -> Result<Approximation<S::Elem>> {
    let parts = slice_partition(space, f, n)?;
    let coeffs: Vec<Rational> = (0..=n)
        .map(|i| rational::ratio(i.into(), n.into()))
        .collect();
    let approximant = combine(space, &coeffs, &parts.elements);
    let error = space.norm(&space.sub(f, &approximant))?;
    Ok(Approximation { approximant, error })
}

/// `|α_n − α_m|` maximized over pairs with `w_n ∧ w_m ≠ 0`.
pub fn overlap_coefficient_gap<S: RieszSpace>(
    space: &S,
    parts: &[S::Elem],
    coeffs: &[Rational],
) -> Result<Rational> {
    let mut worst = Rational::zero();
    // zero parts overlap nothing
    let mut live = Vec::with_capacity(parts.len());
    for (n, p) in parts.iter().enumerate() {
        if !space.leq(&space.abs(p), &space.zero())? {
            live.push(n);
        }
    }
    for (i, &n) in live.iter().enumerate() {
        for &m in &live[i + 1..] {
            let gap = (&coeffs[n] - &coeffs[m]).abs();
            if gap <= worst {
                continue;
            }
            if !space.leq(&space.meet(&parts[n], &parts[m]), &space.zero())? {
                worst = gap;
            }
        }
    }
    Ok(worst)
}
