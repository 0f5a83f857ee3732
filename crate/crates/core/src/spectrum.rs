//! The lattice of basic opens `D(a)` of the spectrum of the PL Riesz space.
//!
//! `D(a)` is represented by `a⁺`, and `D(a) <= D(b)` iff `a⁺ ≼ b⁺`.
//! Equality of opens is the induced equivalence; no canonical
//! representative is ever computed.

use num_traits::Signed;

use crate::constructions::{combine, partition_from_cover, Approximation, Partition};
use crate::error::{Error, Result};
use crate::pl::{DominanceResult, PLTerm, PlSpace};
use crate::rational::{self, Rational};

/// A basic open `D(a)`, stored as `a⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecOpen {
    rep: PLTerm,
}

impl SpecOpen {
    pub fn rep(&self) -> &PLTerm {
        &self.rep
    }
}

/// Lattice operations and decisions on basic opens over one domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    space: PlSpace,
}

/// A partition of unity subordinate to a finite cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPartition {
    pub delta: Rational,
    pub parts: Partition<PLTerm>,
}

impl Spectrum {
    pub fn new(space: PlSpace) -> Self {
        Spectrum { space }
    }

    pub fn space(&self) -> &PlSpace {
        &self.space
    }

    pub fn d_of(&self, a: &PLTerm) -> SpecOpen {
        SpecOpen { rep: a.pos() }
    }

    pub fn top(&self) -> SpecOpen {
        SpecOpen {
            rep: PLTerm::unit(),
        }
    }

    pub fn bottom(&self) -> SpecOpen {
        SpecOpen {
            rep: PLTerm::zero(),
        }
    }

    pub fn meet(&self, u: &SpecOpen, v: &SpecOpen) -> SpecOpen {
        SpecOpen {
            rep: u.rep.meet(&v.rep),
        }
    }

    pub fn join(&self, u: &SpecOpen, v: &SpecOpen) -> SpecOpen {
        SpecOpen {
            rep: u.rep.join(&v.rep),
        }
    }

    pub fn join_all(&self, opens: &[SpecOpen]) -> SpecOpen {
        opens
            .iter()
            .fold(self.bottom(), |acc, u| self.join(&acc, u))
    }

    pub fn dominance(&self, u: &SpecOpen, v: &SpecOpen) -> Result<DominanceResult> {
        self.space.dominates(&u.rep, &v.rep)
    }

    pub fn leq(&self, u: &SpecOpen, v: &SpecOpen) -> Result<bool> {
        Ok(self.dominance(u, v)?.is_dominated())
    }

    pub fn equal(&self, u: &SpecOpen, v: &SpecOpen) -> Result<bool> {
        Ok(self.leq(u, v)? && self.leq(v, u)?)
    }

    /// `D(a) = 0` iff `a <= 0`.
    pub fn is_zero(&self, u: &SpecOpen) -> Result<bool> {
        self.space.leq(&u.rep, &PLTerm::zero())
    }

    /// `1 ≼ rep`: the representative is bounded below by a positive constant.
    pub fn is_top(&self, u: &SpecOpen) -> Result<bool> {
        Ok(self
            .space
            .dominates(&PLTerm::unit(), &u.rep)?
            .is_dominated())
    }

    /// `a ∈ (p, q) := (a − p) ∧ (q − a)`.
    pub fn interval_element(a: &PLTerm, p: &Rational, q: &Rational) -> PLTerm {
        a.sub(&PLTerm::constant(p.clone()))
            .meet(&PLTerm::from_constant(q.clone(), a))
    }

    pub fn interval_open(&self, a: &PLTerm, p: &Rational, q: &Rational) -> Result<SpecOpen> {
        if p >= q {
            return Err(Error::precondition("interval needs p < q"));
        }
        Ok(self.d_of(&Self::interval_element(a, p, q)))
    }

    /// `D(rep − s)`, a smaller open; `D(a)` is the union of these over `s > 0`.
    pub fn shrink(&self, u: &SpecOpen, s: &Rational) -> SpecOpen {
        self.d_of(&u.rep.sub(&PLTerm::constant(s.clone())))
    }

    /// For `b1 ∨ b2 = ⊤`, the disjoint pair `c1 = D(b2 − b1)`,
    /// `c2 = D(b1 − b2)` with `c1 ∨ b1 = ⊤` and `c2 ∨ b2 = ⊤`.
    pub fn normality_witness(&self, b1: &SpecOpen, b2: &SpecOpen) -> Result<(SpecOpen, SpecOpen)> {
        if !self.is_top(&self.join(b1, b2))? {
            return Err(Error::precondition("b1 ∨ b2 is not the top open"));
        }
        Ok((
            self.d_of(&b2.rep.sub(&b1.rep)),
            self.d_of(&b1.rep.sub(&b2.rep)),
        ))
    }

    /// Exact minimum over the box of the cover's join.
    pub fn cover_lower_bound(&self, opens: &[SpecOpen]) -> Result<Rational> {
        Ok(self.space.inf(&self.join_all(opens).rep)?.0)
    }

    /// Partition `p_i` with `Σ p_i = 1` and `D(p_i) <= b_i`. With
    /// `delta = None` the largest valid bound is computed.
    pub fn cover_to_partition(
        &self,
        opens: &[SpecOpen],
        delta: Option<Rational>,
    ) -> Result<CoverPartition> {
        if opens.is_empty() {
            return Err(Error::precondition("empty cover"));
        }
        let exact = self.cover_lower_bound(opens)?;
        if !exact.is_positive() {
            return Err(Error::precondition("the opens do not cover the spectrum"));
        }
        let delta = delta.unwrap_or(exact);
        let reps: Vec<PLTerm> = opens.iter().map(|u| u.rep.clone()).collect();
        let parts = partition_from_cover(&self.space, &reps, &delta)?;
        Ok(CoverPartition { delta, parts })
    }

    /// The cover `f ∈ ((k−1)/N, (k+1)/N)`, `k = 0 … N`, of `0 <= f <= 1`.
    pub fn level_cover(&self, f: &PLTerm, n: u32) -> Result<Vec<SpecOpen>> {
        if n == 0 {
            return Err(Error::precondition("N must be positive"));
        }
        (0..=i64::from(n))
            .map(|k| {
                self.interval_open(
                    f,
                    &rational::ratio(k - 1, n.into()),
                    &rational::ratio(k + 1, n.into()),
                )
            })
            .collect()
    }

    /// Density through covers: `a = Σ (k/N) p_k` with `p_k` subordinate to
    /// the level cover, so `|f − a| <= Σ p_k |f − k/N| < 1/N`.
    pub fn cover_density_approx(
        &self,
        f: &PLTerm,
        n: u32,
    ) -> Result<(CoverPartition, Approximation<PLTerm>)> {
        if !self.space.leq(&PLTerm::zero(), f)? || !self.space.leq(f, &PLTerm::unit())? {
            return Err(Error::precondition("f must satisfy 0 <= f <= 1"));
        }
        let cover = self.level_cover(f, n)?;
        let partition = self.cover_to_partition(&cover, None)?;
        let coeffs: Vec<Rational> = (0..=n)
            .map(|k| rational::ratio(k.into(), n.into()))
            .collect();
        let approximant = combine(&self.space, &coeffs, &partition.parts.elements);
        let error = self.space.norm(&f.sub(&approximant))?;
        Ok((partition, Approximation { approximant, error }))
    }

    /// Support condition of a slice partition of `f`:
    /// `v_n ≼ ((f − (n−1)/k) ∧ ((n+1)/k − f))⁺` for every `n`.
    pub fn slice_support_holds(&self, f: &PLTerm, parts: &Partition<PLTerm>) -> Result<bool> {
        let k = parts.len() as i64 - 1;
        for (n, v) in parts.elements.iter().enumerate() {
            let n = n as i64;
            let window =
                self.interval_open(f, &rational::ratio(n - 1, k), &rational::ratio(n + 1, k))?;
            if !self.space.dominates(v, window.rep())?.is_dominated() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
