//! The uniform bound `[(f ∧ g)h − n f (g ∧ h)]⁺ <= 2/m` for `n >= m²`,
//! proved pointwise by an overlapping case split and glued back together
//! through a partition of unity subordinate to a finite cover.

use num_traits::{Signed, Zero};

use crate::constructions::{BoundsLedger, FinSpace, Partition, RieszSpace};
use crate::error::{Error, Result};
use crate::falgebra::FinVec;
use crate::rational::{self, Rational};

/// The constructive split: every `x` in `[0, 1]` satisfies `x >= 1/m` or
/// `x <= 2/m`, and on `[1/m, 2/m]` both hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DichotomyBranch {
    AtLeast(Rational),
    AtMost(Rational),
}

fn check_unit(x: &Rational, what: &str) -> Result<()> {
    if x.is_negative() || *x > rational::int(1) {
        return Err(Error::precondition(format!("{what} must lie in [0, 1]")));
    }
    Ok(())
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::precondition("m must be positive"));
    }
    Ok(())
}

pub fn dichotomy(x: &Rational, m: u32) -> Result<DichotomyBranch> {
    check_m(m)?;
    check_unit(x, "x")?;
    let lower = rational::ratio(1, m.into());
    Ok(if *x >= lower {
        DichotomyBranch::AtLeast(lower)
    } else {
        DichotomyBranch::AtMost(rational::ratio(2, m.into()))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    F,
    G,
    H,
}

/// Which branch of the case analysis bounds the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiniCase {
    /// One factor is at most `2/m`, so `(f ∧ g)h` already is.
    SmallFactor(Factor),
    /// All three are at least `1/m`: `n f (g ∧ h) >= 1 >= (f ∧ g)h`.
    AllLarge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseDini {
    pub n: u64,
    pub value: Rational,
    pub case: DiniCase,
    /// `2/m` for a small factor, `0` when all are large.
    pub case_bound: Rational,
}

/// `[(f ∧ g)h − n f (g ∧ h)]⁺` for scalars.
pub fn dini_value(f: &Rational, g: &Rational, h: &Rational, n: u64) -> Rational {
    let left = rational::min(f, g) * h;
    let right = rational::from_u64(n) * f * rational::min(g, h);
    rational::positive_part(&(left - right))
}

pub fn dini_pointwise(f: &Rational, g: &Rational, h: &Rational, m: u32) -> Result<PointwiseDini> {
    check_m(m)?;
    check_unit(f, "f")?;
    check_unit(g, "g")?;
    check_unit(h, "h")?;
    let n = u64::from(m) * u64::from(m);
    let value = dini_value(f, g, h, n);
    let mut case = DiniCase::AllLarge;
    for (x, which) in [(f, Factor::F), (g, Factor::G), (h, Factor::H)] {
        if let DichotomyBranch::AtMost(_) = dichotomy(x, m)? {
            case = DiniCase::SmallFactor(which);
            break;
        }
    }
    let case_bound = match case {
        DiniCase::SmallFactor(_) => rational::ratio(2, m.into()),
        DiniCase::AllLarge => Rational::zero(),
    };
    Ok(PointwiseDini {
        n,
        value,
        case,
        case_bound,
    })
}

/// `[(f ∧ g)h − n f (g ∧ h)]⁺` coordinatewise.
pub fn dini_vector(f: &FinVec, g: &FinVec, h: &FinVec, n: u64) -> FinVec {
    let entries = (0..f.len())
        .map(|i| dini_value(&f.entries()[i], &g.entries()[i], &h.entries()[i], n))
        .collect();
    FinVec::new(entries).expect("nonempty")
}

/// A local claim: on cell `cell_index`, the `n`-th term is at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellWitness {
    pub cell_index: usize,
    pub n: u64,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiniReport {
    pub n: u64,
    pub values: FinVec,
    pub witnesses: Vec<CellWitness>,
    /// Coordinate indicators: one partition element per cell.
    pub partition: Partition<FinVec>,
    pub ledger: BoundsLedger,
}

/// Coordinates are the cells of the finite cover; their indicator vectors
/// form the subordinate partition of unity.
pub fn dini_uniform(f: &FinVec, g: &FinVec, h: &FinVec, m: u32) -> Result<DiniReport> {
    check_m(m)?;
    let len = f.len();
    if g.len() != len || h.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: if g.len() != len { g.len() } else { h.len() },
        });
    }
    let mut witnesses = Vec::with_capacity(len);
    for i in 0..len {
        let p = dini_pointwise(&f.entries()[i], &g.entries()[i], &h.entries()[i], m)?;
        witnesses.push(CellWitness {
            cell_index: i,
            n: p.n,
            bound: p.case_bound,
        });
    }
    let n = u64::from(m) * u64::from(m);
    let values = dini_vector(f, g, h, n);
    let partition = Partition::new((0..len).map(|i| FinVec::basis(len, i)).collect());
    let two_over_m = rational::ratio(2, m.into());

    let mut ledger = BoundsLedger::new();
    for (w, v) in witnesses.iter().zip(values.entries()) {
        ledger.record(format!("cell {}", w.cell_index), v.clone(), w.bound.clone());
    }
    let (combined_n, global) =
        combine_witnesses(&witnesses, &partition, |k| dini_vector(f, g, h, k))?;
    let glued = FinSpace::new(len).sum(
        &partition
            .elements
            .iter()
            .map(|u| u.mul(&values))
            .collect::<Vec<_>>(),
    );
    ledger.record(
        "|sum u_i e_n - e_n|",
        glued.sub(&values).norm(),
        Rational::zero(),
    );
    ledger.record("combined bound", global, two_over_m.clone());
    ledger.record(
        "combined n",
        rational::from_u64(combined_n),
        rational::from_u64(n),
    );
    ledger.record("||e_n||", values.norm(), two_over_m);

    Ok(DiniReport {
        n,
        values,
        witnesses,
        partition,
        ledger,
    })
}

/// Glues local witnesses into one global statement. Takes `n` as the
/// largest local `n_i` (the terms only shrink as `n` grows, so every local
/// claim survives) and the bound as the largest local bound, then re-checks
/// both by evaluating `sequence(n)` on every cell.
pub fn combine_witnesses(
    witnesses: &[CellWitness],
    partition: &Partition<FinVec>,
    sequence: impl Fn(u64) -> FinVec,
) -> Result<(u64, Rational)> {
    if witnesses.is_empty() || witnesses.len() != partition.len() {
        return Err(Error::precondition(
            "witnesses and partition cells are misaligned",
        ));
    }
    if witnesses.iter().enumerate().any(|(i, w)| w.cell_index != i) {
        return Err(Error::precondition(
            "witness cell indices do not match the partition order",
        ));
    }
    let len = partition.elements[0].len();
    let space = FinSpace::new(len);
    if partition.elements.iter().any(|u| u.len() != len)
        || !crate::constructions::is_partition(&space, partition)?
    {
        return Err(Error::precondition(
            "cells do not form a partition of unity",
        ));
    }
    let on_cell = |u: &FinVec, e: &FinVec, bound: &Rational| {
        u.entries()
            .iter()
            .zip(e.entries())
            .all(|(ui, ei)| ui.is_zero() || ei <= bound)
    };
    for (w, u) in witnesses.iter().zip(&partition.elements) {
        if !on_cell(u, &sequence(w.n), &w.bound) {
            return Err(Error::precondition(format!(
                "witness for cell {} does not hold",
                w.cell_index
            )));
        }
    }
    let n = witnesses.iter().map(|w| w.n).max().expect("nonempty");
    let global = witnesses
        .iter()
        .map(|w| w.bound.clone())
        .max()
        .expect("nonempty");
    let e = sequence(n);
    let glued = space.sum(
        &partition
            .elements
            .iter()
            .map(|u| u.mul(&e))
            .collect::<Vec<_>>(),
    );
    if glued != e || e.entries().iter().any(|x| *x > global) {
        return Err(Error::precondition(
            "combined witness fails on direct evaluation",
        ));
    }
    Ok((n, global))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn dichotomy_examples() {
        assert_eq!(
            dichotomy(&int(0), 5).unwrap(),
            DichotomyBranch::AtMost(ratio(2, 5))
        );
        assert_eq!(
            dichotomy(&int(1), 5).unwrap(),
            DichotomyBranch::AtLeast(ratio(1, 5))
        );
        assert_eq!(
            dichotomy(&ratio(3, 20), 10).unwrap(),
            DichotomyBranch::AtLeast(ratio(1, 10))
        );
        assert!(dichotomy(&ratio(3, 2), 10).is_err());
        assert!(dichotomy(&int(0), 0).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let p = dini_pointwise(&int(1), &int(1), &int(1), 3).unwrap();
        assert_eq!((p.n, p.value.clone()), (9, int(0)));
        assert_eq!(p.case, DiniCase::AllLarge);
        let p = dini_pointwise(&int(0), &ratio(1, 2), &int(1), 7).unwrap();
        assert_eq!(p.value, int(0));
        assert_eq!(p.case, DiniCase::SmallFactor(Factor::F));
        // boundary of the split: (f∧g)h = 1/16, n f (g∧h) = 16·1/4·1/4 = 1
        let q = ratio(1, 4);
        let p = dini_pointwise(&q, &q, &q, 4).unwrap();
        assert_eq!(p.n, 16);
        assert_eq!(p.value, int(0));
        assert!(p.value <= ratio(1, 2));
    }

    #[test]
    fn uniform_trivial_inputs() {
        let one = FinVec::unit(4);
        let r = dini_uniform(&one, &one, &one, 5).unwrap();
        assert!(r.values.is_zero() && r.ledger.all_hold());
        let zero = FinVec::zero(4);
        let r = dini_uniform(&zero, &zero, &zero, 5).unwrap();
        assert!(r.values.is_zero() && r.ledger.all_hold());
    }

    #[test]
    fn combining_two_cells() {
        let partition = Partition::new(vec![FinVec::basis(2, 0), FinVec::basis(2, 1)]);
        let witnesses = vec![
            CellWitness {
                cell_index: 0,
                n: 4,
                bound: ratio(1, 10),
            },
            CellWitness {
                cell_index: 1,
                n: 9,
                bound: ratio(1, 5),
            },
        ];
        let seq =
            |n: u64| FinVec::new(vec![ratio(1, n as i64 + 6), ratio(1, n as i64 - 3)]).unwrap();
        assert_eq!(
            combine_witnesses(&witnesses, &partition, seq).unwrap(),
            (9, ratio(1, 5))
        );
        let one = vec![CellWitness {
            cell_index: 0,
            n: 3,
            bound: ratio(1, 2),
        }];
        let unit = Partition::new(vec![FinVec::unit(1)]);
        assert_eq!(
            combine_witnesses(&one, &unit, |_| FinVec::constant(1, ratio(1, 3))).unwrap(),
            (3, ratio(1, 2))
        );
    }

    #[test]
    fn combining_rejects_bad_input() {
        let partition = Partition::new(vec![FinVec::basis(2, 0), FinVec::basis(2, 1)]);
        let w = |i, b| CellWitness {
            cell_index: i,
            n: 1,
            bound: b,
        };
        let seq = |_| FinVec::constant(2, ratio(1, 2));
        assert!(combine_witnesses(&[w(0, int(1))], &partition, seq).is_err());
        assert!(combine_witnesses(&[w(1, int(1)), w(0, int(1))], &partition, seq).is_err());
        assert!(combine_witnesses(&[w(0, int(1)), w(1, ratio(1, 4))], &partition, seq).is_err());
    }
}
