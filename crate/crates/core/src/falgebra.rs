//! Finite-dimensional f-algebras `ℚ^m` with pointwise operations, and
//! rational-valued bilinear maps on them.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::constructions::{
    combine, is_partition, joint_partition, overlap_coefficient_gap, slice_partition, BoundsLedger,
    FinSpace, JointPartition, Partition,
};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A rational `m`-vector. The unit is the all-ones vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinVec(Vec<Rational>);

impl FinVec {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::precondition("vectors need at least one entry"));
        }
        Ok(FinVec(entries))
    }

    pub fn zero(m: usize) -> Self {
        FinVec(vec![Rational::zero(); m])
    }

    pub fn unit(m: usize) -> Self {
        FinVec(vec![Rational::one(); m])
    }

    pub fn constant(m: usize, q: Rational) -> Self {
        FinVec(vec![q; m])
    }

    /// The coordinate vector `e_i`.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.0[i] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    fn zip_with(&self, other: &FinVec, f: impl Fn(&Rational, &Rational) -> Rational) -> FinVec {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        FinVec(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> FinVec {
        FinVec(self.0.iter().map(f).collect())
    }

    pub fn add(&self, other: &FinVec) -> FinVec {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FinVec) -> FinVec {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, q: &Rational) -> FinVec {
        self.map(|a| a * q)
    }

    pub fn join(&self, other: &FinVec) -> FinVec {
        self.zip_with(other, |a, b| rational::max(a, b).clone())
    }

    pub fn meet(&self, other: &FinVec) -> FinVec {
        self.zip_with(other, |a, b| rational::min(a, b).clone())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &FinVec) -> FinVec {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn pos(&self) -> FinVec {
        self.map(rational::positive_part)
    }

    pub fn neg_part(&self) -> FinVec {
        self.map(|a| rational::positive_part(&-a))
    }

    pub fn abs(&self) -> FinVec {
        self.map(|a| a.abs())
    }

    pub fn leq(&self, other: &FinVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `max_i |v_i|`, the unit-norm for the all-ones unit.
    pub fn norm(&self) -> Rational {
        self.0
            .iter()
            .map(|a| a.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `0 <= v <= 1` coordinatewise.
    pub fn in_unit_range(&self) -> bool {
        self.0
            .iter()
            .all(|a| !a.is_negative() && *a <= Rational::one())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rational::to_text).collect()
    }
}

impl fmt::Display for FinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

/// `A(f, g) = Σ_ij f_i M_ij g_j`, valued in the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    matrix: Vec<Vec<Rational>>,
}

/// Why a bilinear map fails to be orthosymmetric: two disjoint coordinate
/// vectors with a nonzero value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orthosymmetry {
    Orthosymmetric,
    Counterexample {
        f: FinVec,
        g: FinVec,
        value: Rational,
    },
}

impl Orthosymmetry {
    pub fn holds(&self) -> bool {
        matches!(self, Orthosymmetry::Orthosymmetric)
    }
}

impl BilinearMap {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let m = matrix.len();
        if m == 0 {
            return Err(Error::precondition("bilinear map needs a nonempty matrix"));
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: row.len(),
            });
        }
        Ok(BilinearMap { matrix })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let m = entries.len();
        let matrix = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            entries[i].clone()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        BilinearMap { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn apply(&self, f: &FinVec, g: &FinVec) -> Rational {
        assert!(
            f.len() == self.dim() && g.len() == self.dim(),
            "vector length mismatch"
        );
        let mut total = Rational::zero();
        for (i, fi) in f.entries().iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.entries().iter().enumerate() {
                let mij = &self.matrix[i][j];
                if !mij.is_zero() && !gj.is_zero() {
                    total += fi * mij * gj;
                }
            }
        }
        total
    }

    /// `A(f, g) >= 0` for all `f, g >= 0`; equivalent to every entry being
    /// nonnegative, since `M_ij = A(e_i, e_j)`.
    pub fn is_positive(&self) -> bool {
        self.positivity_counterexample().is_none()
    }

    /// Coordinate vectors `(e_i, e_j)` with `A(e_i, e_j) < 0`.
    pub fn positivity_counterexample(&self) -> Option<(FinVec, FinVec)> {
        let m = self.dim();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Some((FinVec::basis(m, i), FinVec::basis(m, j)));
                }
            }
        }
        None
    }

    /// Disjointly supported pairs hit exactly the off-diagonal entries, so
    /// orthosymmetry means the matrix is diagonal.
    pub fn orthosymmetry(&self) -> Orthosymmetry {
        let m = self.dim();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j && !v.is_zero() {
                    return Orthosymmetry::Counterexample {
                        f: FinVec::basis(m, i),
                        g: FinVec::basis(m, j),
                        value: v.clone(),
                    };
                }
            }
        }
        Orthosymmetry::Orthosymmetric
    }

    pub fn is_orthosymmetric(&self) -> bool {
        self.orthosymmetry().holds()
    }

    /// `A(x·e, y·e)` as a map on the same coordinates.
    pub fn rescaled(&self, e: &FinVec) -> BilinearMap {
        let matrix = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| v * &e.entries()[i] * &e.entries()[j])
                    .collect()
            })
            .collect();
        BilinearMap { matrix }
    }
}

/// Checks both almost-f-algebra axioms for `product`: `a·b >= 0` when
/// `a, b >= 0`, and `a·b = 0` when `a ∧ b = 0`. Coordinate vectors are
/// always included; `samples` adds further pairs (their positive parts and
/// the disjoint pair `(f⁺, f⁻)` are tested).
pub fn almost_f_axioms(
    m: usize,
    product: impl Fn(&FinVec, &FinVec) -> FinVec,
    samples: &[(FinVec, FinVec)],
) -> bool {
    let zero = FinVec::zero(m);
    let positive_ok = |a: &FinVec, b: &FinVec| zero.leq(&product(a, b));
    let disjoint_ok = |a: &FinVec, b: &FinVec| !a.meet(b).is_zero() || product(a, b).is_zero();
    for i in 0..m {
        for j in 0..m {
            let (ei, ej) = (FinVec::basis(m, i), FinVec::basis(m, j));
            if !positive_ok(&ei, &ej) || !disjoint_ok(&ei, &ej) {
                return false;
            }
        }
    }
    samples.iter().all(|(f, g)| {
        let (fp, gp) = (f.pos(), g.pos());
        positive_ok(&fp, &gp)
            && disjoint_ok(&fp, &gp)
            && disjoint_ok(&fp, &f.neg_part())
            && disjoint_ok(&gp, &g.neg_part())
    })
}

/// `e = |f| + |g|`, a unit for the Riesz subspace generated by `f` and `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalReduction {
    pub unit: FinVec,
    /// Coordinates where `f` or `g` is nonzero.
    pub support: Vec<usize>,
}

pub fn reduce_to_unital(f: &FinVec, g: &FinVec) -> UnitalReduction {
    let unit = f.abs().add(&g.abs());
    let support = unit
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| i)
        .collect();
    debug_assert!(f.abs().leq(&unit) && g.abs().leq(&unit));
    UnitalReduction { unit, support }
}

/// `u · v = (u_i v_j)` flattened row-major; a partition whenever `u` and
/// `v` are.
pub fn partition_product(
    u: &Partition<FinVec>,
    v: &Partition<FinVec>,
) -> Result<Partition<FinVec>> {
    let m = u
        .elements
        .first()
        .or(v.elements.first())
        .map(FinVec::len)
        .ok_or_else(|| Error::precondition("empty partition"))?;
    let space = FinSpace::new(m);
    for p in [u, v] {
        if p.elements.iter().any(|e| e.len() != m) || !is_partition(&space, p)? {
            return Err(Error::precondition("input is not a partition of unity"));
        }
    }
    Ok(joint_partition(&space, u, v)?.as_partition())
}

/// Everything the commutativity argument builds for one `(A, f, g, k)`,
/// with the inequality chain recorded exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremLedger {
    pub epsilon: Rational,
    pub joint: JointPartition<FinVec>,
    pub f_approx: FinVec,
    pub g_approx: FinVec,
    pub h_approx: FinVec,
    pub a_fg: Rational,
    pub a_gf: Rational,
    pub a_unit_fg: Rational,
    pub a_unit_unit: Rational,
    pub ledger: BoundsLedger,
}

pub mod labels {
    pub const F_APPROX: &str = "|f - f'|";
    pub const G_APPROX: &str = "|g - g'|";
    pub const A_APPROX: &str = "|A(f,g) - A(f',g')|";
    pub const A_FG_UNIT_H: &str = "|A(f',g') - A(1,h')|";
    pub const A_GF_UNIT_H: &str = "|A(g',f') - A(1,h')|";
    pub const A_PRIME_SWAP: &str = "|A(f',g') - A(g',f')|";
    pub const H_PRODUCT: &str = "|h' - f'g'|";
    pub const A_SWAP: &str = "|A(f,g) - A(g,f)|";
    pub const ALPHA_GAP: &str = "max |alpha_n - alpha_m| over overlapping w";
    pub const BETA_GAP: &str = "max |beta_n - beta_m| over overlapping w";
}

/// Runs the slice / joint-partition argument for `0 <= f, g <= 1` and a
/// positive orthosymmetric `A`, with `ε = 1/k`.
pub fn main_theorem_ledger(
    a: &BilinearMap,
    f: &FinVec,
    g: &FinVec,
    k: u32,
) -> Result<MainTheoremLedger> {
    let m = a.dim();
    if f.len() != m || g.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: if f.len() != m { f.len() } else { g.len() },
        });
    }
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    if !f.in_unit_range() || !g.in_unit_range() {
        return Err(Error::precondition("f and g must lie between 0 and 1"));
    }
    if !a.is_positive() {
        return Err(Error::precondition("bilinear map is not positive"));
    }
    if !a.is_orthosymmetric() {
        return Err(Error::precondition("bilinear map is not orthosymmetric"));
    }
    let space = FinSpace::new(m);
    let eps = rational::ratio(1, k.into());
    let two = rational::int(2);

    let v = slice_partition(&space, f, k)?;
    let v2 = slice_partition(&space, g, k)?;
    let joint = joint_partition(&space, &v, &v2)?;
    let w = &joint.elements;
    let f1 = combine(&space, &joint.alpha, w);
    let g1 = combine(&space, &joint.beta, w);
    let ab: Vec<Rational> = joint
        .alpha
        .iter()
        .zip(&joint.beta)
        .map(|(x, y)| x * y)
        .collect();
    let h1 = combine(&space, &ab, w);

    let unit = FinVec::unit(m);
    let a11 = a.apply(&unit, &unit);
    let a_fg = a.apply(f, g);
    let a_gf = a.apply(g, f);
    let a_f1g1 = a.apply(&f1, &g1);
    let a_g1f1 = a.apply(&g1, &f1);
    let a_1h1 = a.apply(&unit, &h1);
    let a_1fg = a.apply(&unit, &f.mul(g));
    let scaled = |c: i64| rational::int(c) * &eps * &a11;

    let mut ledger = BoundsLedger::new();
    ledger.record(labels::F_APPROX, f.sub(&f1).norm(), eps.clone());
    ledger.record(labels::G_APPROX, g.sub(&g1).norm(), eps.clone());
    ledger.record(labels::A_APPROX, (&a_fg - &a_f1g1).abs(), scaled(2));
    ledger.record(labels::A_FG_UNIT_H, (&a_f1g1 - &a_1h1).abs(), scaled(2));
    ledger.record(labels::A_GF_UNIT_H, (&a_g1f1 - &a_1h1).abs(), scaled(2));
    ledger.record(labels::A_PRIME_SWAP, (&a_f1g1 - &a_g1f1).abs(), scaled(4));
    ledger.record(labels::H_PRODUCT, h1.sub(&f1.mul(&g1)).norm(), &two * &eps);
    ledger.record(labels::A_SWAP, (&a_fg - &a_gf).abs(), scaled(8));
    ledger.record(
        labels::ALPHA_GAP,
        overlap_coefficient_gap(&space, w, &joint.alpha)?,
        &two * &eps,
    );
    ledger.record(
        labels::BETA_GAP,
        overlap_coefficient_gap(&space, w, &joint.beta)?,
        &two * &eps,
    );

    Ok(MainTheoremLedger {
        epsilon: eps,
        joint,
        f_approx: f1,
        g_approx: g1,
        h_approx: h1,
        a_fg,
        a_gf,
        a_unit_fg: a_1fg,
        a_unit_unit: a11,
        ledger,
    })
}

/// `|A(f, g) − A(g, f)|` for arbitrary `f, g`, bounded through the unit
/// `e = |f| + |g|` of the subspace they generate: on the support of `e`,
/// `f/e` and `g/e` split into parts in `[0, 1]`, `A` is rescaled to
/// `A(x·e, y·e)`, and each of the four sign combinations contributes at
/// most `8ε·A_e(1, 1)`.
pub fn commutativity_ledger(
    a: &BilinearMap,
    f: &FinVec,
    g: &FinVec,
    k: u32,
) -> Result<BoundsLedger> {
    let m = a.dim();
    if f.len() != m || g.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: f.len(),
        });
    }
    let reduction = reduce_to_unital(f, g);
    let mut ledger = BoundsLedger::new();
    ledger.record(
        "|f| <= e",
        (f.abs().sub(&reduction.unit)).pos().norm(),
        Rational::zero(),
    );
    ledger.record(
        "|g| <= e",
        (g.abs().sub(&reduction.unit)).pos().norm(),
        Rational::zero(),
    );
    let swap = (a.apply(f, g) - a.apply(g, f)).abs();
    if reduction.support.is_empty() {
        ledger.record(labels::A_SWAP, swap, Rational::zero());
        return Ok(ledger);
    }
    let restrict = |v: &FinVec| {
        FinVec(
            reduction
                .support
                .iter()
                .map(|&i| &v.entries()[i] / &reduction.unit.entries()[i])
                .collect(),
        )
    };
    let sub_unit = FinVec(
        reduction
            .support
            .iter()
            .map(|&i| reduction.unit.entries()[i].clone())
            .collect(),
    );
    let sub_matrix: Vec<Vec<Rational>> = reduction
        .support
        .iter()
        .map(|&i| {
            reduction
                .support
                .iter()
                .map(|&j| a.matrix()[i][j].clone())
                .collect()
        })
        .collect();
    let scaled_map = BilinearMap::new(sub_matrix)?.rescaled(&sub_unit);
    let (fr, gr) = (restrict(f), restrict(g));
    let mut bound = Rational::zero();
    for fp in [fr.pos(), fr.neg_part()] {
        for gp in [gr.pos(), gr.neg_part()] {
            let part = main_theorem_ledger(&scaled_map, &fp, &gp, k)?;
            bound += part
                .ledger
                .get(labels::A_SWAP)
                .expect("recorded")
                .bound
                .clone();
            let first_failure = part.ledger.failures().next().cloned();
            if let Some(bad) = first_failure {
                ledger.record(format!("part: {}", bad.label), bad.value, bad.bound);
            }
        }
    }
    ledger.record(labels::A_SWAP, swap, bound);
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[(i64, i64)]) -> FinVec {
        FinVec::new(xs.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn positivity() {
        let id = BilinearMap::diagonal(&[int(1), int(1), int(1)]);
        assert!(id.is_positive());
        let mut m = id.matrix().to_vec();
        m[0][2] = int(-1);
        let a = BilinearMap::new(m).unwrap();
        let (f, g) = a.positivity_counterexample().unwrap();
        assert!(a.apply(&f, &g) < int(0));
    }

    #[test]
    fn orthosymmetry_counterexample_is_disjoint() {
        let mut m = BilinearMap::diagonal(&[int(2), int(3)]).matrix().to_vec();
        assert!(BilinearMap::new(m.clone()).unwrap().is_orthosymmetric());
        m[0][1] = int(1);
        let a = BilinearMap::new(m).unwrap();
        match a.orthosymmetry() {
            Orthosymmetry::Counterexample { f, g, value } => {
                assert_eq!(
                    (f.clone(), g.clone()),
                    (FinVec::basis(2, 0), FinVec::basis(2, 1))
                );
                assert!(f.meet(&g).is_zero());
                assert_eq!(a.apply(&f, &g), value);
                assert_eq!(value, int(1));
            }
            Orthosymmetry::Orthosymmetric => panic!("off-diagonal entry missed"),
        }
    }

    #[test]
    fn pointwise_product_is_almost_f() {
        let f = v(&[(1, 2), (-1, 3), (0, 1)]);
        let g = v(&[(-2, 1), (1, 1), (1, 4)]);
        assert!(FinVec::basis(3, 0).mul(&FinVec::basis(3, 1)).is_zero());
        assert!(f.pos().mul(&f.neg_part()).is_zero());
        assert!(almost_f_axioms(3, FinVec::mul, &[(f.clone(), g.clone())]));
        // a product that mixes coordinates is not
        let swap = |a: &FinVec, b: &FinVec| {
            let e = a.entries();
            FinVec::new(vec![e[1].clone(), e[0].clone(), e[2].clone()])
                .unwrap()
                .mul(b)
        };
        assert!(!almost_f_axioms(3, swap, &[]));
    }

    #[test]
    fn unital_reduction() {
        let r = reduce_to_unital(&FinVec::zero(3), &FinVec::zero(3));
        assert!(r.unit.is_zero() && r.support.is_empty());
        let f = FinVec::basis(3, 0);
        let g = FinVec::basis(3, 1).scale(&int(-1));
        let r = reduce_to_unital(&f, &g);
        assert_eq!(r.unit, v(&[(1, 1), (1, 1), (0, 1)]));
        assert_eq!(r.support, vec![0, 1]);
        assert!(f.abs().leq(&r.unit) && g.abs().leq(&r.unit));
    }

    #[test]
    fn product_of_trivial_partitions() {
        let u = Partition::new(vec![FinVec::unit(2)]);
        let p = partition_product(&u, &u).unwrap();
        assert_eq!(p.elements, vec![FinVec::unit(2)]);
        let coords = Partition::new((0..3).map(|i| FinVec::basis(3, i)).collect());
        let p = partition_product(&coords, &coords).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(
            p.elements.iter().fold(FinVec::zero(3), |a, b| a.add(b)),
            FinVec::unit(3)
        );
        let bad = Partition::new(vec![FinVec::basis(3, 0)]);
        assert!(partition_product(&bad, &coords).is_err());
    }

    #[test]
    fn ledger_trivial_inputs() {
        let a = BilinearMap::diagonal(&[int(1), int(2)]);
        let zero = FinVec::zero(2);
        let l = main_theorem_ledger(&a, &zero, &zero, 4).unwrap();
        assert!(l.ledger.all_hold());
        assert!(l.ledger.entries.iter().take(8).all(|e| e.value.is_zero()));
        let one = FinVec::unit(2);
        let l = main_theorem_ledger(&a, &one, &one, 4).unwrap();
        assert_eq!(
            (l.f_approx.clone(), l.g_approx.clone(), l.h_approx.clone()),
            (one.clone(), one.clone(), one.clone())
        );
        assert_eq!(l.ledger.get(labels::A_FG_UNIT_H).unwrap().value, int(0));
    }

    #[test]
    fn ledger_preconditions() {
        let f = FinVec::unit(2);
        let mut m = BilinearMap::diagonal(&[int(1), int(1)]).matrix().to_vec();
        m[1][0] = int(1);
        let skew = BilinearMap::new(m).unwrap();
        assert!(main_theorem_ledger(&skew, &f, &f, 2).is_err());
        let neg = BilinearMap::diagonal(&[int(-1), int(1)]);
        assert!(main_theorem_ledger(&neg, &f, &f, 2).is_err());
        let id = BilinearMap::diagonal(&[int(1), int(1)]);
        assert!(main_theorem_ledger(&id, &f.scale(&int(2)), &f, 2).is_err());
        assert!(main_theorem_ledger(&id, &f, &f, 0).is_err());
    }

    #[test]
    fn commutativity_for_signed_vectors() {
        let a = BilinearMap::diagonal(&[int(3), ratio(1, 2), int(0)]);
        let f = v(&[(-5, 2), (1, 3), (0, 1)]);
        let g = v(&[(7, 1), (-1, 1), (0, 1)]);
        let l = commutativity_ledger(&a, &f, &g, 8).unwrap();
        assert!(l.all_hold());
        assert_eq!(l.get(labels::A_SWAP).unwrap().value, int(0));
    }
}
