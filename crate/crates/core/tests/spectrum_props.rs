mod common;

use common::*;
use rieszlab::random::RandomSource;
use rieszlab::rational::ratio;
use rieszlab::{PLTerm, PlSpace, Spectrum};

fn spec(dim: usize) -> Spectrum {
    Spectrum::new(PlSpace::unit_cube(dim))
}

#[test]
fn generator_relations_hold() {
    for dim in [1, 2] {
        let s = spec(dim);
        for i in 0..60 {
            let (a, b) = term_pair(31, dim as u64, i, dim, &small_params());
            // 1: D(a) = 0 if a <= 0
            let nonpos = a.join(&b).pos().neg();
            assert!(s.is_zero(&s.d_of(&nonpos)).unwrap());
            // 2: D(1) = 1
            assert!(s.equal(&s.d_of(&PLTerm::unit()), &s.top()).unwrap());
            // 3: D(a) ∧ D(−a) = 0
            assert!(s.is_zero(&s.meet(&s.d_of(&a), &s.d_of(&a.neg()))).unwrap());
            // 4: D(a + b) <= D(a) ∨ D(b)
            let sum = s.d_of(&a.add(&b));
            assert!(s.leq(&sum, &s.join(&s.d_of(&a), &s.d_of(&b))).unwrap());
            // 5: D(a ∨ b) = D(a) ∨ D(b)
            assert!(s
                .equal(&s.d_of(&a.join(&b)), &s.join(&s.d_of(&a), &s.d_of(&b)))
                .unwrap());
        }
    }
}

#[test]
fn order_is_a_preorder_and_matches_dominance() {
    let s = spec(2);
    for i in 0..30 {
        let mut r = RandomSource::for_case(32, 0, i);
        let p = small_params();
        let (a, b, c) = (r.term(2, &p), r.term(2, &p), r.term(2, &p));
        let (u, v, w) = (s.d_of(&a), s.d_of(&b), s.d_of(&c));
        assert!(s.leq(&u, &u).unwrap());
        if s.leq(&u, &v).unwrap() && s.leq(&v, &w).unwrap() {
            assert!(s.leq(&u, &w).unwrap());
        }
        let direct = s
            .space()
            .dominates(&a.pos(), &b.pos())
            .unwrap()
            .is_dominated();
        assert_eq!(s.leq(&u, &v).unwrap(), direct);
    }
}

#[test]
fn lattice_is_distributive() {
    let s = spec(2);
    for i in 0..30 {
        let mut r = RandomSource::for_case(33, 0, i);
        let p = small_params();
        let (u, v, w) = (
            s.d_of(&r.term(2, &p)),
            s.d_of(&r.term(2, &p)),
            s.d_of(&r.term(2, &p)),
        );
        let lhs = s.meet(&u, &s.join(&v, &w));
        let rhs = s.join(&s.meet(&u, &v), &s.meet(&u, &w));
        assert!(s.equal(&lhs, &rhs).unwrap());
    }
}

#[test]
fn normality_witnesses_for_random_covers() {
    let s = spec(1);
    let mut checked = 0;
    for i in 0..80 {
        let mut r = RandomSource::for_case(34, 0, i);
        let a = r.term(1, &small_params());
        // b2 = D(c − a) with c above min a makes the pair cover sometimes;
        // the shifted complement guarantees it always does
        let shift = ratio(r.range(1, 8), 8);
        let b1 = s.d_of(&a);
        let b2 = s.d_of(&PLTerm::constant(shift).sub(&a));
        let Ok((c1, c2)) = s.normality_witness(&b1, &b2) else {
            continue;
        };
        assert!(s.is_zero(&s.meet(&c1, &c2)).unwrap());
        assert!(s.is_top(&s.join(&c1, &b1)).unwrap());
        assert!(s.is_top(&s.join(&c2, &b2)).unwrap());
        checked += 1;
    }
    assert!(checked >= 40, "only {checked} pairs covered");
}

#[test]
fn shrinking_approximates_from_below() {
    let s = spec(2);
    for i in 0..30 {
        let mut r = RandomSource::for_case(35, 0, i);
        let u = s.d_of(&r.term(2, &small_params()));
        let q = ratio(r.range(1, 16), 16);
        let small = s.shrink(&u, &q);
        assert!(s.leq(&small, &u).unwrap());
        assert!(s.space().norm(&u.rep().sub(small.rep())).unwrap() <= q);
    }
}
