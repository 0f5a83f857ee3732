mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rieszlab::random::{RandomSource, TermParams};
use rieszlab::rational::{self, int, ratio};
use rieszlab::{DominanceResult, MaxMinNF, PLTerm, PlSpace, Rational};

#[test]
fn leq_matches_breakpoint_enumeration_in_1d() {
    let s = PlSpace::unit_cube(1);
    let params = TermParams::default();
    let mut both = [0usize; 2];
    for i in 0..150 {
        let (a, b) = term_pair(11, 0, i, 1, &params);
        // bias towards true instances: compare a with a ∨ b half the time
        let b = if i % 2 == 0 { a.join(&b) } else { b };
        let exact = s.leq(&a, &b).unwrap();
        assert_eq!(
            exact,
            leq_by_breakpoints(&s, &a, &b),
            "pair {i}: {a} vs {b}"
        );
        both[exact as usize] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0);
}

#[test]
fn grid_never_contradicts_the_decision() {
    for dim in [1, 2] {
        let s = PlSpace::unit_cube(dim);
        let g = grid(dim);
        for i in 0..25 {
            let (a, b) = term_pair(12, dim as u64, i, dim, &small_params());
            let exact = s.leq(&a, &b).unwrap();
            if let Some(x) = grid_refutation(&s, &g, &a, &b) {
                assert!(!exact, "grid refutes at {x:?} but leq holds: {a} vs {b}");
            }
            if !exact {
                let w = s.leq_counterexample(&a, &b).unwrap().unwrap();
                assert!(eval(&s, &a, &w) > eval(&s, &b, &w));
            }
        }
    }
}

#[test]
fn normal_forms_agree_with_evaluation() {
    for dim in [1, 2, 3] {
        let s = PlSpace::unit_cube(dim);
        for i in 0..40 {
            let mut r = RandomSource::for_case(13, dim as u64, i);
            let t = r.term(dim, &small_params());
            let compact = s.normalize(&t).unwrap();
            let syntactic = MaxMinNF::of_term(&t, s.domain());
            for _ in 0..25 {
                let x: Vec<Rational> = (0..dim).map(|_| r.unit_rational(24)).collect();
                let v = eval(&s, &t, &x);
                assert_eq!(compact.eval(&x), v, "{t} at {x:?}");
                assert_eq!(syntactic.eval(&x), v, "{t} at {x:?}");
            }
            assert!(compact.form_count() <= syntactic.form_count().max(1) * 4);
        }
    }
}

#[test]
fn meet_of_joins_normal_form() {
    let s = PlSpace::unit_cube(3);
    let (x, y, z) = (PLTerm::gen(0), PLTerm::gen(1), PLTerm::gen(2));
    let t = x.join(&y).meet(&x.join(&z));
    let nf = s.normalize(&t).unwrap();
    let mut r = RandomSource::new(14);
    for _ in 0..100 {
        let p: Vec<Rational> = (0..3).map(|_| r.unit_rational(50)).collect();
        assert_eq!(nf.eval(&p), eval(&s, &t, &p));
    }
}

#[test]
fn arrangement_sampling_agrees_with_region_decision() {
    for dim in [1, 2] {
        let s = PlSpace::unit_cube(dim);
        for i in 0..40 {
            let (a, b) = term_pair(15, dim as u64, i, dim, &small_params());
            let nf = s.normalize(&b.sub(&a)).unwrap();
            let sampled = s.negative_point(&nf).unwrap();
            assert_eq!(sampled.is_none(), s.leq(&a, &b).unwrap());
            if let Some(x) = sampled {
                assert!(eval(&s, &a, &x) > eval(&s, &b, &x));
            }
        }
    }
}

#[test]
fn dominance_results_are_sound_and_minimal() {
    for dim in [1, 2] {
        let s = PlSpace::unit_cube(dim);
        for i in 0..40 {
            let mut r = RandomSource::for_case(16, dim as u64, i);
            let a = r.positive_term(dim, &small_params());
            let b = r.positive_term(dim, &small_params());
            match s.dominates(&a, &b).unwrap() {
                DominanceResult::Dominated(n) => {
                    assert!(s.leq(&a, &b.scale(rational::from_u64(n))).unwrap());
                    if n >= 2 {
                        assert!(!s.leq(&a, &b.scale(rational::from_u64(n - 1))).unwrap());
                    }
                }
                DominanceResult::NotDominated(w) => {
                    assert!(eval(&s, &b.pos(), &w).is_zero());
                    assert!(eval(&s, &a.pos(), &w).is_positive());
                }
            }
        }
    }
}

fn term_strategy(dim: usize) -> impl Strategy<Value = PLTerm> {
    any::<u64>().prop_map(move |seed| RandomSource::new(seed).term(dim, &small_params()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn riesz_identity(a in term_strategy(2), b in term_strategy(2)) {
        let s = PlSpace::unit_cube(2);
        let lhs = a.meet(&b).add(&a.join(&b));
        prop_assert!(s.equal(&lhs, &a.add(&b)).unwrap());
    }

    #[test]
    fn unit_is_strong(f in term_strategy(2)) {
        let s = PlSpace::unit_cube(2);
        let n = Rational::from_integer(rational::ceil(&s.norm(&f).unwrap()));
        prop_assert!(s.leq(&f.abs(), &PLTerm::constant(n)).unwrap());
    }

    #[test]
    fn norm_is_a_norm(a in term_strategy(2), b in term_strategy(2), q in -8i64..=8) {
        let s = PlSpace::unit_cube(2);
        let (na, nb) = (s.norm(&a).unwrap(), s.norm(&b).unwrap());
        prop_assert!(s.norm(&a.add(&b)).unwrap() <= &na + &nb);
        let q = ratio(q, 3);
        prop_assert_eq!(s.norm(&a.scale(q.clone())).unwrap(), q.abs() * &na);
        prop_assert_eq!(na == int(0), s.equal(&a, &PLTerm::zero()).unwrap());
    }

    #[test]
    fn archimedean(x in term_strategy(1), y in term_strategy(1)) {
        // if ‖x‖ > 0 then n|x| <= y fails for n = ceil(‖y‖ / ‖x‖) + 1
        let s = PlSpace::unit_cube(1);
        let nx = s.norm(&x).unwrap();
        if nx > int(0) {
            let n = rational::ceil(&(s.norm(&y).unwrap() / &nx)) + 1;
            let big = x.abs().scale(Rational::from_integer(n));
            prop_assert!(!s.leq(&big, &y).unwrap());
        }
    }

    #[test]
    fn decision_coherence(a in term_strategy(2), b in term_strategy(2), seed in any::<u64>()) {
        let s = PlSpace::unit_cube(2);
        let mut r = RandomSource::new(seed);
        if s.leq(&a, &b).unwrap() {
            for _ in 0..100 {
                let p = vec![r.unit_rational(97), r.unit_rational(89)];
                prop_assert!(eval(&s, &a, &p) <= eval(&s, &b, &p));
            }
        } else {
            let w = s.leq_counterexample(&a, &b).unwrap().unwrap();
            prop_assert!(eval(&s, &a, &w) > eval(&s, &b, &w));
        }
    }

    #[test]
    fn parts_recombine(a in term_strategy(2)) {
        let s = PlSpace::unit_cube(2);
        prop_assert!(s.equal(&a, &a.pos().sub(&a.neg_part())).unwrap());
        prop_assert!(s.equal(&a.abs(), &a.pos().add(&a.neg_part())).unwrap());
    }
}
