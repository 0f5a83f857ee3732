//! Seeded check suites. Case `i` of a suite draws from its own random
//! stream, so cases run in parallel and the report still lists them in
//! index order with identical contents on every run.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use rieszlab::constructions::{
    check_slice_partition, freudenthal_approx, is_partition, RieszSpace,
};
use rieszlab::dini::{combine_witnesses, dini_pointwise, dini_uniform, dini_vector};
use rieszlab::falgebra::{main_theorem_ledger, Orthosymmetry};
use rieszlab::random::{RandomSource, TermParams};
use rieszlab::rational::{int, ratio, Rational};
use rieszlab::{DominanceResult, FinSpace, PLTerm, Spectrum};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::oracle;
use crate::report::{self, q, term, Check, Report};

pub const SUITES: &[&str] = &[
    "relations",
    "partitions",
    "density",
    "ledger",
    "dini",
    "normality",
    "lp-oracle",
    "dominance",
];

pub fn run_suite(config: &RunConfig, name: &str) -> Result<Report, CliError> {
    config.validate()?;
    let checks = match name {
        "relations" => relations(config),
        "partitions" => partitions(config),
        "density" => density(config),
        "ledger" => ledger(config),
        "dini" => dini(config),
        "normality" => normality(config),
        "lp-oracle" => lp_oracle(config),
        "dominance" => dominance(config),
        _ => {
            return Err(CliError::UnknownSuite {
                name: name.into(),
                known: SUITES.join(", "),
            })
        }
    };
    Ok(Report::new(format!("suite {name}"), config, checks))
}

fn params() -> TermParams {
    TermParams::default()
}

/// Runs `f` on every case index in parallel; results come back in order.
fn cases(config: &RunConfig, f: impl Fn(u64) -> Check + Send + Sync) -> Vec<Check> {
    (0..config.cases as u64).into_par_iter().map(f).collect()
}

/// The pinned dimension, else 1 and 2 alternately.
fn case_dim(config: &RunConfig, i: u64) -> usize {
    config.pinned_dimension().unwrap_or(1 + (i % 2) as usize)
}

/// Runs a fallible body, turning an error into a failed check.
fn attempt(mut c: Check, body: impl FnOnce(&mut Check) -> Result<(), rieszlab::Error>) -> Check {
    if let Err(e) = body(&mut c) {
        c.error(&e);
    }
    c
}

fn case_name(suite: &str, i: u64) -> String {
    format!("{suite}#{i}")
}

fn rng(config: &RunConfig, stream: u64, i: u64) -> RandomSource {
    RandomSource::for_case(config.seed, stream, i)
}

fn relations(config: &RunConfig) -> Vec<Check> {
    cases(config, |i| {
        let dim = case_dim(config, i);
        let mut r = rng(config, 1, i);
        let (a, b) = (r.term(dim, &params()), r.term(dim, &params()));
        let mut c = Check::new(case_name("relations", i));
        c.input("dim", dim)
            .input("a", term(&a))
            .input("b", term(&b));
        attempt(c, |c| {
            let s = Spectrum::new(config.space_of_dim(dim));
            // −|a| ∧ b lies below 0 whatever a and b are
            let nonpos = a.abs().neg().meet(&b);
            c.expect("D(c) = 0 for c <= 0", s.is_zero(&s.d_of(&nonpos))?);
            c.expect("D(1) = top", s.equal(&s.d_of(&PLTerm::unit()), &s.top())?);
            let (da, db) = (s.d_of(&a), s.d_of(&b));
            c.expect(
                "D(a) ∧ D(-a) = 0",
                s.is_zero(&s.meet(&da, &s.d_of(&a.neg())))?,
            );
            c.expect(
                "D(a + b) <= D(a) ∨ D(b)",
                s.leq(&s.d_of(&a.add(&b)), &s.join(&da, &db))?,
            );
            c.expect(
                "D(a ∨ b) = D(a) ∨ D(b)",
                s.equal(&s.d_of(&a.join(&b)), &s.join(&da, &db))?,
            );
            Ok(())
        })
    })
}

fn lp_oracle(config: &RunConfig) -> Vec<Check> {
    let grids: Vec<(usize, Vec<Vec<Rational>>)> = match config.pinned_dimension() {
        Some(d) => vec![(d, oracle::grid(config.space_of_dim(d).domain().bounds()))],
        None => [1, 2]
            .into_iter()
            .map(|d| (d, oracle::grid(config.space_of_dim(d).domain().bounds())))
            .collect(),
    };
    cases(config, |i| {
        let dim = case_dim(config, i);
        let grid = &grids
            .iter()
            .find(|(d, _)| *d == dim)
            .expect("grid per dimension")
            .1;
        let mut r = rng(config, 2, i);
        let a = r.term(dim, &params());
        let mut b = r.term(dim, &params());
        // every other pair is ordered by construction
        if i % 4 >= 2 {
            b = a.join(&b);
        }
        let mut c = Check::new(case_name("lp-oracle", i));
        c.input("dim", dim)
            .input("a", term(&a))
            .input("b", term(&b));
        attempt(c, |c| {
            let space = config.space_of_dim(dim);
            let cex = space.leq_counterexample(&a, &b)?;
            c.result("leq", cex.is_none());
            match &cex {
                None => {
                    let refuted = oracle::grid_refutation(&space, grid, &a, &b);
                    if let Some(x) = &refuted {
                        c.result("gridRefutation", report::point(x));
                    }
                    c.expect("grid agrees", refuted.is_none());
                }
                Some(x) => {
                    c.result("counterexample", report::point(x));
                    c.expect(
                        "counterexample refutes",
                        space.eval(&a, x)? > space.eval(&b, x)?,
                    );
                }
            }
            if dim == 1 {
                let refuted = oracle::breakpoint_refutation(&space, &a, &b);
                if let Some(x) = &refuted {
                    c.result("breakpointRefutation", q(x));
                }
                c.expect("breakpoints agree", refuted.is_none() == cex.is_none());
            }
            Ok(())
        })
    })
}

fn dominance(config: &RunConfig) -> Vec<Check> {
    cases(config, |i| {
        let dim = case_dim(config, i);
        let mut r = rng(config, 3, i);
        let a = r.positive_term(dim, &params());
        let mut b = r.positive_term(dim, &params());
        // a third of the pairs dominate by construction
        if i % 3 == 0 {
            b = b.add(&a.scale(ratio(1, r.range(1, 5))));
        }
        let mut c = Check::new(case_name("dominance", i));
        c.input("dim", dim)
            .input("a", term(&a))
            .input("b", term(&b));
        attempt(c, |c| {
            let space = config.space_of_dim(dim);
            let (ap, bp) = (a.pos(), b.pos());
            match space.dominates(&a, &b)? {
                DominanceResult::Dominated(n) => {
                    c.result("multiplier", n);
                    c.expect(
                        "a <= n·b",
                        space.leq(&ap, &bp.scale(Rational::from_integer(n.into())))?,
                    );
                    if n >= 2 {
                        let below = bp.scale(Rational::from_integer((n - 1).into()));
                        c.expect("a > (n-1)·b somewhere", !space.leq(&ap, &below)?);
                    }
                }
                DominanceResult::NotDominated(x) => {
                    c.result("witness", report::point(&x));
                    let (av, bv) = (space.eval(&ap, &x)?, space.eval(&bp, &x)?);
                    c.result("a(x)", q(&av)).result("b(x)", q(&bv));
                    c.expect("b(x) = 0 < a(x)", bv.is_zero() && av.is_positive());
                }
            }
            Ok(())
        })
    })
}

fn density(config: &RunConfig) -> Vec<Check> {
    let levels: Vec<u32> = match config.n {
        Some(n) => vec![n],
        None => vec![2, 4, 8, 16],
    };
    cases(config, |i| {
        let dim = case_dim(config, i);
        let mut r = rng(config, 4, i);
        let f = r.unit_range_term(dim, &params());
        let m = config.m.map_or(1 + r.below(8) as usize, |m| m as usize);
        let fv = r.unit_vector(m, 32);
        let mut c = Check::new(case_name("density", i));
        c.input("dim", dim)
            .input("f", term(&f))
            .input("fVector", report::vector(&fv));
        attempt(c, |c| {
            let pl = config.space_of_dim(dim);
            let fin = FinSpace::new(m);
            let mut last: Option<(Rational, Rational)> = None;
            for &n in &levels {
                let bound = ratio(1, n.into());
                let e_pl = freudenthal_approx(&pl, &f, n)?.error;
                let e_fin = freudenthal_approx(&fin, &fv, n)?.error;
                c.result(&format!("plError N={n}"), q(&e_pl));
                c.result(&format!("vectorError N={n}"), q(&e_fin));
                c.expect(&format!("error <= 1/{n}"), e_pl <= bound && e_fin <= bound);
                if let Some((p, v)) = &last {
                    c.expect(&format!("monotone at N={n}"), e_pl <= *p && e_fin <= *v);
                }
                last = Some((e_pl, e_fin));
            }
            Ok(())
        })
    })
}

fn partitions(config: &RunConfig) -> Vec<Check> {
    cases(config, |i| {
        let dim = case_dim(config, i);
        let mut r = rng(config, 5, i);
        let count = 2 + r.below(4) as usize;
        let mut reps: Vec<PLTerm> = (0..count - 1).map(|_| r.term(dim, &params())).collect();
        // the last open is D(c − (t_1 ∨ … ∨ t_{K−1})), so the join of the
        // cover stays above c/2 everywhere
        let joined = reps[1..].iter().fold(reps[0].clone(), |acc, t| acc.join(t));
        let level = ratio(r.range(1, 16), 8);
        reps.push(PLTerm::constant(level).sub(&joined));
        let k = config.k.unwrap_or(1 + r.below(8));
        let f = r.unit_range_term(dim, &params());
        let mut c = Check::new(case_name("partitions", i));
        c.input("dim", dim).input("cover", report::terms(&reps));
        c.input("f", term(&f)).input("k", k);
        attempt(c, |c| {
            let s = Spectrum::new(config.space_of_dim(dim));
            let space = s.space();
            let opens: Vec<_> = reps.iter().map(|t| s.d_of(t)).collect();
            let cp = s.cover_to_partition(&opens, None)?;
            c.result("delta", q(&cp.delta));
            c.result("parts", report::terms(&cp.parts.elements));
            c.expect("delta > 0", cp.delta.is_positive());
            c.expect(
                "sum = 1",
                space.equal(&space.sum(&cp.parts.elements), &PLTerm::unit())?,
            );
            c.expect("0 <= p_i <= 1", is_partition(space, &cp.parts)?);
            let mut multipliers = Vec::new();
            let mut subordinate = true;
            for (p, b) in cp.parts.elements.iter().zip(&opens) {
                match space.dominates(p, b.rep())? {
                    DominanceResult::Dominated(n) => multipliers.push(Value::from(n)),
                    DominanceResult::NotDominated(x) => {
                        subordinate = false;
                        multipliers.push(report::point(&x));
                    }
                }
            }
            c.result("multipliers", multipliers);
            c.expect("p_i ≼ b_i", subordinate);
            // slice partition of f with its support condition
            let v = rieszlab::constructions::slice_partition(space, &f, k)?;
            c.expect("slice partition", check_slice_partition(space, &v)?.holds());
            c.expect("slice support", s.slice_support_holds(&f, &v)?);
            Ok(())
        })
    })
}

fn ledger(config: &RunConfig) -> Vec<Check> {
    let mut checks = cases(config, |i| {
        let mut r = rng(config, 6, i);
        let m = config.m.map_or(1 + r.below(8) as usize, |m| m as usize);
        let k = config.k.unwrap_or(2 + r.below(31));
        let a = r.diagonal_map(m, 10);
        let (f, g) = (r.unit_vector(m, 16), r.unit_vector(m, 16));
        // negative control: a map whose off-diagonal part is asymmetric
        let cm = m.max(2);
        let control = loop {
            let d = r.dense_map(cm, 8);
            let mat = d.matrix();
            if (0..cm).any(|p| (0..cm).any(|q| mat[p][q] != mat[q][p])) {
                break d;
            }
        };
        let mut c = Check::new(case_name("ledger", i));
        c.input("m", m)
            .input("k", k)
            .input("A", report::matrix(a.matrix()));
        c.input("f", report::vector(&f))
            .input("g", report::vector(&g));
        c.input("control", report::matrix(control.matrix()));
        attempt(c, |c| {
            let led = main_theorem_ledger(&a, &f, &g, k)?;
            let entries: serde_json::Map<String, Value> = led
                .ledger
                .entries
                .iter()
                .map(|e| {
                    let v = json!({"value": q(&e.value), "bound": q(&e.bound), "holds": e.holds});
                    (e.label.clone(), v)
                })
                .collect();
            c.result("epsilon", q(&led.epsilon));
            c.result("ledger", Value::Object(entries));
            c.result("A(f,g)", q(&led.a_fg))
                .result("A(g,f)", q(&led.a_gf));
            c.result("A(1,fg)", q(&led.a_unit_fg));
            c.expect("ledger holds", led.ledger.all_hold());
            c.expect("A(f,g) = A(1,fg)", led.a_fg == led.a_unit_fg);
            c.expect("A(f,g) = A(g,f)", led.a_fg == led.a_gf);
            let flagged = match control.orthosymmetry() {
                Orthosymmetry::Orthosymmetric => false,
                Orthosymmetry::Counterexample { f, g, value } => {
                    c.result(
                        "controlWitness",
                        json!({
                            "f": report::vector(&f),
                            "g": report::vector(&g),
                            "value": q(&value),
                        }),
                    );
                    f.meet(&g).is_zero() && control.apply(&f, &g) == value && !value.is_zero()
                }
            };
            c.result("controlFlagged", flagged);
            Ok(())
        })
    });
    let total = checks.len();
    let flagged = checks
        .iter()
        .filter(|c| c.results.get("controlFlagged") == Some(&Value::Bool(true)))
        .count();
    let mut control = Check::new("ledger negative control");
    control
        .result("asymmetric", total)
        .result("flagged", flagged);
    control.expect("at least 95% flagged", flagged * 100 >= total * 95);
    checks.push(control);
    checks
}

fn dini(config: &RunConfig) -> Vec<Check> {
    let ms: Vec<u32> = match config.m {
        Some(m) => vec![m],
        None => vec![2, 4, 10],
    };
    let eighths: Vec<Rational> = (0..=8).map(|i| ratio(i, 8)).collect();
    let mut checks: Vec<Check> = ms
        .par_iter()
        .map(|&m| {
            let mut c = Check::new(format!("dini grid m={m}"));
            c.input("m", m).input("grid", "{0, 1/8, ..., 1}^3");
            attempt(c, |c| {
                let bound = ratio(2, m.into());
                let mut worst = int(0);
                let mut violations = 0u64;
                for f in &eighths {
                    for g in &eighths {
                        for h in &eighths {
                            let p = dini_pointwise(f, g, h, m)?;
                            if p.value > bound || p.value > p.case_bound {
                                violations += 1;
                            }
                            worst = worst.max(p.value);
                        }
                    }
                }
                c.result("points", eighths.len().pow(3))
                    .result("worst", q(&worst));
                c.result("violations", violations);
                c.expect("value <= 2/m", violations == 0);
                Ok(())
            })
        })
        .collect();
    checks.extend(cases(config, |i| {
        let mut r = rng(config, 7, i);
        let mut c = Check::new(case_name("dini", i));
        let triples: Vec<_> = ms
            .iter()
            .map(|&m| {
                let len = 1 + r.below(8) as usize;
                (
                    m,
                    r.unit_vector(len, 20),
                    r.unit_vector(len, 20),
                    r.unit_vector(len, 20),
                )
            })
            .collect();
        for (m, f, g, h) in &triples {
            c.input(
                &format!("m={m}"),
                json!({
                    "f": report::vector(f),
                    "g": report::vector(g),
                    "h": report::vector(h),
                }),
            );
        }
        attempt(c, |c| {
            for (m, f, g, h) in &triples {
                let bound = ratio(2, (*m).into());
                let rep = dini_uniform(f, g, h, *m)?;
                let square = u64::from(m * m);
                let (n, global) =
                    combine_witnesses(&rep.witnesses, &rep.partition, |k| dini_vector(f, g, h, k))?;
                c.result(&format!("values m={m}"), report::vector(&rep.values));
                c.result(&format!("global m={m}"), q(&global));
                c.expect(&format!("n = m² (m={m})"), rep.n == square && n == square);
                c.expect(&format!("ledger m={m}"), rep.ledger.all_hold());
                c.expect(
                    &format!("values <= 2/m (m={m})"),
                    rep.values.norm() <= bound && global <= bound,
                );
                c.expect(
                    &format!("glued bound covers every cell (m={m})"),
                    rep.values.entries().iter().all(|v| *v <= global),
                );
            }
            Ok(())
        })
    }));
    checks
}

fn normality(config: &RunConfig) -> Vec<Check> {
    cases(config, |i| {
        let dim = case_dim(config, i);
        let mut r = rng(config, 8, i);
        let a = r.term(dim, &params());
        let level = ratio(r.range(1, 16), 8);
        let b = PLTerm::constant(level).sub(&a);
        let mut c = Check::new(case_name("normality", i));
        c.input("dim", dim)
            .input("b1", term(&a))
            .input("b2", term(&b));
        attempt(c, |c| {
            let s = Spectrum::new(config.space_of_dim(dim));
            let (b1, b2) = (s.d_of(&a), s.d_of(&b));
            c.expect("b1 ∨ b2 = top", s.is_top(&s.join(&b1, &b2))?);
            let (c1, c2) = s.normality_witness(&b1, &b2)?;
            c.result("c1", term(c1.rep())).result("c2", term(c2.rep()));
            c.expect("c1 ∧ c2 = bottom", s.is_zero(&s.meet(&c1, &c2))?);
            c.expect("c1 ∨ b1 = top", s.is_top(&s.join(&c1, &b1))?);
            c.expect("c2 ∨ b2 = top", s.is_top(&s.join(&c2, &b2))?);
            Ok(())
        })
    })
}
