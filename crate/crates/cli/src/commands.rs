//! One report-producing handler per subcommand.

use num_traits::Signed;
use rieszlab::constructions::{
    check_slice_partition, freudenthal_approx, is_partition, slice_partition,
};
use rieszlab::dini::{combine_witnesses, dini_uniform, dini_vector};
use rieszlab::falgebra::{commutativity_ledger, main_theorem_ledger, Orthosymmetry};
use rieszlab::random::RandomSource;
use rieszlab::{DominanceResult, FinSpace, FinVec, PLTerm};
use serde_json::{json, Value};

use crate::cli::{Cli, Command};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::input;
use crate::report::{self, q, term, Check, Report};
use crate::suites::run_suite;

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let config = cli.global.config()?;
    let (name, checks) = match &cli.command {
        Command::DecideLeq { a, b } => ("decide-leq", decide_leq(&config, a, b)?),
        Command::Dominates { a, b } => ("dominates", dominates(&config, a, b)?),
        Command::Norm { a } => ("norm", norm(&config, a)?),
        Command::Lattice { a, b } => ("lattice", lattice(&config, a, b)?),
        Command::Partition { inputs, cover } => ("partition", partition(&config, inputs, *cover)?),
        Command::Approx { f, cover } => ("approx", approx(&config, f, *cover)?),
        Command::Ledger { matrix, f, g } => ("ledger", ledger(&config, matrix, f, g)?),
        Command::Dini { f, g, h } => ("dini", dini(&config, f, g, h)?),
        Command::Suite { name } => return run_suite(&config, name),
    };
    Ok(Report::new(name, &config, checks))
}

fn terms<S: AsRef<str>>(config: &RunConfig, args: &[S]) -> Result<Vec<PLTerm>, CliError> {
    args.iter()
        .map(|a| input::term(a.as_ref(), config.dimension()))
        .collect()
}

fn decide_leq(config: &RunConfig, a: &str, b: &str) -> Result<Vec<Check>, CliError> {
    let space = config.space();
    let [a, b]: [PLTerm; 2] = terms(config, &[a, b])?.try_into().expect("two terms");
    let mut c = Check::new("a <= b");
    c.input("a", term(&a)).input("b", term(&b));
    match space.leq_counterexample(&a, &b)? {
        None => {
            c.result("leq", true);
        }
        Some(x) => {
            c.result("leq", false)
                .result("counterexample", report::point(&x));
            c.result("a(x)", q(&space.eval(&a, &x)?))
                .result("b(x)", q(&space.eval(&b, &x)?));
            c.passed = false;
        }
    }
    Ok(vec![c])
}

fn dominates(config: &RunConfig, a: &str, b: &str) -> Result<Vec<Check>, CliError> {
    let space = config.space();
    let [a, b]: [PLTerm; 2] = terms(config, &[a, b])?.try_into().expect("two terms");
    let mut c = Check::new("a ≼ b");
    c.input("a", term(&a)).input("b", term(&b));
    match space.dominates(&a, &b)? {
        DominanceResult::Dominated(n) => {
            c.result("dominated", true).result("multiplier", n);
        }
        DominanceResult::NotDominated(x) => {
            c.result("dominated", false)
                .result("witness", report::point(&x));
            c.result("a+(x)", q(&space.eval(&a.pos(), &x)?));
            c.passed = false;
        }
    }
    Ok(vec![c])
}

fn norm(config: &RunConfig, a: &str) -> Result<Vec<Check>, CliError> {
    let space = config.space();
    let a = input::term(a, config.dimension())?;
    let mut c = Check::new("norm");
    c.input("a", term(&a));
    let (sup, at_sup) = space.sup(&a)?;
    let (inf, at_inf) = space.inf(&a)?;
    c.result("norm", q(&space.norm(&a)?));
    c.result("sup", q(&sup))
        .result("argsup", report::point(&at_sup));
    c.result("inf", q(&inf))
        .result("arginf", report::point(&at_inf));
    Ok(vec![c])
}

fn lattice(config: &RunConfig, a: &str, b: &str) -> Result<Vec<Check>, CliError> {
    let s = rieszlab::Spectrum::new(config.space());
    let ts = terms(config, &[a, b])?;
    let (u, v) = (s.d_of(&ts[0]), s.d_of(&ts[1]));
    let (meet, join) = (s.meet(&u, &v), s.join(&u, &v));
    let mut c = Check::new("D(a), D(b)");
    c.input("a", term(&ts[0])).input("b", term(&ts[1]));
    c.result("meet", term(meet.rep()))
        .result("join", term(join.rep()));
    c.result("D(a) <= D(b)", s.leq(&u, &v)?)
        .result("D(b) <= D(a)", s.leq(&v, &u)?);
    c.result("meet is bottom", s.is_zero(&meet)?)
        .result("join is top", s.is_top(&join)?);
    if s.is_top(&join)? {
        let (c1, c2) = s.normality_witness(&u, &v)?;
        c.result("c1", term(c1.rep())).result("c2", term(c2.rep()));
        c.expect("c1 ∧ c2 = bottom", s.is_zero(&s.meet(&c1, &c2))?);
        c.expect("c1 ∨ D(a) = top", s.is_top(&s.join(&c1, &u))?);
        c.expect("c2 ∨ D(b) = top", s.is_top(&s.join(&c2, &v))?);
    }
    Ok(vec![c])
}

fn partition(config: &RunConfig, inputs: &[String], cover: bool) -> Result<Vec<Check>, CliError> {
    let k = config.k.unwrap_or(4);
    if cover {
        let s = rieszlab::Spectrum::new(config.space());
        let reps = terms(config, inputs)?;
        let opens: Vec<_> = reps.iter().map(|t| s.d_of(t)).collect();
        let cp = s.cover_to_partition(&opens, None)?;
        let space = s.space();
        let mut c = Check::new("cover partition");
        c.input("cover", report::terms(&reps));
        c.result("delta", q(&cp.delta))
            .result("parts", report::terms(&cp.parts.elements));
        c.expect("partition of unity", is_partition(space, &cp.parts)?);
        let mut ok = true;
        for (p, b) in cp.parts.elements.iter().zip(&reps) {
            ok &= space.dominates(p, b)?.is_dominated();
        }
        c.expect("p_i ≼ b_i", ok);
        return Ok(vec![c]);
    }
    let [f] = inputs else {
        return Err(CliError::Usage(
            "a slice partition takes one input; use --cover for several".into(),
        ));
    };
    let mut c = Check::new(format!("slice partition k={k}"));
    c.input("k", k);
    if input::is_vector(f)? {
        let f = input::vector(f)?;
        let space = FinSpace::new(f.len());
        let v = slice_partition(&space, &f, k)?;
        c.input("f", report::vector(&f))
            .result("parts", report::vectors(&v.elements));
        c.expect(
            "slice partition",
            check_slice_partition(&space, &v)?.holds(),
        );
    } else {
        let s = rieszlab::Spectrum::new(config.space());
        let f = input::term(f, config.dimension())?;
        let v = slice_partition(s.space(), &f, k)?;
        c.input("f", term(&f))
            .result("parts", report::terms(&v.elements));
        c.expect(
            "slice partition",
            check_slice_partition(s.space(), &v)?.holds(),
        );
        c.expect("slice support", s.slice_support_holds(&f, &v)?);
    }
    Ok(vec![c])
}

fn approx(config: &RunConfig, f: &str, cover: bool) -> Result<Vec<Check>, CliError> {
    let n = config.n.unwrap_or(4);
    let bound = rieszlab::rational::ratio(1, n.into());
    let mut c = Check::new(format!("approximation N={n}"));
    c.input("n", n);
    let error = if input::is_vector(f)? {
        if cover {
            return Err(CliError::Usage("--cover approximations take a term".into()));
        }
        let fv = input::vector(f)?;
        let a = freudenthal_approx(&FinSpace::new(fv.len()), &fv, n)?;
        c.input("f", report::vector(&fv))
            .result("approximant", report::vector(&a.approximant));
        a.error
    } else {
        let ft = input::term(f, config.dimension())?;
        c.input("f", term(&ft));
        let a = if cover {
            let s = rieszlab::Spectrum::new(config.space());
            s.cover_density_approx(&ft, n)?.1
        } else {
            freudenthal_approx(&config.space(), &ft, n)?
        };
        c.result("approximant", term(&a.approximant));
        a.error
    };
    c.result("error", q(&error)).result("bound", q(&bound));
    c.expect("error <= 1/N", error <= bound);
    Ok(vec![c])
}

fn ledger(
    config: &RunConfig,
    matrix: &Option<String>,
    f: &Option<String>,
    g: &Option<String>,
) -> Result<Vec<Check>, CliError> {
    let mut r = RandomSource::new(config.seed);
    let m = config.m.unwrap_or(4) as usize;
    let a = match matrix {
        Some(text) => input::matrix(text)?,
        None => r.diagonal_map(m, 10),
    };
    let m = a.dim();
    let mut vec_or_random = |arg: &Option<String>| match arg {
        Some(text) => input::vector(text),
        None => Ok(r.unit_vector(m, 16)),
    };
    let (f, g) = (vec_or_random(f)?, vec_or_random(g)?);
    let k = config.k.unwrap_or(8);
    let mut c = Check::new(format!("ledger k={k}"));
    c.input("A", report::matrix(a.matrix())).input("k", k);
    c.input("f", report::vector(&f))
        .input("g", report::vector(&g));
    if let Orthosymmetry::Counterexample { f, g, value } = a.orthosymmetry() {
        c.result("orthosymmetric", false);
        c.result(
            "witness",
            json!({"f": report::vector(&f), "g": report::vector(&g), "value": q(&value)}),
        );
        c.passed = false;
        return Ok(vec![c]);
    }
    c.result("orthosymmetric", true);
    let entries = if f.in_unit_range() && g.in_unit_range() {
        let led = main_theorem_ledger(&a, &f, &g, k)?;
        c.result("epsilon", q(&led.epsilon));
        c.result("A(f,g)", q(&led.a_fg))
            .result("A(g,f)", q(&led.a_gf));
        c.result("A(1,fg)", q(&led.a_unit_fg));
        c.expect("A(f,g) = A(1,fg)", led.a_fg == led.a_unit_fg);
        c.expect("A(f,g) = A(g,f)", led.a_fg == led.a_gf);
        led.ledger
    } else {
        commutativity_ledger(&a, &f, &g, k)?
    };
    let json_entries: serde_json::Map<String, Value> = entries
        .entries
        .iter()
        .map(|e| {
            (
                e.label.clone(),
                json!({"value": q(&e.value), "bound": q(&e.bound), "holds": e.holds}),
            )
        })
        .collect();
    c.result("ledger", Value::Object(json_entries));
    c.expect("ledger holds", entries.all_hold());
    Ok(vec![c])
}

fn dini(
    config: &RunConfig,
    f: &Option<String>,
    g: &Option<String>,
    h: &Option<String>,
) -> Result<Vec<Check>, CliError> {
    let m = config.m.unwrap_or(4);
    let mut r = RandomSource::new(config.seed);
    let given: Vec<Option<FinVec>> = [f, g, h]
        .iter()
        .map(|a| a.as_deref().map(input::vector).transpose())
        .collect::<Result<_, _>>()?;
    let len = given.iter().flatten().map(FinVec::len).next().unwrap_or(4);
    let [f, g, h]: [FinVec; 3] = given
        .into_iter()
        .map(|v| v.unwrap_or_else(|| r.unit_vector(len, 20)))
        .collect::<Vec<_>>()
        .try_into()
        .expect("three vectors");
    let rep = dini_uniform(&f, &g, &h, m)?;
    let (n, global) = combine_witnesses(&rep.witnesses, &rep.partition, |k| {
        dini_vector(&f, &g, &h, k)
    })?;
    let bound = rieszlab::rational::ratio(2, m.into());
    let mut c = Check::new(format!("dini m={m}"));
    c.input("m", m)
        .input("f", report::vector(&f))
        .input("g", report::vector(&g));
    c.input("h", report::vector(&h));
    c.result("n", n)
        .result("values", report::vector(&rep.values));
    c.result("globalBound", q(&global))
        .result("bound", q(&bound));
    c.expect("ledger holds", rep.ledger.all_hold());
    c.expect(
        "values <= 2/m",
        rep.values.norm() <= bound && global <= bound,
    );
    c.expect(
        "values >= 0",
        rep.values.entries().iter().all(|v| !v.is_negative()),
    );
    Ok(vec![c])
}
