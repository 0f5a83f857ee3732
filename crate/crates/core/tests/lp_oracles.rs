use rieszlab::lp::{
    affine_extrema, cell_samples, fm_feasible, AffineForm, Constraint, Feasibility, LinearSystem,
};
use rieszlab::random::RandomSource;
use rieszlab::rational::{int, ratio};
use rieszlab::Rational;

fn random_form(r: &mut RandomSource, dim: usize) -> AffineForm {
    AffineForm::new(
        (0..dim).map(|_| r.rational(4, 3)).collect(),
        r.rational(3, 4),
    )
}

fn random_system(r: &mut RandomSource, dim: usize, strict: bool) -> LinearSystem {
    let count = 1 + r.below(4) as usize;
    let constraints = (0..count)
        .map(|_| {
            let f = random_form(r, dim);
            if strict && r.percent(50) {
                Constraint::positive(f)
            } else {
                Constraint::non_negative(f)
            }
        })
        .collect();
    LinearSystem::new(constraints, vec![(int(0), int(1)); dim]).unwrap()
}

fn grid2(steps: i64) -> Vec<Vec<Rational>> {
    (0..=steps)
        .flat_map(|i| (0..=steps).map(move |j| vec![ratio(i, steps), ratio(j, steps)]))
        .collect()
}

#[test]
fn feasibility_is_sound_against_a_grid() {
    let g = grid2(60);
    let mut r = RandomSource::new(21);
    let mut seen = [0usize; 2];
    for _ in 0..300 {
        let sys = random_system(&mut r, 2, true);
        match fm_feasible(&sys).unwrap() {
            Feasibility::Feasible(w) => {
                assert!(sys.satisfied_by(&w));
                seen[1] += 1;
            }
            Feasibility::Infeasible => {
                assert!(g.iter().all(|p| !sys.satisfied_by(p)));
                seen[0] += 1;
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn extrema_are_attained_and_extreme() {
    let g = grid2(40);
    let mut r = RandomSource::new(22);
    for _ in 0..150 {
        let sys = random_system(&mut r, 2, false);
        let f = random_form(&mut r, 2);
        match affine_extrema(&f, &sys) {
            Ok(e) => {
                assert!(sys.satisfied_by(&e.argmin) && sys.satisfied_by(&e.argmax));
                assert_eq!(f.eval(&e.argmin).unwrap(), e.min);
                assert_eq!(f.eval(&e.argmax).unwrap(), e.max);
                for p in g.iter().filter(|p| sys.satisfied_by(p)) {
                    let v = f.eval(p).unwrap();
                    assert!(e.min <= v && v <= e.max);
                }
            }
            Err(rieszlab::Error::EmptyRegion) => {
                assert!(fm_feasible(&sys).unwrap() == Feasibility::Infeasible);
            }
            Err(other) => panic!("unexpected error {other}"),
        }
    }
}

#[test]
fn one_dimensional_cells_are_crossings_plus_one() {
    let mut r = RandomSource::new(23);
    let unit = vec![(int(0), int(1))];
    for _ in 0..200 {
        let forms: Vec<AffineForm> = (0..1 + r.below(5))
            .map(|_| random_form(&mut r, 1))
            .collect();
        let mut roots: Vec<Rational> = forms
            .iter()
            .filter(|f| f.coeffs()[0] != int(0))
            .map(|f| -f.constant_term() / &f.coeffs()[0])
            .filter(|x| *x > int(0) && *x < int(1))
            .collect();
        roots.sort();
        roots.dedup();
        let cells = cell_samples(&forms, &unit, 3).unwrap();
        assert_eq!(cells.len(), roots.len() + 1);
    }
}

#[test]
fn cells_have_constant_nonzero_signs_in_2d() {
    let mut r = RandomSource::new(24);
    let unit = vec![(int(0), int(1)); 2];
    for _ in 0..40 {
        let forms: Vec<AffineForm> = (0..1 + r.below(4))
            .map(|_| random_form(&mut r, 2))
            .collect();
        let cells = cell_samples(&forms, &unit, 3).unwrap();
        // distinct cells differ in some sign, and no sample sits on a wall
        for (i, c) in cells.iter().enumerate() {
            for (f, s) in forms.iter().zip(&c.signs) {
                let v = f.eval(&c.sample).unwrap();
                assert!(v != int(0) || f.is_constant(), "sample on a wall: {s:?}");
            }
            for d in &cells[i + 1..] {
                assert_ne!(c.signs, d.signs);
            }
        }
    }
}
