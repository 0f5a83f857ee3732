use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rieszlab::lp::{affine_extrema, fm_feasible, AffineForm, Constraint, LinearSystem};
use rieszlab::random::RandomSource;
use rieszlab::rational::int;
use rieszlab::PlSpace;
use rieszlab_bench::term_pairs;

fn leq(c: &mut Criterion) {
    let mut group = c.benchmark_group("leq");
    for dim in [1usize, 2] {
        let space = PlSpace::unit_cube(dim);
        let pairs = term_pairs(1, dim, 6, 16);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &pairs, |b, pairs| {
            b.iter(|| {
                for (x, y) in pairs {
                    black_box(space.leq(x, &x.join(y)).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn dominates(c: &mut Criterion) {
    let mut group = c.benchmark_group("dominates");
    for dim in [1usize, 2] {
        let space = PlSpace::unit_cube(dim);
        let pairs = term_pairs(2, dim, 5, 8);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &pairs, |b, pairs| {
            b.iter(|| {
                for (x, y) in pairs {
                    black_box(space.dominates(&x.pos(), &y.pos()).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn fourier_motzkin(c: &mut Criterion) {
    let mut r = RandomSource::new(3);
    let mut form = |dim: usize| {
        AffineForm::new(
            (0..dim).map(|_| r.rational(4, 3)).collect(),
            r.rational(3, 4),
        )
    };
    let systems: Vec<(LinearSystem, AffineForm)> = (0..16)
        .map(|_| {
            let cs = (0..6).map(|_| Constraint::non_negative(form(3))).collect();
            (
                LinearSystem::new(cs, vec![(int(0), int(1)); 3]).unwrap(),
                form(3),
            )
        })
        .collect();
    c.bench_function("fm/feasible-3d", |b| {
        b.iter(|| {
            for (s, _) in &systems {
                black_box(fm_feasible(s).unwrap());
            }
        })
    });
    c.bench_function("fm/extrema-3d", |b| {
        b.iter(|| {
            for (s, f) in &systems {
                let _ = black_box(affine_extrema(f, s));
            }
        })
    });
}

criterion_group!(benches, leq, dominates, fourier_motzkin);
criterion_main!(benches);
