use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use itc_core::entanglement::{concurrence_row1_ground, wootters_concurrence, TwoQubitDensity};
use itc_core::sector::ground_state;
use itc_core::{CouplingProfile, SparseSectorHamiltonian, SymTable, SymmetricOperator};

fn sine(n: usize) -> CouplingProfile {
    CouplingProfile::sine(n, 1.0, 1.0).unwrap()
}

fn symmetric_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("symmetric_table");
    for n in [10, 40, 200] {
        let values = sine(n).kappa_squares();
        group.bench_with_input(BenchmarkId::from_parameter(n), &values, |b, v| {
            b.iter(|| SymTable::new(black_box(v), 6).unwrap())
        });
    }
    group.finish();
}

fn sector_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("sector_build");
    for (n, k) in [(10, 3), (14, 4), (16, 6)] {
        let profile = sine(n);
        group.bench_function(format!("n{n}_k{k}"), |b| {
            b.iter(|| SparseSectorHamiltonian::build(black_box(&profile), k).unwrap())
        });
    }
    group.finish();
}

fn sector_ground_state(c: &mut Criterion) {
    let mut group = c.benchmark_group("ground_state");
    group.sample_size(10);
    for (n, k) in [(8, 3), (12, 4), (14, 5)] {
        let h = SparseSectorHamiltonian::build(&sine(n), k).unwrap();
        group.bench_function(format!("n{n}_k{k}_dim{}", h.dim()), |b| {
            b.iter(|| ground_state(black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn wootters(c: &mut Criterion) {
    let s = 0.5f64.sqrt();
    let bell = TwoQubitDensity::pure([0.0, s, s, 0.0]);
    let mut werner = bell.matrix;
    for (a, row) in werner.iter_mut().enumerate() {
        for (b, x) in row.iter_mut().enumerate() {
            *x = 0.6 * *x + if a == b { 0.1 } else { 0.0 };
        }
    }
    let werner = TwoQubitDensity::new(werner);
    c.bench_function("wootters/werner", |b| b.iter(|| wootters_concurrence(black_box(&werner)).unwrap()));
}

fn row1_concurrence_sweep(c: &mut Criterion) {
    let profile = sine(40);
    c.bench_function("row1_concurrence/n40_first_vs_all_k1to6", |b| {
        b.iter(|| {
            let mut total = 0.0;
            for k in 1..=6 {
                for j in 1..40 {
                    total += concurrence_row1_ground(&profile, k, 0, j).unwrap().value;
                }
            }
            total
        })
    });
}

criterion_group!(benches, symmetric_table, sector_build, sector_ground_state, wootters, row1_concurrence_sweep);
criterion_main!(benches);
