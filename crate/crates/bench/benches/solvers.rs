use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mdlp_bench::{label, suite_instances};
use mdlp_core::indexcalc::{dlp_via_index_calculus, random_tasks};
use mdlp_core::nat;
use mdlp_core::solvers::{attack_collapse, solve_exhaustive, solve_mitm, SolverConfig};

fn generic_solvers(c: &mut Criterion) {
    let config = SolverConfig::default();
    let mut group = c.benchmark_group("t2");
    group.sample_size(10);
    for inst in suite_instances("t2").expect("suite generates").iter().take(6) {
        let id = label(inst);
        group.bench_with_input(BenchmarkId::new("exhaustive", &id), inst, |b, inst| {
            b.iter(|| solve_exhaustive(black_box(inst), &config))
        });
        group.bench_with_input(BenchmarkId::new("mitm", &id), inst, |b, inst| {
            b.iter(|| solve_mitm(black_box(inst), &config))
        });
    }
    group.finish();
}

fn reductions(c: &mut Criterion) {
    let config = SolverConfig::default();
    let mut group = c.benchmark_group("attacks");
    for inst in suite_instances("attacks").expect("suite generates").iter().step_by(3) {
        group.bench_with_input(BenchmarkId::new("collapse", label(inst)), inst, |b, inst| {
            b.iter(|| attack_collapse(black_box(inst), &config))
        });
    }
    group.finish();
}

fn index_calculus(c: &mut Criterion) {
    let mut group = c.benchmark_group("indexcalc");
    group.sample_size(10);
    for task in random_tasks(3, 10_000, 100_000, 1) {
        group.bench_with_input(BenchmarkId::from_parameter(&task.modulus), &task, |b, task| {
            b.iter(|| dlp_via_index_calculus(&task.modulus, &task.base, black_box(&task.target), &nat(30), 0))
        });
    }
    group.finish();
}

criterion_group!(benches, generic_solvers, reductions, index_calculus);
criterion_main!(benches);
