//! Compares the rayon path against a single-thread pool on the heavy
//! enumerations. Build with `--no-default-features` to time the plain
//! sequential code instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rootfire::ehrhart::{span_table, sym_formula_domain};
use rootfire::firing::{fiber_table, DeformParam, FiringMode};
use rootfire::permutohedra::perm_count_poly_with;
use rootfire::{Limits, RootSystem, Weight};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", rayon::ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn fiber_tables(c: &mut Criterion) {
    let limits = Limits::default();
    let b3 = RootSystem::of("B3");
    let mut g = c.benchmark_group("fiber_table_B3_rho_k2");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &pool, |b, pool| {
            b.iter(|| {
                pool.install(|| {
                    fiber_table(&b3, &Weight::rho(3), &DeformParam::uniform(2), FiringMode::Truncated, &limits).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn formula_sums(c: &mut Criterion) {
    let limits = Limits::default();
    let c3 = RootSystem::of("C3");
    let mut g = c.benchmark_group("sym_formula_C3_domain");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &pool, |b, pool| {
            b.iter(|| pool.install(|| sym_formula_domain(&c3, &limits).unwrap()))
        });
    }
    g.finish();
}

fn perm_scans(c: &mut Criterion) {
    let limits = Limits::default();
    let a4 = RootSystem::of("A4");
    let table = span_table(&a4, &limits).unwrap();
    let mut g = c.benchmark_group("perm_count_poly_A4_2rho");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &pool, |b, pool| {
            b.iter(|| pool.install(|| perm_count_poly_with(&a4, &table, &Weight::rho(4).scale(2), &limits).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, fiber_tables, formula_sums, perm_scans);
criterion_main!(benches);
