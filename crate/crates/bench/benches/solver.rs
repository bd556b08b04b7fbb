use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbitcrit::{bounds_report, critical_points_per_orbit, naive_critical_points, SolveOptions};
use orbitcrit_bench::{random, sphere};
use std::hint::black_box;

fn bounds(c: &mut Criterion) {
    let mut g = c.benchmark_group("bounds");
    for n in [4usize, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| bounds_report(black_box(n), n as u32, n / 2))
        });
    }
    g.finish();
}

fn orbit_solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit");
    let sphere = sphere();
    g.bench_function("sphere", |b| b.iter(|| critical_points_per_orbit(black_box(&sphere), 1, SolveOptions::default()).unwrap()));
    for (n, s) in [(4usize, 2usize), (4, 3), (5, 2)] {
        let inst = random(n, s, 1);
        g.bench_function(format!("n{n}_s{s}"), |b| {
            b.iter(|| critical_points_per_orbit(black_box(&inst), 1, SolveOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn naive_solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("naive");
    g.sample_size(10);
    let sphere = sphere();
    g.bench_function("sphere", |b| b.iter(|| naive_critical_points(black_box(&sphere), 1).unwrap()));
    g.finish();
}

criterion_group!(benches, bounds, orbit_solver, naive_solver);
criterion_main!(benches);
