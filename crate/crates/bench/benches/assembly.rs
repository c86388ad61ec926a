use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lapbie::geometry::{build_domain, make_circle, make_fourier_curve, FourierCurve, Role};
use lapbie::operators::{assemble_double_layer_pv, assemble_single_layer};
use lapbie::solvers::{solve_robin_with, RobinOptions};
use lapbie::{BoundaryFunction, Domain, LayerOperators, Point};

fn kite_domain(n: usize) -> Domain {
    let outer = make_circle(Point::new(0.0, 0.0), 3.0, n, Role::Outer).unwrap();
    let kite = make_fourier_curve(FourierCurve::kite(Point::new(-1.0, 0.0), 0.5), n, Role::Hole).unwrap();
    let small = make_circle(Point::new(1.3, 0.0), 0.4, n, Role::Hole).unwrap();
    build_domain(outer, vec![kite, small]).unwrap()
}

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assembly");
    for n in [32, 64, 128] {
        let d = kite_domain(n);
        group.bench_with_input(BenchmarkId::new("single_layer", n), &d, |b, d| {
            b.iter(|| assemble_single_layer(black_box(d)))
        });
        group.bench_with_input(BenchmarkId::new("double_layer", n), &d, |b, d| {
            b.iter(|| assemble_double_layer_pv(black_box(d)))
        });
        group.bench_with_input(BenchmarkId::new("layer_operators", n), &d, |b, d| {
            b.iter(|| LayerOperators::assemble(black_box(d)))
        });
    }
    group.finish();
}

fn composites(c: &mut Criterion) {
    let mut group = c.benchmark_group("composites");
    group.sample_size(10);
    for n in [32, 64] {
        let d = kite_domain(n);
        group.bench_with_input(BenchmarkId::new("jprime_j", n), &d, |b, d| {
            b.iter(|| {
                let ops = LayerOperators::assemble(d);
                black_box(ops.jprime_j().dim())
            })
        });
    }
    group.finish();
}

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("robin_solve");
    group.sample_size(10);
    for n in [32, 64, 128] {
        let d = kite_domain(n);
        let ops = LayerOperators::assemble(&d);
        let h = BoundaryFunction::constant(&d, 1.0);
        let g = BoundaryFunction::from_fn(&d, |node| node.point.x + node.normal.x);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(d, ops), |b, (d, ops)| {
            b.iter(|| solve_robin_with(d, ops, &h, &g, &RobinOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, assembly, composites, solve);
criterion_main!(benches);
