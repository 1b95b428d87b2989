use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use snakeineq::extremal::{ds_constant, md_lower_bound};
use snakeineq::scans::{tau_dx_supnorm, tau_scan};
use snakeineq::{catalog_majorant, CatalogCase, ChebPoly, Interval};

fn eval(c: &mut Criterion) {
    let mut g = c.benchmark_group("clenshaw");
    for n in [16, 128, 512] {
        let p = ChebPoly::basis(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| black_box(p).eval(black_box(0.3)))
        });
    }
    g.finish();
}

fn roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("roots");
    for n in [16, 64] {
        let p = ChebPoly::basis(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| p.roots().unwrap())
        });
    }
    g.bench_function("supnorm_64", |b| {
        let p = ChebPoly::basis(64).derivative();
        b.iter(|| p.supnorm(Interval::UNIT))
    });
    g.finish();
}

fn snakes(c: &mut Criterion) {
    let case = CatalogCase::Case4 { c: vec![1.0, 2.0] };
    c.bench_function("snake_case4_n14", |b| {
        b.iter(|| catalog_majorant(&case, 14).unwrap())
    });
    let (_, s) = catalog_majorant(&case, 14).unwrap();
    c.bench_function("ds_constant_n14_k2", |b| {
        b.iter(|| ds_constant(&s, 2).unwrap())
    });
    c.bench_function("md_lower_bound_322", |b| {
        b.iter(|| md_lower_bound(2, 1, 322).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    c.bench_function("tau_row_n16", |b| {
        b.iter(|| tau_dx_supnorm(16, black_box(0.7)))
    });
    let mut g = c.benchmark_group("tau_scan");
    g.sample_size(10);
    g.bench_function("n8_grid1001", |b| {
        b.iter(|| tau_scan(8, 1001, 1001).unwrap())
    });
    g.finish();
}

criterion_group!(benches, eval, roots, snakes, scans);
criterion_main!(benches);
