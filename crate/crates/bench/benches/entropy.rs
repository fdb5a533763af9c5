use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ellipsoid_entropy::asymptotics::entropy_estimator;
use ellipsoid_entropy::block_decomp::{infinite_upper_bound, mixed_upper_bound, DEFAULT_ROGERS_K};
use ellipsoid_entropy::constants::zeta_series_constant;
use ellipsoid_entropy::finite_bounds::tightest_density_upper_bound;
use ellipsoid_entropy::hyperrect::{exact_entropy, exact_entropy_counting};
use ellipsoid_entropy::oracle::greedy_cover;
use ellipsoid_entropy::HolderExponent;
use ellipsoid_entropy_bench::{canonical, mixed_spec, small_ellipsoid};

fn exact(c: &mut Criterion) {
    let m = canonical(1.0, 1.0);
    let mut g = c.benchmark_group("exact");
    for eps in [1e-2, 1e-3, 1e-4] {
        g.bench_with_input(BenchmarkId::new("product", eps), &eps, |bch, &e| {
            bch.iter(|| exact_entropy(&m, black_box(e)).unwrap().bits)
        });
        g.bench_with_input(BenchmarkId::new("counting", eps), &eps, |bch, &e| {
            bch.iter(|| exact_entropy_counting(&m, black_box(e)).unwrap().bits)
        });
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let m = canonical(1.0, 1.0);
    let two = HolderExponent::TWO;
    let e = small_ellipsoid();
    c.bench_function("density_upper_bound", |b| {
        b.iter(|| tightest_density_upper_bound(&e, two, black_box(0.05)).unwrap())
    });
    c.bench_function("infinite_upper_bound/2,2", |b| {
        b.iter(|| infinite_upper_bound(&m, two, two, black_box(1e-3)).unwrap())
    });
    let spec = mixed_spec(100);
    c.bench_function("mixed_upper_bound", |b| {
        b.iter(|| mixed_upper_bound(&spec, black_box(0.3), 1.0, DEFAULT_ROGERS_K).unwrap())
    });
}

fn analytic(c: &mut Criterion) {
    let m = canonical(1.0, 3.0);
    c.bench_function("entropy_estimator/1e-4", |b| b.iter(|| entropy_estimator(&m, black_box(1e-4)).unwrap()));
    c.bench_function("zeta_series_constant", |b| b.iter(|| zeta_series_constant(black_box(0.5)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let e = small_ellipsoid();
    let mut g = c.benchmark_group("greedy_cover");
    g.sample_size(10);
    for res in [16u32, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(res), &res, |b, &r| {
            b.iter(|| greedy_cover(&e, HolderExponent::TWO, 0.1, r).unwrap().count)
        });
    }
    g.finish();
}

criterion_group!(benches, exact, bounds, analytic, oracle);
criterion_main!(benches);
