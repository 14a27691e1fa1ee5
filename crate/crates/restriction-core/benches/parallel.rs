//! Same certified operations on one worker versus the full pool.
//!
//! Every reduction is chunked deterministically (see `sum`), so the two
//! arms produce bitwise-identical values; only the wall time differs. With
//! `--no-default-features` the pool arms collapse to a single sequential
//! benchmark of the fallback path.

use criterion::{criterion_group, criterion_main, Criterion};

use restriction_core::circle::CircleFunction;
use restriction_core::extension::{circle_l6_certified, extend_circle};
use restriction_core::grid::PlaneGrid;
use restriction_core::TWO_PI;

fn unit_density(n: usize) -> CircleFunction {
    CircleFunction::constant(n, TWO_PI.powf(-0.5)).unwrap()
}

fn bench_certified_sixth_norm(c: &mut Criterion) {
    let f = unit_density(256);
    let mut group = c.benchmark_group("certified_sixth_norm_321");
    group.sample_size(10);

    #[cfg(feature = "parallel")]
    {
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        group.bench_function("one_worker", |b| {
            b.iter(|| single.install(|| circle_l6_certified(&f, 40.0, 321).unwrap().total()))
        });
        group.bench_function("full_pool", |b| {
            b.iter(|| circle_l6_certified(&f, 40.0, 321).unwrap().total())
        });
    }

    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential_fallback", |b| {
        b.iter(|| circle_l6_certified(&f, 40.0, 321).unwrap().total())
    });

    group.finish();
}

fn bench_plane_extension(c: &mut Criterion) {
    let f = unit_density(256);
    let template = PlaneGrid::zeros(40.0, 40.0, 161, 161).unwrap();
    let mut group = c.benchmark_group("plane_extension_161");
    group.sample_size(10);

    #[cfg(feature = "parallel")]
    {
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        group.bench_function("one_worker", |b| {
            b.iter(|| single.install(|| extend_circle(&f, &template).lp_norm(2.0)))
        });
        group.bench_function("full_pool", |b| {
            b.iter(|| extend_circle(&f, &template).lp_norm(2.0))
        });
    }

    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential_fallback", |b| {
        b.iter(|| extend_circle(&f, &template).lp_norm(2.0))
    });

    group.finish();
}

criterion_group!(benches, bench_certified_sixth_norm, bench_plane_extension);
criterion_main!(benches);
