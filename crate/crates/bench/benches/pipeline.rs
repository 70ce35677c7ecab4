use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use trigon_bench::{method1_genus10, projection, quick, Fixture};
use trigon_core::canonical::{adjoint_basis, forms_through_image};
use trigon_core::liealg::stabilizer_algebra;
use trigon_core::pipeline::{decide, DecideOptions};

fn options(f: &Fixture) -> DecideOptions {
    DecideOptions { seed: 1, point: f.point.clone() }
}

fn full_decision(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(10);
    for f in quick() {
        group.bench_with_input(BenchmarkId::from_parameter(f.name), &f, |b, f| {
            b.iter(|| decide(black_box(&f.curve), &options(f)).expect("decides"))
        });
    }
    group.finish();
}

fn large_genus(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide large genus");
    group.sample_size(10).measurement_time(Duration::from_secs(30));
    for f in [projection(7), method1_genus10()] {
        group.bench_with_input(BenchmarkId::from_parameter(f.name), &f, |b, f| {
            b.iter(|| decide(black_box(&f.curve), &options(f)).expect("decides"))
        });
    }
    group.finish();
}

fn stages(c: &mut Criterion) {
    let f = projection(6);
    let cm = adjoint_basis(&f.curve).expect("adjoints");
    let q = forms_through_image(&f.curve, &cm, 2).expect("quadrics");
    let mut group = c.benchmark_group("stages g7");
    group.sample_size(10);
    group.bench_function("adjoints", |b| b.iter(|| adjoint_basis(black_box(&f.curve)).expect("adjoints")));
    group.bench_function("quadrics", |b| b.iter(|| forms_through_image(&f.curve, black_box(&cm), 2).expect("quadrics")));
    group.bench_function("cubics", |b| b.iter(|| forms_through_image(&f.curve, black_box(&cm), 3).expect("cubics")));
    group.bench_function("stabilizer", |b| b.iter(|| stabilizer_algebra(black_box(&q)).expect("stabilizer")));
    group.finish();
}

criterion_group!(benches, full_decision, large_genus, stages);
criterion_main!(benches);
