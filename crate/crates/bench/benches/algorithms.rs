use artin3_bench::{named, scrambled};
use artin3_core::character::character_table;
use artin3_core::cohomology::{enumerate_central_extensions, h2_basis};
use artin3_core::counting::{a_m, p3_pipeline, P1Case};
use artin3_core::group::is_isomorphic;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    for name in ["P1", "J", "P3"] {
        let g = named(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| character_table(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("h2_basis");
    group.sample_size(10);
    for name in ["P1", "J", "P3"] {
        let g = named(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| h2_basis(black_box(g)).unwrap())
        });
    }
    group.finish();

    let p1 = named("P1");
    c.bench_function("central_extensions/P1", |b| {
        b.iter(|| enumerate_central_extensions(black_box(&p1)).unwrap())
    });
}

fn isomorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("isomorphism");
    for (name, k) in [("P1", 5), ("J", 5), ("P3", 5)] {
        let g = named(name);
        let h = scrambled(&g, k);
        group.bench_function(name, |b| {
            b.iter(|| is_isomorphic(black_box(&g), black_box(&h)))
        });
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    c.bench_function("a_m/p=61,m=30", |b| {
        b.iter(|| a_m(P1Case::I, black_box(61), black_box(30)).unwrap())
    });
    c.bench_function("p3_pipeline/p=29,m=9", |b| {
        b.iter(|| p3_pipeline(black_box(29), black_box(9)).unwrap())
    });
}

criterion_group!(benches, character_tables, cohomology, isomorphism, counting);
criterion_main!(benches);
