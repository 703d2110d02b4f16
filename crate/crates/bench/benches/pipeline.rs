use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use tropgrass::fan::star_scan;
use tropgrass::matroid::{enumerate_matroids, named_matroid};
use tropgrass::plucker::thin_schubert_generators;
use tropgrass::subdivision::regular_subdivision;
use tropgrass_bench::{intro_weight, tgr25, uniform_37};

fn subdivision(c: &mut Criterion) {
    let (m, w) = (uniform_37(), intro_weight());
    c.bench_function("regular_subdivision intro", |b| {
        b.iter(|| regular_subdivision(black_box(&m), black_box(&w)).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_matroids(3,5)", |b| b.iter(|| enumerate_matroids(black_box(3), 5).unwrap()));
}

fn relations(c: &mut Criterion) {
    let m = named_matroid("c_intro").unwrap();
    c.bench_function("thin_schubert_generators c_intro", |b| {
        b.iter(|| thin_schubert_generators(black_box(&m)))
    });
}

fn scan(c: &mut Criterion) {
    let f = tgr25();
    c.bench_function("star_scan TGr(2,5) origin", |b| {
        b.iter(|| star_scan(black_box(&f), &[], &f.lineality).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = subdivision, enumeration, relations, scan
}
criterion_main!(benches);
