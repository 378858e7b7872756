use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fivecolor::batch::{color_specs, color_specs_seq, corpus_spec, validate_catalog, validate_catalog_seq};
use fivecolor::instances::{generate, GenSpec};
use fivecolor::{builtin, color_planar, discharge, ColorOptions, EmbeddedGraph};

fn single(c: &mut Criterion) {
    let mut group = c.benchmark_group("color_planar");
    group.sample_size(10);
    for n in [250, 1000, 4000] {
        let g = generate(GenSpec::new(11, n, 3 * n)).into_graph();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| color_planar(g).unwrap()));
    }
    group.finish();
}

fn corpus(c: &mut Criterion) {
    let specs: Vec<GenSpec> = (1..=24).map(corpus_spec).collect();
    let opts = ColorOptions::default();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| color_specs_seq(&specs, opts)));
    group.bench_function("parallel", |b| b.iter(|| color_specs(&specs, opts)));
    group.finish();
}

fn catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_validation");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| validate_catalog_seq(builtin())));
    group.bench_function("parallel", |b| b.iter(|| validate_catalog(builtin())));
    group.finish();
}

fn charges(c: &mut Criterion) {
    let g: EmbeddedGraph = generate(GenSpec::new(4, 4000, 12000).shaped()).into_graph();
    c.bench_function("discharge_4000", |b| b.iter(|| discharge::transfers(&g)));
}

criterion_group!(benches, single, corpus, catalog, charges);
criterion_main!(benches);
