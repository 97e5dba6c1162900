use criterion::{criterion_group, criterion_main, Criterion};

use rpr_bench::{reference, REFERENCE_L1};
use rpr_core::atlas::{region_map, trace_singular_curves, Window};
use rpr_core::find_cusps;

fn slices(c: &mut Criterion) {
    let g = reference();
    let mut group = c.benchmark_group("slice");
    group.sample_size(10);
    group.bench_function("find_cusps", |b| b.iter(|| find_cusps(&g, REFERENCE_L1).unwrap()));
    group.bench_function("trace_256", |b| b.iter(|| trace_singular_curves(&g, REFERENCE_L1, (256, 256))));
    let curves = trace_singular_curves(&g, REFERENCE_L1, (256, 256));
    let window = Window::around_curves(&g, REFERENCE_L1, &curves);
    group.bench_function("region_map_64", |b| b.iter(|| region_map(&g, REFERENCE_L1, window, (64, 64), &curves)));
    group.finish();
}

criterion_group!(benches, slices);
criterion_main!(benches);
