use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use rpr_bench::{configurations, poses, reference, REFERENCE_L1};
use rpr_core::cuspfind::{cusp_bipoly, singularity_bipoly};
use rpr_core::kinecore::{constraint_hessians, constraint_jacobian, normalized_cusp_residual, singularity_polynomial};
use rpr_core::polysolve::{real_roots, sylvester_resultant, ResultantMethod};
use rpr_core::slicepoly::ClosureTrig;
use rpr_core::{count_assembly_modes, ModeCounter};

fn kinematics(c: &mut Criterion) {
    let g = reference();
    let confs = configurations(&g, 64);
    let ps = poses(64, REFERENCE_L1);
    c.bench_function("jacobian_and_hessians_x64", |b| {
        b.iter(|| {
            for q in &confs {
                black_box(constraint_jacobian(&g, q).unwrap());
                black_box(constraint_hessians(&g, q).unwrap());
            }
        })
    });
    c.bench_function("cusp_residual_x64", |b| {
        b.iter(|| confs.iter().map(|q| normalized_cusp_residual(&g, q)).collect::<Vec<_>>())
    });
    c.bench_function("singularity_polynomial_x64", |b| {
        b.iter(|| ps.iter().map(|p| singularity_polynomial(&g, p)).collect::<Vec<_>>())
    });
}

fn elimination(c: &mut Criterion) {
    let g = reference();
    c.bench_function("slice_polynomials", |b| {
        b.iter(|| {
            let ct = ClosureTrig::for_slice(&g, REFERENCE_L1).unwrap();
            black_box((ct.singularity(), ct.cusp()))
        })
    });
    let s = singularity_bipoly(&g, REFERENCE_L1).unwrap();
    let k = cusp_bipoly(&g, REFERENCE_L1).unwrap();
    let mut group = c.benchmark_group("resultant");
    group.sample_size(10);
    group.bench_function("eval_interp", |b| b.iter(|| sylvester_resultant(&s, &k, ResultantMethod::EvalInterp).unwrap()));
    group.finish();
    let r = sylvester_resultant(&s, &k, ResultantMethod::EvalInterp).unwrap();
    let mut group = c.benchmark_group("roots");
    group.sample_size(10);
    group.bench_function("isolate_resultant", |b| b.iter(|| real_roots(&r, None).unwrap()));
    group.finish();
}

fn direct_kinematics(c: &mut Criterion) {
    let g = reference();
    let counter = ModeCounter::new(&g, REFERENCE_L1).unwrap();
    c.bench_function("mode_counter_build", |b| b.iter(|| ModeCounter::new(&g, REFERENCE_L1).unwrap()));
    c.bench_function("mode_counter_query", |b| b.iter(|| counter.count(black_box(15.0), black_box(17.0)).unwrap()));
    c.bench_function("count_assembly_modes", |b| {
        b.iter(|| count_assembly_modes(&g, [REFERENCE_L1, black_box(15.0), black_box(17.0)]).unwrap())
    });
}

criterion_group!(benches, kinematics, elimination, direct_kinematics);
criterion_main!(benches);
