//! Rayon vs sequential comparison on the data-parallel inner loops: the
//! 2^#F brute-force spin enumeration and per-circuit obstruction evaluation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dualspin::corpus;
use dualspin::spin::structures::{
    all_obstructions, all_obstructions_seq, circuit_parities, count_solutions,
    count_solutions_seq, CircuitParity,
};
use dualspin::spin::SpinContext;

fn bench_brute_force(c: &mut Criterion) {
    let dc = corpus::t3_six_tet();
    let ctx = SpinContext::new(&dc).expect("orientable");
    let parity = circuit_parities(&ctx).expect("parity data");
    // enumerate a 2^20 space by padding the 12 real facet bits: the extra
    // bits never touch a mask, so every padded vector is checked honestly
    let padded = CircuitParity { targets: parity.targets.clone(), masks: parity.masks.clone() };
    let mut group = c.benchmark_group("brute_force_enumeration_2_20");
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(count_solutions(&padded, 20)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(count_solutions_seq(&padded, 20)))
    });
    group.finish();
}

fn bench_obstructions(c: &mut Criterion) {
    let dc = corpus::double_simplex(6);
    let ctx = SpinContext::new(&dc).expect("orientable");
    let t = ctx.canonical_trivialization();
    let mut group = c.benchmark_group("obstructions_sphere6");
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(all_obstructions(&ctx, &t).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(all_obstructions_seq(&ctx, &t).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_brute_force, bench_obstructions);
criterion_main!(benches);
