//! Benchmarks for the exact linear algebra core and the resolution builders.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use augcoh_core::algebra::Algebra;
use augcoh_core::cohomology::ext_ring;
use augcoh_core::field::FieldSpec;
use augcoh_core::module::ModuleOver;
use augcoh_core::psq::build_psq;
use augcoh_core::resolution::{minimal_bimodule_resolution, minimal_resolution};
use augcoh_core::testutil::{random_matrix, XorShift};

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for (name, field) in [("Q", FieldSpec::rationals()), ("GF7", FieldSpec::prime(7).unwrap())] {
        let mut rng = XorShift::new(11);
        let m = random_matrix(&mut rng, field, 40, 40, 9);
        group.bench_function(format!("dense_40x40_{name}"), |b| {
            b.iter(|| std::hint::black_box(m.rref()))
        });
    }
    group.finish();
}

fn bench_resolutions(c: &mut Criterion) {
    let q = FieldSpec::rationals();
    let mut group = c.benchmark_group("resolutions");
    group.sample_size(10);
    let a3 = Arc::new(Algebra::truncated_polynomial(q, 3));
    group.bench_function("minimal_bimodule_x3_to_4", |b| {
        b.iter(|| std::hint::black_box(minimal_bimodule_resolution(&a3, 4).unwrap()))
    });
    let rsz = Arc::new(Algebra::radical_square_zero(q, 2));
    group.bench_function("minimal_k_over_rsz_to_4", |b| {
        b.iter(|| {
            std::hint::black_box(
                minimal_resolution(&rsz, &ModuleOver::trivial(rsz.clone()), 4).unwrap(),
            )
        })
    });
    group.finish();
}

fn bench_word_resolution(c: &mut Criterion) {
    let q = FieldSpec::rationals();
    let a = Arc::new(Algebra::truncated_polynomial(q, 2));
    let mut group = c.benchmark_group("word_resolution");
    group.sample_size(10);
    group.bench_function("build_psq_dual_numbers_to_4", |b| {
        b.iter(|| std::hint::black_box(build_psq(&a, &a, 4).unwrap()))
    });
    group.finish();
}

fn bench_ext_tables(c: &mut Criterion) {
    let q = FieldSpec::rationals();
    let rsz = Arc::new(Algebra::radical_square_zero(q, 2));
    let mut group = c.benchmark_group("ext_tables");
    group.sample_size(10);
    group.bench_function("ext_ring_rsz_to_4", |b| {
        b.iter(|| std::hint::black_box(ext_ring(&rsz, 4).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_rref, bench_resolutions, bench_word_resolution, bench_ext_tables);
criterion_main!(benches);
