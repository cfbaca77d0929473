use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use beatty_bench::{golden_ctx, golden_engine};
use beatty_zeta::continuation::z_direct;
use beatty_zeta::special::hurwitz_zeta;
use beatty_zeta::theta::theta;
use beatty_zeta::{IrrationalNumber, RValue};

fn special(c: &mut Criterion) {
    c.bench_function("theta u=0.37", |b| b.iter(|| theta(black_box(0.3), black_box(0.7), black_box(0.37))));
    c.bench_function("hurwitz s=0.5+10i", |b| b.iter(|| hurwitz_zeta(black_box(0.3), black_box(Complex64::new(0.5, 10.0)))));
}

fn phi(c: &mut Criterion) {
    let ctx = golden_ctx(RValue::Lattice { k: 1, l: 0 }).unwrap();
    c.bench_function("phi_direct u=1e-3", |b| b.iter(|| ctx.phi_direct(black_box(1e-3))));
    let mut g = c.benchmark_group("phi_transformed");
    g.sample_size(10);
    g.bench_function("u=1 K=1e5", |b| b.iter(|| ctx.phi_transformed(black_box(1.0), 100_000)));
    g.finish();
}

fn zeta(c: &mut Criterion) {
    let alpha = IrrationalNumber::golden();
    let mut g = c.benchmark_group("z");
    g.sample_size(10);
    g.bench_function("z_direct s=2", |b| {
        b.iter(|| z_direct(&alpha, RValue::Lattice { k: 1, l: 0 }, 0.5, black_box(Complex64::new(2.0, 0.0))))
    });
    g.bench_function("z_sharp_continued s=0.7+2i (fresh engine)", |b| {
        b.iter(|| {
            let eng = golden_engine(RValue::Lattice { k: 1, l: 0 }).unwrap();
            eng.z_sharp_continued(black_box(Complex64::new(0.7, 2.0)))
        })
    });
    g.finish();
}

criterion_group!(kernels, special, phi, zeta);
criterion_main!(kernels);
