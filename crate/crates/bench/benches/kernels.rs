use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use planarop::geometry::trace_skeleton;
use planarop::lax::{synthesize_last, InitMode};
use planarop::mpnum::{fhat, weber_d};
use planarop::zeros::find_roots;
use planarop::{PrecisionContext, ProblemParams};
use planarop_bench::{cplx, real, unit_charge_poly, A};

fn recurrence(c: &mut Criterion) {
    let ctx = PrecisionContext::default();
    for n in [50usize, 200] {
        let p = ProblemParams::new(A, 1.0, n as f64).unwrap();
        c.bench_function(&format!("lax_synthesize_n{n}"), |b| {
            b.iter(|| synthesize_last(black_box(&p), n, InitMode::Paper, &ctx).unwrap())
        });
    }
    let p = ProblemParams::new(A, 0.6, 20.0).unwrap();
    c.bench_function("lax_contour_init_n20", |b| {
        b.iter(|| synthesize_last(black_box(&p), 20, InitMode::Contour, &ctx).unwrap())
    });
}

fn roots(c: &mut Criterion) {
    let ctx = PrecisionContext::default();
    let poly = unit_charge_poly(80, 256);
    let mut g = c.benchmark_group("roots");
    g.sample_size(10);
    g.bench_function("aberth_n80", |b| b.iter(|| find_roots(black_box(&poly), &ctx).unwrap()));
    g.finish();
}

fn special(c: &mut Criterion) {
    let ctx = PrecisionContext::default();
    let (c06, zeta) = (real(0.6, 256), cplx(2.0, 1.0, 256));
    c.bench_function("weber_d", |b| b.iter(|| weber_d(black_box(&c06), &zeta, &ctx).unwrap()));
    c.bench_function("fhat", |b| b.iter(|| fhat(black_box(&c06), &zeta, &ctx).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let p = ProblemParams::new(A, 1.0, 1.0).unwrap();
    c.bench_function("trace_skeleton_4096", |b| {
        b.iter(|| trace_skeleton(black_box(&p), 4096).unwrap())
    });
}

criterion_group!(benches, recurrence, roots, special, geometry);
criterion_main!(benches);
