use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use chevalley::dunkl::DunklContext;
use chevalley::exactalg::{rat, Polynomial, Variables};
use chevalley::liealg::{make_sl, takiff_extend, DEFAULT_WORK_BOUND};
use chevalley::restriction::{criterion_subspace, CartanFrame};
use chevalley::rootsys::{build_root_system, CartanType, MultiplicityAssignment};

fn polynomial_mul(c: &mut Criterion) {
    let vars = Variables::indexed(3);
    let p = Polynomial::parse("x1^3 - 2/3 x1 x2 x3 + x2^2 + 5 x3 - 1", &vars).unwrap();
    let q = Polynomial::parse("x1^2 x2 + 7/2 x2^3 - x1 x3^2 + x3", &vars).unwrap();
    c.bench_function("poly mul 3 vars", |b| b.iter(|| black_box(&p) * black_box(&q)));
    let p4 = p.pow(4);
    c.bench_function("poly pow^4 then mul", |b| b.iter(|| black_box(&p4) * black_box(&q)));
}

fn dunkl_apply(c: &mut Criterion) {
    let rs = build_root_system(CartanType::G, 2).unwrap();
    let ctx = DunklContext::new(rs, &MultiplicityAssignment::long_short(rat(1, 1), rat(1, 3))).unwrap();
    let p = Polynomial::parse("x1^5 - 3 x1^2 x2^3 + x2^4", &Variables::indexed(2)).unwrap();
    let xi = [rat(1, 1), rat(-1, 2)];
    c.bench_function("dunkl apply G2 degree 5", |b| b.iter(|| ctx.apply(&xi, black_box(&p)).unwrap()));
    c.bench_function("dunkl gram A2 degree 3", |b| {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let ctx = DunklContext::new(rs, &MultiplicityAssignment::uniform(rat(1, 2))).unwrap();
        b.iter(|| ctx.gram_matrix(3, false).unwrap())
    });
}

fn invariants(c: &mut Criterion) {
    let sl3 = make_sl(3).unwrap();
    c.bench_function("sl3 invariants degree 6", |b| {
        b.iter(|| sl3.invariants_graded(6, DEFAULT_WORK_BOUND).unwrap())
    });
    let g1 = takiff_extend(&sl3, 1).unwrap();
    c.bench_function("sl3 Takiff m=1 invariants degree 4", |b| {
        b.iter(|| g1.invariants_graded(4, DEFAULT_WORK_BOUND).unwrap())
    });
    let frame = CartanFrame::for_sl(2, 2).unwrap();
    c.bench_function("sl2 m=2 criterion space degree 6", |b| b.iter(|| criterion_subspace(&frame, 6).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = polynomial_mul, dunkl_apply, invariants
}
criterion_main!(benches);
