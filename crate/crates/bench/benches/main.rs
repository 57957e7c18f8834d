use criterion::{criterion_group, criterion_main, Criterion};

use fatspace::expr::eval;
use fatspace::measure::los_marczewski_extend;
use fatspace::rat::rat;
use fatspace::soberdrunk::{build_beliefs, bit_expr, soberdrunk_space, AB};
use fatspace::universal::{quotient, refine};

use fatspace_bench::eight_point_instance;

fn bench_extension(c: &mut Criterion) {
    let (measure, straddle) = eight_point_instance();
    let p = rat(1, 2);
    c.bench_function("los_marczewski_extend/8pt", |b| {
        b.iter(|| los_marczewski_extend(&measure, &straddle, &p).unwrap())
    });
}

fn bench_beliefs(c: &mut Criterion) {
    c.bench_function("build_beliefs/level3", |b| {
        b.iter(|| build_beliefs(3, 1 << 20).unwrap())
    });
}

fn bench_refinement(c: &mut Criterion) {
    let space = soberdrunk_space(2, 1 << 20).unwrap();
    c.bench_function("refine/w2", |b| b.iter(|| refine(&space).unwrap()));
    c.bench_function("quotient/w2", |b| b.iter(|| quotient(&space).unwrap()));
}

fn bench_eval(c: &mut Criterion) {
    let space = soberdrunk_space(3, 1 << 20).unwrap();
    let expr = bit_expr(AB::A, 2, true);
    c.bench_function("eval/bit_expr_depth3_w3", |b| {
        b.iter(|| eval(&space, &expr).unwrap())
    });
}

criterion_group!(benches, bench_extension, bench_beliefs, bench_refinement, bench_eval);
criterion_main!(benches);
