use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use galcon::analyzer::{analyze, parse_program, Transfer};
use galcon::catalog::{self, gen, Sizes};
use galcon::functions::{bca_gc, bca_pcgc, OpTable};
use galcon::galois::check_pcgc;
use galcon::laws;

const LOOP: &str = "x := 2; y := 2; while x < 9 do { x := x * y; }";

fn bca(c: &mut Criterion) {
    let mut group = c.benchmark_group("bca");
    for n in [16, 64, 128] {
        let d = catalog::signconst_pcgc(n).unwrap();
        let mul = OpTable::int_binary(d.carrier(), |x, y| x * y).unwrap();
        group.bench_with_input(BenchmarkId::new("signconst_mul", n), &n, |b, _| b.iter(|| bca_pcgc(black_box(&d), &mul).unwrap()));
    }
    let sign = catalog::sign_pgi(64).unwrap();
    let sq = OpTable::int_unary(sign.carrier(), |x| x * x).unwrap();
    group.bench_function("sign_sq", |b| b.iter(|| bca_gc(black_box(&sign), 1, &|xs| sq.apply_set(xs))));
    group.finish();
}

fn checkers(c: &mut Criterion) {
    let d = catalog::signconst_pcgc(64).unwrap();
    c.bench_function("check_pcgc/signconst_64", |b| b.iter(|| check_pcgc(black_box(&d)).ok()));
    let s = Sizes::new(8, 8).unwrap();
    let cgcs: Vec<_> = (0..32).map(|seed| gen::gen_cgc(seed, s)).collect();
    c.bench_function("teo_pgc/32_cgcs", |b| b.iter(|| cgcs.iter().all(|x| laws::teo_pgc(x).unwrap().is_ok())));
}

fn analyzer(c: &mut Criterion) {
    let d = catalog::signconst_pcgc(64).unwrap();
    let p = parse_program(LOOP).unwrap();
    c.bench_function("analyzer/transfer_64", |b| b.iter(|| Transfer::new(black_box(&d)).unwrap()));
    let t = Transfer::new(&d).unwrap();
    c.bench_function("analyzer/loop", |b| b.iter(|| analyze(black_box(&p), &t).unwrap()));
}

criterion_group!(benches, bca, checkers, analyzer);
criterion_main!(benches);
