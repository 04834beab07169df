use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke2::{delta, delta_pow, OddDeltaPowers};

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for n in [1 << 12, 1 << 16] {
        let d = delta(n);
        let d3 = delta_pow(3, n).unwrap();
        g.bench_with_input(BenchmarkId::new("mul", n), &n, |b, _| b.iter(|| black_box(&d).mul(&d3)));
        g.bench_with_input(BenchmarkId::new("square", n), &n, |b, _| b.iter(|| black_box(&d3).square()));
        g.bench_with_input(BenchmarkId::new("delta_pow_129", n), &n, |b, &n| {
            b.iter(|| delta_pow(black_box(129), n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("hecke_97", n), &n, |b, _| {
            b.iter(|| black_box(&d3).hecke(97).unwrap())
        });
    }
    g.bench_function("odd_powers_256_at_8191", |b| b.iter(|| OddDeltaPowers::new(256, 8191)));
    g.finish();
}

criterion_group!(benches, series);
criterion_main!(benches);
