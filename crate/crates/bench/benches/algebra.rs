use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke2::theta::{theta_family, CompositionLaw};
use hecke2::{algebra_dimension, commutant_dimension, hecke_matrix, FormParam, MTable};

fn algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("algebra");
    g.sample_size(10);
    for n in [16, 64] {
        g.bench_with_input(BenchmarkId::new("hecke_matrix_97", n), &n, |b, &n| {
            b.iter(|| hecke_matrix(black_box(97), n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("algebra_dimension_3_5", n), &n, |b, &n| {
            b.iter(|| algebra_dimension(n, &[3, 5]).unwrap())
        });
    }
    g.bench_function("commutant_dimension_32", |b| b.iter(|| commutant_dimension(32).unwrap()));
    for degree in [6, 12] {
        g.bench_with_input(BenchmarkId::new("tp_expansions_to_101", degree), &degree, |b, &d| {
            let primes = hecke2::arith::odd_primes_up_to(101);
            b.iter(|| MTable::new().tp_expansions(&primes, d).unwrap())
        });
    }
    g.bench_function("theta_family_n4_c2", |b| {
        b.iter(|| theta_family(4, FormParam::Two, black_box(1 << 16)))
    });
    g.bench_function("composition_group_n8", |b| {
        b.iter(|| CompositionLaw::new(8, FormParam::Four).check_group())
    });
    g.finish();
}

criterion_group!(benches, algebra);
criterion_main!(benches);
