use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use picard::census::{build_census, pell_fundamental, psi, second_moment_e, CensusConfig};
use picard::gaussian::factor;
use picard::kloosterman::{kloosterman, Strategy};
use picard::spectral::{bessel_h, i_transform, k_bessel_contour, lemma_kernel_integral, Sign};
use picard::Gaussian;

type G = Gaussian<i64>;

fn arithmetic(c: &mut Criterion) {
    let z = G::new(123_457, 98_765);
    c.bench_function("factor", |b| b.iter(|| factor(black_box(&z)).unwrap()));
    let (m, n, q) = (G::new(2, 1), G::new(3, 0), G::new(17, 12));
    c.bench_function("kloosterman_naive", |b| {
        b.iter(|| kloosterman(black_box(&m), &n, &q, Strategy::Naive).unwrap())
    });
    c.bench_function("kloosterman_factored", |b| {
        b.iter(|| kloosterman(black_box(&m), &n, &q, Strategy::Factored).unwrap())
    });
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("pell_d=5+7i", |b| b.iter(|| pell_fundamental(black_box(&G::new(5, 7)), 60.0)));
    g.bench_function("build_1000", |b| {
        b.iter(|| build_census(black_box(1000.0), &CensusConfig::default()).unwrap())
    });
    let table = build_census(2000.0, &CensusConfig::default()).unwrap();
    g.bench_function("psi_2000", |b| b.iter(|| psi(black_box(2000.0), &table).unwrap()));
    g.bench_function("second_moment_1000", |b| {
        b.iter(|| second_moment_e(black_box(1000.0), 1000.0, &table, &[2.0]).unwrap())
    });
    g.finish();
}

fn spectral(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectral");
    g.sample_size(10);
    g.bench_function("k_bessel_contour", |b| b.iter(|| k_bessel_contour(black_box(20.0), 40.0).unwrap()));
    g.bench_function("bessel_h", |b| {
        b.iter(|| bessel_h(black_box(Complex64::new(0.5, 3.0)), Complex64::new(4.0, 2.0)).unwrap())
    });
    g.bench_function("lemma_kernel", |b| {
        b.iter(|| lemma_kernel_integral(black_box(5.0), 20.0, 1000.0, 100.0, Sign::Plus, 0.1).unwrap())
    });
    g.bench_function("i_transform_t10", |b| {
        b.iter(|| i_transform(black_box(20.0), 10.0, 10f64.powf(0.8)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, arithmetic, census, spectral);
criterion_main!(benches);
