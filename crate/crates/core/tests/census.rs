use num_complex::Complex64;

use picard::census::{
    build_census, class_number, class_number_sum, enumerate_discriminants, error_term,
    is_discriminant, main_term, pell_fundamental, psi, second_moment_e, trace_side_psi,
    CensusConfig,
};
use picard::golden::Golden;
use picard::Gaussian;

type G = Gaussian<i64>;

fn g(re: i64, im: i64) -> G {
    G::new(re, im)
}

#[test]
fn discriminant_examples() {
    assert!(is_discriminant(&g(5, 0)));
    assert!(!is_discriminant(&g(4, 0)));
    assert!(!is_discriminant(&g(2, 0)));
    let ds = enumerate_discriminants(5.0);
    for d in [g(5, 0), g(-3, 0), g(3, 0)] {
        assert!(ds.contains(&d), "{d}");
    }
    for d in [g(4, 0), g(0, 0), g(1, 0)] {
        assert!(!ds.contains(&d), "{d}");
    }
    assert!(enumerate_discriminants(0.0).is_empty());
    let counts: Vec<usize> = [10.0, 20.0, 40.0].iter().map(|&b| enumerate_discriminants(b).len()).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn pell_for_five() {
    let p = pell_fundamental(&g(5, 0), 20.0).unwrap();
    let golden_ratio = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((p.abs_eps - golden_ratio).abs() < 1e-12);
    let eps = (Complex64::new(p.t0.re as f64, p.t0.im as f64)
        + Complex64::new(p.u0.re as f64, p.u0.im as f64) * 5f64.sqrt())
        / 2.0;
    assert!((eps.norm() - golden_ratio).abs() < 1e-12);
    assert!(p.t0 != g(3, 0) && p.t0 != g(-3, 0));
    assert_eq!(&(&p.t0 * &p.t0) - &(&g(5, 0) * &(&p.u0 * &p.u0)), g(4, 0));
}

#[test]
fn class_number_of_five() {
    let golden = Golden::embedded();
    assert_eq!(class_number(&g(5, 0), 50).unwrap(), golden.class_number_d5);
}

#[test]
fn census_below_the_smallest_norm_is_empty() {
    let golden = Golden::embedded();
    let c = build_census(golden.smallest_class_norm * 0.999, &CensusConfig::default()).unwrap();
    assert!(c.entries.is_empty());
    let c = build_census(golden.smallest_class_norm * 1.001, &CensusConfig::default()).unwrap();
    assert!((c.entries[0].norm - golden.smallest_class_norm).abs() < 1e-12);
}

#[test]
fn census_invariants() {
    let small = build_census(60.0, &CensusConfig::default()).unwrap();
    let large = build_census(150.0, &CensusConfig::default()).unwrap();
    assert!(small.complete && large.complete);
    // the certified search radius grows with x_max; the classes themselves must not change
    let key = |e: &picard::census::GeodesicClass| (e.d(), e.k, e.h, e.pell.t0, e.pell.u0, e.norm.to_bits());
    let prefix: Vec<_> = large.entries[..small.entries.len()].iter().map(key).collect();
    assert_eq!(prefix, small.entries.iter().map(key).collect::<Vec<_>>());
    assert!(large.entries[small.entries.len()].norm > 60.0);
    for e in &large.entries {
        let p = &e.pell;
        assert_eq!(&(&p.t0 * &p.t0) - &(&p.d * &(&p.u0 * &p.u0)), g(4, 0));
        assert!(e.h >= 1);
    }
    assert!(large.entries.windows(2).all(|w| w[0].norm <= w[1].norm));
}

#[test]
fn psi_and_error_term() {
    let c = build_census(1000.0, &CensusConfig::default()).unwrap();
    assert_eq!(psi(1.0, &c).unwrap(), 0.0);
    assert_eq!(error_term(1.0, &c, &[2.0]).unwrap(), -0.5);
    let mut prev = 0.0;
    for k in 1..=200 {
        let v = psi(5.0 * k as f64, &c).unwrap();
        assert!(v >= prev);
        prev = v;
    }
    for e in c.entries.iter().take(30) {
        let below = e.norm * (1.0 - 1e-13);
        let before = error_term(below, &c, &[2.0]).unwrap();
        let at = error_term(e.norm, &c, &[2.0]).unwrap();
        let jump: f64 = c
            .entries
            .iter()
            .filter(|f| f.norm > below && f.norm <= e.norm)
            .map(|f| f.h as f64 * f.lambda_weight)
            .sum();
        assert!((at - before - jump).abs() < 1e-9, "norm {}", e.norm);
    }
    let ratio = psi(1000.0, &c).unwrap() / 1e6;
    assert!((ratio - 0.5).abs() < 0.1, "ψ(10³)/10⁶ = {ratio}");
    assert!(build_census(10.0, &CensusConfig::default()).map(|c| psi(20.0, &c)).unwrap().is_err());
}

#[test]
fn main_term_examples() {
    assert_eq!(main_term(10.0, &[2.0]).unwrap(), 50.0);
    assert_eq!(main_term(10.0, &[]).unwrap(), 0.0);
    assert!((main_term(4.0, &[2.0, 1.5]).unwrap() - (8.0 + 16.0 / 3.0)).abs() < 1e-12);
    assert!(main_term(4.0, &[0.5]).is_err());
}

#[test]
fn class_number_sum_examples() {
    let c = build_census(400.0, &CensusConfig::default()).unwrap();
    let s = class_number_sum(1.2, &c).unwrap();
    assert_eq!(s.sum, 0);
    assert!(s.residual < 0.0);
    let sums: Vec<u64> = (2..=20).map(|k| class_number_sum(k as f64, &c).unwrap().sum).collect();
    assert!(sums.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn second_moment_is_nonnegative() {
    let c = build_census(300.0, &CensusConfig::default()).unwrap();
    for (v, w) in [(10.0, 5.0), (100.0, 100.0), (150.0, 20.0)] {
        assert!(second_moment_e(v, w, &c, &[2.0]).unwrap() >= 0.0);
    }
    assert!(second_moment_e(100.0, 0.5, &c, &[2.0]).is_err());
}

#[test]
fn trace_side_agrees_with_census() {
    assert_eq!(trace_side_psi(1.0).unwrap(), 0.0);
    let c = build_census(80.0, &CensusConfig::default()).unwrap();
    for x in [3.0, 10.0, 33.3, 80.0] {
        assert_eq!(trace_side_psi(x).unwrap(), psi(x, &c).unwrap(), "X = {x}");
    }
}
