use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use picard::golden::Golden;
use picard::spectral::{
    bessel_h, bump_fourier, explicit_formula_error, fourier_inverse_h, g_s, h_s, i_transform,
    j_star, k_bessel_contour, k_bessel_imag_order, kuznetsov_h, kuznetsov_h_residual,
    lemma_kernel_integral, load_spectrum, mollified_g, parse_spectrum, smooth_g_plus,
    spectral_exponential_sum, Sign, SpectralDatum,
};
use picard::Error;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `K₀(x) = −(log(x/2) + γ)I₀(x) + Σ_{k≥1} (x²/4)^k/(k!)²·H_k`.
fn k0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let (mut i0, mut tail, mut term, mut harmonic) = (1.0, 0.0, 1.0, 0.0);
    for k in 1..60 {
        term *= q / (k * k) as f64;
        harmonic += 1.0 / k as f64;
        i0 += term;
        tail += term * harmonic;
    }
    -((x / 2.0).ln() + EULER_GAMMA) * i0 + tail
}

fn j0_series(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let (mut sum, mut term) = (1.0, 1.0);
    for k in 1..40 {
        term *= q / (k * k) as f64;
        sum += term;
    }
    sum
}

#[test]
fn spectrum_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::File::create(&empty).unwrap();
    assert!(load_spectrum(&empty).unwrap().is_empty());
    let one = dir.path().join("one.txt");
    writeln!(std::fs::File::create(&one).unwrap(), "6.0,1").unwrap();
    assert_eq!(load_spectrum(&one).unwrap(), vec![SpectralDatum { r: 6.0, multiplicity: 1 }]);
    match parse_spectrum("# r, multiplicity\n6.0,1\n8.5,2\n8.5,1\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("duplicate accepted: {other:?}"),
    }
}

#[test]
fn exponential_sum_and_explicit_formula() {
    let spectrum = parse_spectrum("6.6,1\n8.9,2\n10.0,1\n").unwrap();
    assert_eq!(spectral_exponential_sum(9.0, 1.0, &spectrum), Complex64::new(3.0, 0.0));
    assert_eq!(spectral_exponential_sum(9.0, 7.0, &[]), Complex64::new(0.0, 0.0));
    assert!(spectral_exponential_sum(20.0, 37.5, &spectrum).norm() <= 4.0 + 1e-12);
    assert_eq!(explicit_formula_error(50.0, 10.0, &[]).unwrap().value, 0.0);
    let (x, r) = (40.0f64, 6.6f64);
    let single = [SpectralDatum { r, multiplicity: 1 }];
    let direct = {
        let z = Complex64::new(1.0, r);
        2.0 * ((z * x.ln()).exp() / z).re
    };
    let v = explicit_formula_error(x, 7.0, &single).unwrap().value;
    assert!((v - direct).abs() < 1e-10 * x);
    assert!(explicit_formula_error(x, 0.5, &single).is_err());
}

#[test]
fn test_function_pair() {
    let s = 2.5;
    assert_eq!(g_s(0.0, s), 0.0);
    assert!((h_s(0.0, s) - (4.0 * s.sinh() - 4.0 * s)).abs() < 1e-12);
    for x in [0.5, s / 2.0, s - 0.1] {
        assert!((fourier_inverse_h(s, x).unwrap() - g_s(x, s)).abs() <= 1e-6);
    }
}

#[test]
fn mollifier_properties() {
    let golden = Golden::embedded();
    assert!((bump_fourier(0.0, 0.1).unwrap() - 1.0).abs() < 1e-12);
    for r in [0.5, 7.0, 30.0, 123.0, 1000.0] {
        let q = bump_fourier(r, 0.1).unwrap().abs();
        assert!(q <= 1.0);
        let w = r * 0.1;
        if w >= 1.0 {
            assert!(q * w * w <= golden.qhat_c2 && q * w.powi(4) <= golden.qhat_c4);
        }
    }
    let (s, delta) = (3.0, 0.1);
    for k in 0..=12 {
        let x = s * k as f64 / 12.0;
        let scale = golden.sandwich_c * delta * x.exp();
        assert!(mollified_g(x, s, delta, Sign::Minus).unwrap() <= g_s(x, s) + scale);
        assert!(g_s(x, s) <= mollified_g(x, s, delta, Sign::Plus).unwrap() + scale);
        let smooth = smooth_g_plus(x, delta).unwrap();
        assert!((mollified_g(x, s, delta, Sign::Plus).unwrap() - smooth).abs() < 1e-8);
    }
}

#[test]
fn lemma_kernel() {
    let a = lemma_kernel_integral(0.0, 0.0, 1000.0, 100.0, Sign::Minus, 0.1).unwrap();
    assert!(a >= 0.0);
    let b = lemma_kernel_integral(5.0, 20.0, 1000.0, 100.0, Sign::Plus, 0.1).unwrap();
    let c = lemma_kernel_integral(20.0, 5.0, 1000.0, 100.0, Sign::Plus, 0.1).unwrap();
    assert_eq!(b, c);
    assert!(lemma_kernel_integral(1.0, 1.0, 100.0, 200.0, Sign::Plus, 0.1).is_err());
}

#[test]
fn kuznetsov_function() {
    let (x, t) = (100.0f64, 10.0f64);
    for r in [0.4, 3.0, 17.0] {
        assert_eq!(kuznetsov_h(r, x, t), kuznetsov_h(-r, x, t));
    }
    let limit = Complex64::new(PI - 1.0 / t, x.ln()) / PI;
    assert!((kuznetsov_h(1e-7, x, t) - limit).norm() < 1e-6);
    assert_eq!(kuznetsov_h(0.0, x, t), limit);
    let golden = Golden::embedded();
    for k in 0..30 {
        let r = 1.0 + k as f64;
        let ratio = kuznetsov_h_residual(r, x, t).unwrap().norm() / (-PI * r).exp();
        assert!(ratio <= golden.kuznetsov_c, "r = {r}: {ratio}");
    }
}

#[test]
fn k_bessel() {
    let k0 = k_bessel_imag_order(0.0, 1.0).unwrap();
    assert!((k0 - k0_series(1.0)).abs() < 1e-8, "{k0} vs {}", k0_series(1.0));
    let mut prev = f64::INFINITY;
    for k in 0..=16 {
        let v = k_bessel_imag_order(0.0, 1.0 + k as f64 * 0.25).unwrap();
        assert!(v < prev);
        prev = v;
    }
    for (rho, x) in [(0.5, 0.3), (3.0, 2.0), (4.0, 10.0)] {
        let a = k_bessel_imag_order(rho, x).unwrap();
        let b = k_bessel_contour(rho, x).unwrap() / (PI * rho).cosh();
        assert!(a.is_finite() && (a - b).abs() < 1e-8, "ρ = {rho}, x = {x}");
    }
    assert!(k_bessel_imag_order(1.0, 0.0).is_err());
}

#[test]
fn i_transform_is_real_and_localized() {
    let (t, m) = (10.0f64, 10f64.powf(0.8));
    let peak = i_transform(2.0 * t, t, m).unwrap();
    let low = i_transform(t / 200.0, t, m).unwrap();
    assert!(peak.is_finite() && low.is_finite());
    assert!(peak.abs() > 100.0 * low.abs());
    assert!(i_transform(1.0, t, 2.0 * t).is_err());
}

#[test]
fn bessel_h_examples() {
    let z = Complex64::new(1.0, 0.0);
    let h = bessel_h(Complex64::new(0.0, 0.0), z).unwrap();
    assert!((h.re - j0_series(1.0).powi(2)).abs() < 1e-10 && h.im.abs() < 1e-15);
    // J*_ν(0) = 1/Γ(ν + 1)
    for (nu, expect) in [(0.0, 1.0), (2.0, 0.5), (3.0, 1.0 / 6.0), (0.5, 2.0 / PI.sqrt())] {
        let j = j_star(Complex64::new(nu, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert!((j.re - expect).abs() < 1e-14 && j.im == 0.0, "ν = {nu}: {j}");
    }
    for (nu, z) in [
        (Complex64::new(1.0, 0.5), Complex64::new(2.0, 1.5)),
        (Complex64::new(0.0, 3.0), Complex64::new(-1.0, 4.0)),
    ] {
        let a = bessel_h(nu, z).unwrap();
        let b = bessel_h(nu, z.conj()).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }
}
