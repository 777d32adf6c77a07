//! The Kuznetsov test function, `K`-Bessel functions of imaginary order, the
//! transform `I(x)` and the `J*`/`H` Bessel combinations.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{integrate_pieces, rgamma, KahanSum};

/// Arguments above which hyperbolic ratios are evaluated in exponential form.
const EXP_FORM: f64 = 30.0;

/// Integrands `e^{−y}` are cut off where `y` exceeds this.
const CUTOFF: f64 = 40.0;

/// Absolute tolerance of the `K`-Bessel quadratures.
pub const K_TOL: f64 = 1e-10;

/// `z = (π + 2iα)r` with `2α = log X + i/T`.
fn kuznetsov_z(r: f64, x: f64, t: f64) -> Complex64 {
    Complex64::new((PI - 1.0 / t) * r, r * x.ln())
}

/// `h(r) = sinh((π + 2iα)r)/sinh(πr)`, even in `r`, with its limit at `r = 0`.
pub fn kuznetsov_h(r: f64, x: f64, t: f64) -> Complex64 {
    let r = r.abs();
    if r == 0.0 {
        return Complex64::new(PI - 1.0 / t, x.ln()) / PI;
    }
    let z = kuznetsov_z(r, x, t);
    if PI * r > EXP_FORM {
        // e^{z − πr}(1 − e^{−2z})/(1 − e^{−2πr})
        (z - PI * r).exp() * (1.0 - (-2.0 * z).exp()) / (1.0 - (-2.0 * PI * r).exp())
    } else {
        z.sinh() / (PI * r).sinh()
    }
}

/// `h(r) − X^{ir}e^{−r/T}` for `r > 0`, without cancellation.
pub fn kuznetsov_h_residual(r: f64, x: f64, t: f64) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("residual needs r > 0, got {r}")));
    }
    let z = kuznetsov_z(r, x, t);
    let q = (-2.0 * PI * r).exp();
    Ok(((z - 3.0 * PI * r).exp() - (-z - PI * r).exp()) / (1.0 - q))
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("K-Bessel argument must be positive, got {x}")))
    }
}

/// Breakpoints on `[0, end]` with roughly `π` of phase between them.
fn phase_breaks(end: f64, phase_variation: f64) -> Vec<f64> {
    let n = ((phase_variation / PI).ceil() as usize).clamp(1, 200_000);
    (0..=n).map(|k| end * k as f64 / n as f64).collect()
}

/// `K_{2iρ}(x) = ∫₀^∞ e^{−x cosh t} cos(2ρt) dt` on the real axis.
///
/// The result is of size `e^{−πρ}` while the integrand is of size one, so this
/// loses all accuracy for `ρ` beyond about 5; see [`k_bessel_contour`].
pub fn k_bessel_direct(rho: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let end = (1.0 + CUTOFF / x).acosh();
    let nu = 2.0 * rho.abs();
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cos();
    Ok(integrate_pieces(f, &phase_breaks(end, nu * end), K_TOL, 0.0)?.value)
}

/// `K_{2iρ}(x)` for `x > 0`.
pub fn k_bessel_imag_order(rho: f64, x: f64) -> Result<f64> {
    k_bessel_direct(rho, x)
}

/// `cosh(πρ)·K_{2iρ}(x)`.
///
/// The contour is moved to `Im t = θ = π/2 − 1/ρ`, where
/// `K_{iν}(x) = e^{−νθ}∫₀^∞ e^{−x cosh s cos θ} cos(νs − x sinh s sin θ) ds`
/// and `cosh(πρ)e^{−2ρθ}` stays below `e²`.
pub fn k_bessel_contour(rho: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let rho = rho.abs();
    let nu = 2.0 * rho;
    let theta = if rho > 0.0 { (PI / 2.0 - 1.0 / rho).max(0.0) } else { 0.0 };
    let (c, s) = (theta.cos(), theta.sin());
    let prefactor = 0.5 * ((rho * (PI - 2.0 * theta)).exp() + (-rho * (PI + 2.0 * theta)).exp());
    let end = (1.0 + CUTOFF / (x * c)).acosh();
    let f = |u: f64| (-x * u.cosh() * c).exp() * (nu * u - x * u.sinh() * s).cos();
    let variation = nu * end + x * s * end.sinh();
    let r = integrate_pieces(f, &phase_breaks(end, variation), K_TOL / prefactor, 0.0)?;
    Ok(prefactor * r.value)
}

/// `h(r) = e^{−(r−T)²/M²} + e^{−(r+T)²/M²}`.
pub fn gaussian_weight(r: f64, t: f64, m: f64) -> f64 {
    (-((r - t) / m).powi(2)).exp() + (-((r + t) / m).powi(2)).exp()
}

/// Absolute tolerance of [`i_transform`].
pub const I_TOL: f64 = 1e-6;

/// `I(x) = ∫ r²h(r)cosh(πr)K_{2ir}(x) dr` with the Gaussian weight `h`,
/// over `|r| ≤ T + 8M`.
pub fn i_transform(x: f64, t: f64, m: f64) -> Result<f64> {
    check_x(x)?;
    if !(t > 0.0 && m > 0.0 && m <= t) {
        return Err(Error::Domain(format!("need 0 < M ≤ T, got T = {t}, M = {m}")));
    }
    let end = t + 8.0 * m;
    let n = end.ceil() as usize;
    let breaks: Vec<f64> = (0..=n).map(|k| end * k as f64 / n as f64).collect();
    let mut failure = None;
    let f = |r: f64| {
        let w = r * r * gaussian_weight(r, t, m);
        if w == 0.0 {
            return 0.0;
        }
        match k_bessel_contour(r, x) {
            Ok(k) => w * k,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    // the integrand is even in r
    let half = integrate_pieces(f, &breaks, I_TOL / 2.0, 0.0);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * half?.value)
}

/// Relative error target of the `J*` power series.
const SERIES_TOL: f64 = 1e-12;

/// Largest `|z|` accepted by the power series.
pub const SERIES_RADIUS: f64 = 50.0;

/// `J*_ν(z) = J_ν(z)(z/2)^{−ν} = Σ_k (−1)^k (z/2)^{2k}/(k!·Γ(ν + k + 1))`.
pub fn j_star(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() > SERIES_RADIUS {
        return Err(Error::Domain(format!(
            "|z| = {} beyond the series radius {SERIES_RADIUS}",
            z.norm()
        )));
    }
    let w = -(z / 2.0) * (z / 2.0);
    // at ν = −n the first n terms vanish and J*_{−n}(z) = (−1)ⁿ(z/2)^{2n}J*_n(z)
    if nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round() {
        let n = -nu.re as i32;
        return Ok(w.powi(n) * j_star(Complex64::new(n as f64, 0.0), z)?);
    }
    let mut term = rgamma(nu + 1.0);
    let (mut re, mut im) = (KahanSum::default(), KahanSum::default());
    re.add(term.re);
    im.add(term.im);
    for k in 1..2000 {
        term *= w / (k as f64 * (nu + k as f64));
        re.add(term.re);
        im.add(term.im);
        let sum = Complex64::new(re.value(), im.value());
        if k as f64 > w.norm().sqrt() && term.norm() <= SERIES_TOL * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::Domain(format!("J* series did not converge at ν = {nu}, z = {z}")))
}

/// `H_ν(z) = 2^{−2ν}|z|^{2ν}J*_ν(z)J*_ν(z̄)`.
pub fn bessel_h(nu: Complex64, z: Complex64) -> Result<Complex64> {
    let scale = if z.norm() == 0.0 {
        if nu == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else if nu.re > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            return Err(Error::Domain(format!("|z|^(2ν) undefined at z = 0 for ν = {nu}")));
        }
    } else {
        (2.0 * nu * (z.norm().ln() - LN_2)).exp()
    };
    Ok(scale * j_star(nu, z)? * j_star(nu, z.conj())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuznetsov_parity_and_limit() {
        for r in [0.3, 2.0, 11.0, 40.0] {
            assert_eq!(kuznetsov_h(r, 100.0, 10.0), kuznetsov_h(-r, 100.0, 10.0));
        }
        let h0 = kuznetsov_h(0.0, 100.0, 10.0);
        let h = kuznetsov_h(1e-7, 100.0, 10.0);
        assert!((h - h0).norm() < 1e-9);
        // both branches agree where they meet
        let r = EXP_FORM / PI;
        let z = kuznetsov_z(r, 100.0, 10.0);
        let direct = z.sinh() / (PI * r).sinh();
        assert!((kuznetsov_h(r * (1.0 + 1e-12), 100.0, 10.0) - direct).norm() < 1e-9);
    }

    #[test]
    fn residual_matches_subtraction() {
        let (x, t) = (100.0f64, 10.0f64);
        for r in [0.5, 1.0, 3.0, 6.0] {
            let lead = Complex64::from_polar((-r / t).exp(), r * x.ln());
            let a = kuznetsov_h(r, x, t) - lead;
            let b = kuznetsov_h_residual(r, x, t).unwrap();
            assert!((a - b).norm() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn contour_matches_real_axis() {
        for (rho, x) in [(0.0, 1.0), (0.3, 0.5), (1.5, 2.0), (3.0, 10.0), (4.0, 0.2)] {
            let a = k_bessel_direct(rho, x).unwrap() * (PI * rho).cosh();
            let b = k_bessel_contour(rho, x).unwrap();
            assert!((a - b).abs() < 1e-8, "ρ = {rho}, x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn k_rejects_nonpositive_argument() {
        assert!(k_bessel_imag_order(1.0, 0.0).is_err());
        assert!(k_bessel_contour(1.0, -1.0).is_err());
    }

    #[test]
    fn i_transform_domain() {
        assert!(i_transform(1.0, 5.0, 6.0).is_err());
        assert!(i_transform(0.0, 5.0, 2.0).is_err());
    }

    #[test]
    fn j_star_constant_term_and_negative_order() {
        let z0 = Complex64::new(0.0, 0.0);
        for nu in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 2.0), Complex64::new(0.0, 3.0)] {
            assert!((j_star(nu, z0).unwrap() - rgamma(nu + 1.0)).norm() < 1e-15);
        }
        // J_{−1} = −J_1
        let z = Complex64::new(1.3, 0.4);
        let jm = j_star(Complex64::new(-1.0, 0.0), z).unwrap() / (z / 2.0);
        let jp = j_star(Complex64::new(1.0, 0.0), z).unwrap() * (z / 2.0);
        assert!((jm + jp).norm() < 1e-14);
        assert!(j_star(Complex64::new(0.0, 0.0), Complex64::new(60.0, 0.0)).is_err());
    }

    #[test]
    fn h_is_conjugation_invariant() {
        let nu = Complex64::new(0.2, 1.1);
        let z = Complex64::new(2.0, -3.0);
        let a = bessel_h(nu, z).unwrap();
        let b = bessel_h(nu, z.conj()).unwrap();
        assert!((a - b).norm() < 1e-13 * a.norm());
    }
}
