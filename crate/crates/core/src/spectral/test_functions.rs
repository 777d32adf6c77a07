//! The pair `g_s(x) = 4 sinh²(x/2)·1_{[0,s]}(|x|)` and its transform `h_s`,
//! their mollified versions and the kernel integral of the second-moment bound.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{integrate, integrate_pieces, MAX_SUBDIVISIONS};

/// Absolute tolerance of the quadratures in this module.
pub const QUAD_TOL: f64 = 1e-10;

pub fn g_s(x: f64, s: f64) -> f64 {
    if x.abs() <= s {
        4.0 * (x / 2.0).sinh().powi(2)
    } else {
        0.0
    }
}

/// `sin(sr)/r`, continuous at `r = 0`.
fn sinc_scaled(s: f64, r: f64) -> f64 {
    let z = s * r;
    if z.abs() < 1e-4 {
        s * (1.0 - z * z / 6.0)
    } else {
        z.sin() / r
    }
}

/// `h_s(r) = ∫ g_s(x) e^{irx} dx = 4 Re[sinh(s(1 + ir))/(1 + ir)] − 4 sin(sr)/r`.
pub fn h_s(r: f64, s: f64) -> f64 {
    let z = Complex64::new(1.0, r);
    4.0 * ((z * s).sinh() / z).re - 4.0 * sinc_scaled(s, r)
}

/// `(1/2π)∫ h_s(r) e^{−irx} dr` by quadrature.
///
/// The integral is damped by `e^{−εr²}`, which smooths `g_s` by a Gaussian of
/// variance `2ε`; two damping levels are combined to cancel the `ε·g''` term.
/// Accurate away from the jumps at `|x| = s`.
pub fn fourier_inverse_h(s: f64, x: f64) -> Result<f64> {
    let damped = |eps: f64| -> Result<f64> {
        let r_max = (42.0 / eps).sqrt();
        let step = PI / (s + x.abs()).max(1.0);
        let n = (r_max / step).ceil() as usize;
        let breaks: Vec<f64> = (0..=n).map(|k| r_max * k as f64 / n as f64).collect();
        let f = |r: f64| h_s(r, s) * (r * x).cos() * (-eps * r * r).exp();
        Ok(integrate_pieces(f, &breaks, 1e-11, 0.0)?.value / PI)
    };
    let eps = 1e-5;
    let (a, b) = (damped(eps)?, damped(2.0 * eps)?);
    Ok(2.0 * a - b)
}

/// `∫_{−1}^{1} exp(−1/(1 − x²)) dx`.
fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        integrate(raw_bump, -1.0, 1.0, 1e-15, 1e-14, MAX_SUBDIVISIONS)
            .expect("bump mass converges")
            .value
    })
}

fn raw_bump(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

/// The unit-mass bump `q(x) = C·exp(−1/(1 − x²))` on `(−1, 1)`.
pub fn bump(x: f64) -> f64 {
    raw_bump(x) / bump_mass()
}

/// `q̂_δ(r) = ∫ q(y) cos(δry) dy`, the transform of `q_δ(x) = q(x/δ)/δ`.
pub fn bump_fourier(r: f64, delta: f64) -> Result<f64> {
    let w = delta * r;
    let n = ((w.abs() / PI).ceil() as usize).max(1) * 2;
    let breaks: Vec<f64> = (0..=n).map(|k| -1.0 + 2.0 * k as f64 / n as f64).collect();
    Ok(integrate_pieces(|y| bump(y) * (w * y).cos(), &breaks, 1e-14, 0.0)?.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, s: f64, delta: f64) -> f64 {
        match self {
            Sign::Plus => s + delta,
            Sign::Minus => s - delta,
        }
    }
}

/// `g_± = g_{s±δ} ∗ q_δ`, by quadrature split at the jumps of `g_{s±δ}`.
pub fn mollified_g(x: f64, s: f64, delta: f64, sign: Sign) -> Result<f64> {
    let sd = sign.apply(s, delta);
    let mut breaks = vec![-delta, delta];
    for jump in [x - sd, x + sd] {
        if jump > -delta && jump < delta {
            breaks.push(jump);
        }
    }
    breaks.sort_by(f64::total_cmp);
    let f = |y: f64| g_s(x - y, sd) * bump(y / delta) / delta;
    Ok(integrate_pieces(f, &breaks, QUAD_TOL, 0.0)?.value)
}

/// `2cosh(x)·∫ q_δ(y) cosh(y) dy − 2`, the value of `g_+` wherever `g_{s+δ}`
/// is smooth across the support of `q_δ`, i.e. for `|x| ≤ s`.
pub fn smooth_g_plus(x: f64, delta: f64) -> Result<f64> {
    let q = integrate(
        |y| bump(y) * (delta * y).cosh(),
        -1.0,
        1.0,
        1e-15,
        0.0,
        MAX_SUBDIVISIONS,
    )?;
    Ok(2.0 * (x.cosh() * q.value - 1.0))
}

/// `h_± = h_{s±δ}·q̂_δ`.
pub fn mollified_h(r: f64, s: f64, delta: f64, sign: Sign) -> Result<f64> {
    Ok(h_s(r, sign.apply(s, delta)) * bump_fourier(r, delta)?)
}

/// `(1/Δ)∫_V^{V+Δ} h_{s±δ}(r₁)·h_{s±δ}(r₂) dX` with `s = log X`.
pub fn lemma_kernel_integral(
    r1: f64,
    r2: f64,
    v: f64,
    window: f64,
    sign: Sign,
    delta: f64,
) -> Result<f64> {
    if !(window > 1.0 && window <= v) {
        return Err(Error::Domain(format!("need 1 < Δ ≤ V, got V = {v}, Δ = {window}")));
    }
    let f = |x: f64| {
        let s = sign.apply(x.ln(), delta);
        h_s(r1, s) * h_s(r2, s)
    };
    // the integrand is of size V², so the relative tolerance governs
    let r = integrate(f, v, v + window, QUAD_TOL, 1e-12, MAX_SUBDIVISIONS)?;
    Ok(r.value / window)
}

/// `(V³/Δ)·u(r₁)·u(r₂)·u(|r₁| − |r₂|)` with `u(r) = 1/(1 + |r|)`.
pub fn lemma_bound(r1: f64, r2: f64, v: f64, window: f64) -> f64 {
    let u = |r: f64| 1.0 / (1.0 + r.abs());
    v.powi(3) / window * u(r1) * u(r2) * u(r1.abs() - r2.abs())
}
