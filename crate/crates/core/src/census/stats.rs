//! Statistics over a census: class-number sums, second moments and the
//! identity linking discriminant and trace enumerations.

use serde::{Deserialize, Serialize};

use super::{check_covered, main_term, CensusTable, TraceCensus};
use crate::error::{Error, Result};
use crate::numeric::{integrate, li, KahanSum, GAUSS_LEGENDRE_3, MAX_SUBDIVISIONS};

/// `Σ h(d)` over primitive entries with `|ε_d| ≤ X`, and its residual against `Li(X⁴)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassNumberSum {
    pub x: f64,
    pub sum: u64,
    pub residual: f64,
}

pub fn class_number_sum(x: f64, census: &CensusTable) -> Result<ClassNumberSum> {
    check_covered(x * x, census)?;
    let sum = census
        .entries
        .iter()
        .filter(|e| e.k == 1 && e.pell.abs_eps <= x)
        .map(|e| e.h)
        .sum();
    Ok(ClassNumberSum {
        x,
        sum,
        residual: sum as f64 - li(x.powi(4))?,
    })
}

/// How `∫|E|²` is evaluated between jumps of `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentMethod {
    /// Exact for `s = [2]`, where `E²` is a quartic on each piece; adaptive otherwise.
    Exact,
    /// Adaptive quadrature on every piece.
    Quadrature,
}

/// Relative tolerance of the adaptive route.
pub const MOMENT_REL_TOL: f64 = 1e-8;

/// `(1/Δ)∫_V^{V+Δ} |E(x)|² dx`.
pub fn second_moment_e(
    v: f64,
    delta: f64,
    census: &CensusTable,
    small_eigenvalues: &[f64],
) -> Result<f64> {
    second_moment_with(v, delta, census, small_eigenvalues, MomentMethod::Exact)
}

pub fn second_moment_with(
    v: f64,
    delta: f64,
    census: &CensusTable,
    small_eigenvalues: &[f64],
    method: MomentMethod,
) -> Result<f64> {
    if !(delta > 1.0 && delta <= v) {
        return Err(Error::Domain(format!("need 1 < Δ ≤ V, got V = {v}, Δ = {delta}")));
    }
    let end = v + delta;
    check_covered(end, census)?;
    main_term(v, small_eigenvalues)?;
    let polynomial = method == MomentMethod::Exact && small_eigenvalues == [2.0];
    let mut psi = KahanSum::default();
    let mut entries = census.entries.iter().peekable();
    while let Some(e) = entries.next_if(|e| e.norm <= v) {
        psi.add(e.h as f64 * e.lambda_weight);
    }
    let mut total = KahanSum::default();
    let mut left = v;
    loop {
        let right = entries.peek().map_or(end, |e| e.norm.min(end));
        if right > left {
            let c = psi.value();
            let piece = if polynomial {
                let (mid, half) = ((left + right) / 2.0, (right - left) / 2.0);
                half * GAUSS_LEGENDRE_3
                    .iter()
                    .map(|(x, w)| {
                        let t = mid + half * x;
                        let e = c - t * t / 2.0;
                        w * e * e
                    })
                    .sum::<f64>()
            } else {
                let f = |t: f64| {
                    let e = c - small_eigenvalues.iter().map(|s| t.powf(*s) / s).sum::<f64>();
                    e * e
                };
                integrate(f, left, right, 0.0, MOMENT_REL_TOL, MAX_SUBDIVISIONS)?.value
            };
            total.add(piece);
        }
        if right >= end {
            break;
        }
        while let Some(e) = entries.next_if(|e| e.norm <= right) {
            psi.add(e.h as f64 * e.lambda_weight);
        }
        left = right;
    }
    Ok(total.value() / delta)
}

/// Both sides of the identity between the discriminant and trace enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SarnakIdentity {
    pub x: f64,
    /// `Σ_{|ε_d| ≤ x} h(d)·log|ε_d|²` from the census.
    pub discriminant_side: f64,
    /// `Σ Λ(N(P))` over primitive trace-side classes with `N(P) ≤ x²`.
    pub trace_side_weighted: f64,
    /// The number of those classes, `π(x²)`.
    pub trace_side_count: u64,
}

pub fn sarnak_identity(x: f64, census: &CensusTable, trace: &TraceCensus) -> Result<SarnakIdentity> {
    check_covered(x * x, census)?;
    if trace.x < x * x * (1.0 - 1e-12) {
        return Err(Error::Coverage {
            needed: x * x,
            x_max: trace.x,
        });
    }
    let d_side: KahanSum = census
        .entries
        .iter()
        .filter(|e| e.k == 1 && e.pell.abs_eps <= x)
        .map(|e| e.h as f64 * e.pell.log_norm)
        .collect();
    let primitive = || {
        trace
            .entries
            .iter()
            .filter(|e| e.k == 1 && e.norm <= x * x)
    };
    let weighted: KahanSum = primitive().map(|e| e.h as f64 * e.lambda_weight).collect();
    Ok(SarnakIdentity {
        x,
        discriminant_side: d_side.value(),
        trace_side_weighted: weighted.value(),
        trace_side_count: primitive().map(|e| e.h).sum(),
    })
}

/// `max |E(X)|/X^θ` over `grid`, with the maximizing `X`.
pub fn error_ratio_max(
    grid: &[f64],
    census: &CensusTable,
    small_eigenvalues: &[f64],
    theta: f64,
) -> Result<(f64, f64)> {
    let mut best = (0.0, f64::NAN);
    for &x in grid {
        let r = super::error_term(x, census, small_eigenvalues)?.abs() / x.powf(theta);
        if !(r <= best.0) {
            best = (r, x);
        }
    }
    Ok(best)
}
