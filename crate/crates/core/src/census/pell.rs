use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::forms::principal_sqrt;
use crate::gaussian::{sqrt_exact, Gaussian};

type G = Gaussian<i64>;

/// Solutions with `|ε|` this close to 1 are torsion and never fundamental.
const TORSION_TOL: f64 = 1e-9;

/// Fundamental solution of `t² − d·u² = 4`, `ε_d = (t0 + u0·√d)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PellUnit {
    pub d: G,
    pub t0: G,
    pub u0: G,
    /// `|ε_d| > 1`.
    pub abs_eps: f64,
    /// `2·log|ε_d| = log N(P₀)`.
    pub log_norm: f64,
    /// Every solution with `|ε|` up to this value was inside the search.
    pub certified_abs_eps: f64,
}

/// `ε = (t + u√d)/2` for the sign of `t` making `|ε| ≥ 1`; returns `(t, ε)`.
pub fn unit_from(t: &G, u: &G, sd: Complex64) -> (G, Complex64) {
    let tc = Complex64::new(t.re as f64, t.im as f64);
    let us = Complex64::new(u.re as f64, u.im as f64) * sd;
    let plus = (tc + us) / 2.0;
    let minus = (-tc + us) / 2.0;
    if plus.norm() >= minus.norm() {
        (*t, plus)
    } else {
        (-*t, minus)
    }
}

/// Largest `E` such that every solution with `|ε| ≤ E` has `|u| ≤ search_limit`.
///
/// From `u√d = ε − ε⁻¹` we get `|u|·√|d| ≤ |ε| + 1/|ε|`.
pub fn certified_bound(d: &G, search_limit: f64) -> f64 {
    let y = search_limit * (d.norm() as f64).sqrt().sqrt();
    if y <= 2.0 {
        1.0
    } else {
        (y + (y * y - 4.0).sqrt()) / 2.0
    }
}

/// Search limit on `|u|` that certifies all units with `|ε|² ≤ x`.
pub fn search_limit_for(d: &G, x: f64) -> f64 {
    let e = x.sqrt();
    (e + 1.0 / e) / (d.norm() as f64).sqrt().sqrt()
}

/// Minimal `|ε| > 1` over `u ≠ 0` with `|u| ≤ search_limit`, `u` taken modulo sign.
///
/// Ties in `|ε|` (torsion twists) go to the smallest `(t0, u0)` in
/// lexicographic `(re, im)` order.
pub fn pell_fundamental(d: &G, search_limit: f64) -> Option<PellUnit> {
    let sd = principal_sqrt(d);
    let r = search_limit.floor() as i64;
    let lim2 = search_limit * search_limit;
    let four = G::new(4, 0);
    let mut best: Option<(f64, G, G)> = None;
    for ur in 0..=r {
        for ui in -r..=r {
            let u = G::new(ur, ui);
            if !u.is_half_plane() || (u.norm() as f64) > lim2 {
                continue;
            }
            let rhs = &four + &(d * &(&u * &u));
            let Some(t) = sqrt_exact(&rhs) else { continue };
            let (t, eps) = unit_from(&t, &u, sd);
            let a = eps.norm();
            if a <= 1.0 + TORSION_TOL {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, bt, bu)) => {
                    if (a - b).abs() <= 1e-12 * b {
                        (t, u) < (*bt, *bu)
                    } else {
                        a < *b
                    }
                }
            };
            if better {
                best = Some((a, t, u));
            }
        }
    }
    best.map(|(a, t0, u0)| PellUnit {
        d: *d,
        t0,
        u0,
        abs_eps: a,
        log_norm: 2.0 * a.ln(),
        certified_abs_eps: certified_bound(d, search_limit),
    })
}
