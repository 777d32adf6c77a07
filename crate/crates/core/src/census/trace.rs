//! The census rebuilt from traces.
//!
//! Every hyperbolic element of trace `t` is `(t + u√d)/2` for a splitting
//! `t² − 4 = d·u²`; the classes with trace `±t` and a given `u` (up to units)
//! are the `h(d)` classes of forms of discriminant `d`. Enumerating traces,
//! splitting `t² − 4` and grouping by `d` recovers the fundamental units and
//! powers without any Pell search.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::discriminant::is_discriminant;
use super::forms::{class_number, principal_sqrt, reduced_height_bound};
use super::pell::{unit_from, PellUnit};
use super::{sort_key, GeodesicClass, KahanSum};
use crate::error::{Error, Result};
use crate::gaussian::{factor, Gaussian};

type G = Gaussian<i64>;

const TORSION_TOL: f64 = 1e-9;

/// A unit of the order of discriminant 3 that is a power of `ε₃` only up to a
/// cube root of unity; such elements are not counted.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionTwist {
    pub d: G,
    pub t: G,
    pub u: G,
    pub abs_eps: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceCensus {
    pub x: f64,
    pub entries: Vec<GeodesicClass>,
    pub twists: Vec<TorsionTwist>,
}

/// Traces up to this modulus (modulo sign) cover every class of norm ≤ `x`.
pub fn trace_bound(x: f64) -> f64 {
    let e = x.sqrt();
    e + 1.0 / e + 1.0
}

/// `u` up to units with `u² | n`, paired with `n/u²`.
fn square_splittings(n: &G) -> Result<Vec<(G, G)>> {
    let f = factor(n)?;
    let mut us = vec![G::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::new();
        for u in &us {
            let mut q = *u;
            for _ in 0..=e / 2 {
                next.push(q);
                q = &q * p;
            }
        }
        us = next;
    }
    Ok(us
        .into_iter()
        .map(|u| {
            let u = u.normalize_unit();
            let d = n.div_exact(&(&u * &u)).expect("u² divides n");
            (u, d)
        })
        .collect())
}

struct Solution {
    t: G,
    u: G,
    abs_eps: f64,
}

/// Rebuilds the census of norms ≤ `x` from traces.
pub fn trace_census(x: f64) -> Result<TraceCensus> {
    let bound = trace_bound(x);
    let r = bound.floor() as i64;
    let mut groups: BTreeMap<(i64, i64, i64), (G, Vec<Solution>)> = BTreeMap::new();
    for re in 0..=r {
        for im in -r..=r {
            let t = G::new(re, im);
            if !t.is_half_plane() || (t.norm() as f64).sqrt() > bound {
                continue;
            }
            let n = &(&t * &t) - &G::new(4, 0);
            if n.is_zero() {
                continue;
            }
            for (u, d) in square_splittings(&n)? {
                if !is_discriminant(&d) {
                    continue;
                }
                // d and −d give the same classes: (t, u, d) ~ (t, iu, −d)
                let (d, u) = if d.is_half_plane() { (d, u) } else { (-d, u.mul_i()) };
                let u = u.half_plane();
                let (t, eps) = unit_from(&t, &u, principal_sqrt(&d));
                let a = eps.norm();
                if a <= 1.0 + TORSION_TOL || a * a > x * (1.0 + 1e-9) {
                    continue;
                }
                groups
                    .entry((d.norm(), d.re, d.im))
                    .or_insert_with(|| (d, Vec::new()))
                    .1
                    .push(Solution { t, u, abs_eps: a });
            }
        }
    }
    let mut entries = Vec::new();
    let mut twists = Vec::new();
    for (_, (d, sols)) in groups {
        attribute(&d, &sols, x, &mut entries, &mut twists)?;
    }
    entries.sort_by_key(sort_key);
    Ok(TraceCensus { x, entries, twists })
}

fn attribute(
    d: &G,
    sols: &[Solution],
    x: f64,
    entries: &mut Vec<GeodesicClass>,
    twists: &mut Vec<TorsionTwist>,
) -> Result<()> {
    let mut fund = &sols[0];
    for s in &sols[1..] {
        let tie = (s.abs_eps - fund.abs_eps).abs() <= 1e-12 * fund.abs_eps;
        if (tie && (s.t, s.u) < (fund.t, fund.u)) || (!tie && s.abs_eps < fund.abs_eps) {
            fund = s;
        }
    }
    let log_norm = 2.0 * fund.abs_eps.ln();
    let pell = PellUnit {
        d: *d,
        t0: fund.t,
        u0: fund.u,
        abs_eps: fund.abs_eps,
        log_norm,
        certified_abs_eps: x.sqrt(),
    };
    let h = class_number(d, reduced_height_bound(d))?;
    for s in sols {
        let k = (2.0 * s.abs_eps.ln() / log_norm).round().max(1.0) as u32;
        let (tk, uk) = power(d, &fund.t, &fund.u, k);
        if (s.t, s.u) == (tk, uk) || (s.t, s.u) == (-tk, -uk) {
            let norm = (k as f64 * log_norm).exp();
            if norm <= x {
                entries.push(GeodesicClass {
                    pell,
                    k,
                    norm,
                    lambda_weight: log_norm,
                    h,
                });
            }
        } else if *d == G::new(3, 0) {
            twists.push(TorsionTwist {
                d: *d,
                t: s.t,
                u: s.u,
                abs_eps: s.abs_eps,
            });
        } else {
            return Err(Error::Decomposition {
                t: s.t.to_string(),
                reason: format!("not a power of the smallest unit of discriminant {d}"),
            });
        }
    }
    Ok(())
}

/// `(t_k, u_k)` with `((t + u√d)/2)^k = (t_k + u_k√d)/2`.
fn power(d: &G, t: &G, u: &G, k: u32) -> (G, G) {
    let two = G::new(2, 0);
    let (mut tk, mut uk) = (*t, *u);
    for _ in 1..k {
        let tn = (&(&tk * t) + &(&(d * &uk) * u)).div_exact(&two).expect("even");
        let un = (&(&tk * u) + &(&uk * t)).div_exact(&two).expect("even");
        (tk, uk) = (tn, un);
    }
    (tk, uk)
}

/// `ψ(X)` from the trace enumeration.
pub fn trace_side_psi(x: f64) -> Result<f64> {
    let tc = trace_census(x)?;
    let mut s = KahanSum::default();
    for e in &tc.entries {
        s.add(e.h as f64 * e.lambda_weight);
    }
    Ok(s.value())
}

/// `ε(t) = (t + √(t² − 4))/2` with `|ε(t)| ≥ 1`.
pub fn eps_of_trace(t: &G) -> Complex64 {
    let tc = Complex64::new(t.re as f64, t.im as f64);
    let r = (tc * tc - 4.0).sqrt();
    let (p, m) = ((tc + r) / 2.0, (tc - r) / 2.0);
    if p.norm() >= m.norm() {
        p
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splittings_of_small_traces() {
        // t = 3: t² − 4 = 5 has no square factor
        let s = square_splittings(&G::new(5, 0)).unwrap();
        assert_eq!(s, vec![(G::one(), G::new(5, 0))]);
        // t = 4: 12 = 3·2² and 2 = −i(1+i)²
        let s = square_splittings(&G::new(12, 0)).unwrap();
        assert_eq!(s.len(), 3);
        for (u, d) in s {
            assert_eq!(&d * &(&u * &u), G::new(12, 0));
        }
    }

    #[test]
    fn power_recurrence() {
        let d = G::new(5, 0);
        let (t1, u1) = (G::new(0, 1), G::new(0, 1));
        let (t2, u2) = power(&d, &t1, &u1, 2);
        assert_eq!((t2, u2), (G::new(-3, 0), G::new(-1, 0)));
        let (t3, u3) = power(&d, &t1, &u1, 3);
        assert_eq!(&(&t3 * &t3) - &(&d * &(&u3 * &u3)), G::new(4, 0));
    }

    #[test]
    fn nothing_at_one() {
        assert_eq!(trace_side_psi(1.0).unwrap(), 0.0);
    }
}
