//! Kloosterman sums over ℤ[i].
//!
//! `S(m, n; c) = Σ_{a ∈ (ℤ[i]/(c))^×} e(⟨m, a/c⟩ + ⟨n, a*/c⟩)` with
//! `⟨x, y⟩ = Re(x̄y)` and `e(t) = exp(2πit)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{divisor_count, factor, gcd, gcd3, inv_mod, totient, unit_residues, Gaussian, Scalar};

type G = Gaussian<i64>;

/// Naive sums are refused above this modulus norm unless forced.
pub const NAIVE_NORM_LIMIT: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Naive,
    /// Twisted multiplicativity over the coprime prime-power factors of `c`.
    Factored,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KloostermanResult {
    pub value: f64,
    /// Magnitude of the discarded imaginary part.
    pub imag_residual: f64,
    /// Number of summands, the totient of `(c)`.
    pub terms: u64,
}

fn small<T: Scalar>(z: &Gaussian<T>) -> Result<G> {
    let w: G = z.cast().ok_or_else(|| Error::TooLarge(z.to_string()))?;
    if w.re.abs() > 1 << 40 || w.im.abs() > 1 << 40 {
        return Err(Error::TooLarge(z.to_string()));
    }
    Ok(w)
}

/// Evaluates `S(m, n; c)`; naive evaluation is refused for `N(c) > 10⁶`.
pub fn kloosterman<T: Scalar>(
    m: &Gaussian<T>,
    n: &Gaussian<T>,
    c: &Gaussian<T>,
    strategy: Strategy,
) -> Result<KloostermanResult> {
    evaluate(m, n, c, strategy, false)
}

/// As [`kloosterman`] but without the size guard on naive evaluation.
pub fn kloosterman_forced<T: Scalar>(
    m: &Gaussian<T>,
    n: &Gaussian<T>,
    c: &Gaussian<T>,
    strategy: Strategy,
) -> Result<KloostermanResult> {
    evaluate(m, n, c, strategy, true)
}

fn evaluate<T: Scalar>(
    m: &Gaussian<T>,
    n: &Gaussian<T>,
    c: &Gaussian<T>,
    strategy: Strategy,
    force: bool,
) -> Result<KloostermanResult> {
    if c.is_zero() {
        return Err(Error::Domain("Kloosterman modulus is zero".into()));
    }
    let (m, n, c) = (small(m)?, small(n)?, small(c)?);
    if strategy == Strategy::Naive && !force && c.norm() > NAIVE_NORM_LIMIT {
        return Err(Error::Domain(format!(
            "naive Kloosterman sum with N(c) = {} > {NAIVE_NORM_LIMIT} needs force",
            c.norm()
        )));
    }
    let z = match strategy {
        Strategy::Naive => naive(&m, &n, &c)?,
        Strategy::Factored => factored(&m, &n, &c)?,
    };
    Ok(KloostermanResult {
        value: z.re,
        imag_residual: z.im.abs(),
        terms: totient(&c)?,
    })
}

/// `(Re(m̄·a·c̄) mod N(c))`, the numerator of `⟨m, a/c⟩` modulo 1.
fn pairing_numerator(m: &G, a: &G, c: &G, norm: i128) -> i128 {
    let (mr, mi) = (m.re as i128, -(m.im as i128));
    let (ar, ai) = (a.re as i128, a.im as i128);
    let (cr, ci) = (c.re as i128, -(c.im as i128));
    let (pr, pi) = (mr * ar - mi * ai, mr * ai + mi * ar);
    (pr * cr - pi * ci).rem_euclid(norm)
}

fn naive(m: &G, n: &G, c: &G) -> Result<Complex64> {
    if c.is_unit() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let norm = c.norm() as i128;
    let mut sum = Complex64::new(0.0, 0.0);
    for a in unit_residues(c)? {
        let a_inv = inv_mod(&a, c)?;
        let k = (pairing_numerator(m, &a, c, norm) + pairing_numerator(n, &a_inv, c, norm)) % norm;
        let (s, co) = (TAU * k as f64 / norm as f64).sin_cos();
        sum += Complex64::new(co, s);
    }
    Ok(sum)
}

fn factored(m: &G, n: &G, c: &G) -> Result<Complex64> {
    let f = factor(c)?;
    // S(m, n; uc) = S(um, un; c) for a unit u
    let (m, n) = (m * &f.unit, n * &f.unit);
    let parts: Vec<G> = f.factors.iter().map(|(p, e)| p.pow(*e)).collect();
    twisted(&m, &n, &parts)
}

/// `S(m, n; c₁c₂) = S(m·c̄₂', n·c̄₂'; c₁)·S(m·c̄₁', n·c̄₁'; c₂)` with
/// `c₂c₂' ≡ 1 (mod c₁)` and `c₁c₁' ≡ 1 (mod c₂)`.
fn twisted(m: &G, n: &G, parts: &[G]) -> Result<Complex64> {
    match parts {
        [] => Ok(Complex64::new(1.0, 0.0)),
        [c] => naive(m, n, c),
        [c1, rest @ ..] => {
            let c2 = rest.iter().fold(G::one(), |acc, q| &acc * q);
            let w2 = inv_mod(&c2, c1)?.conj();
            let w1 = inv_mod(c1, &c2)?.conj();
            let s1 = naive(&(m * &w2), &(n * &w2), c1)?;
            let s2 = twisted(&(m * &w1), &(n * &w1), rest)?;
            Ok(s1 * s2)
        }
    }
}

/// `|S(m, n; c)| / (N(c)^{1/2}·|gcd(m, n, c)|·d(c))`.
pub fn weil_ratio<T: Scalar>(m: &Gaussian<T>, n: &Gaussian<T>, c: &Gaussian<T>) -> Result<f64> {
    let s = kloosterman(m, n, c, Strategy::Factored)?;
    let (m, n, c) = (small(m)?, small(n)?, small(c)?);
    let g = gcd3(&m, &n, &c)?;
    let d = divisor_count(&c)? as f64;
    Ok(s.value.abs() / ((c.norm() as f64).sqrt() * g.abs_f64() * d))
}

/// Canonical nonzero moduli with `N(c) ≤ bound`, ordered by `(norm, re)`.
pub fn canonical_moduli(bound: i64) -> Vec<G> {
    let r = (bound as f64).sqrt() as i64 + 1;
    let mut out: Vec<G> = (1..=r)
        .flat_map(|x| (0..=r).map(move |y| G::new(x, y)))
        .filter(|c| c.norm() <= bound)
        .collect();
    out.sort_by_key(|c| (c.norm(), c.re));
    out
}

/// The nine `m, n` values of the Weil-ratio scan box.
pub const WEIL_SET: [(i64, i64); 9] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (2, 0),
    (2, 1),
    (1, 2),
    (3, 0),
    (2, 2),
    (4, 0),
];

pub fn weil_set() -> Vec<G> {
    WEIL_SET.iter().map(|&(re, im)| G::new(re, im)).collect()
}

/// The largest Weil ratio found in a scan and where it occurred.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilScan {
    pub max_ratio: f64,
    pub argmax: (G, G, G),
    pub evaluated: usize,
}

/// Scans all canonical `c` with `N(c) ≤ norm_bound` and `m, n` in `set`.
///
/// Ties keep the first triple in `(c, m, n)` scan order.
pub fn weil_scan(norm_bound: i64, set: &[G]) -> Result<WeilScan> {
    let moduli = canonical_moduli(norm_bound);
    let per_c: Vec<Result<(f64, (G, G, G))>> = moduli
        .par_iter()
        .map(|c| {
            let mut best = (f64::NEG_INFINITY, (G::zero(), G::zero(), *c));
            for m in set {
                for n in set {
                    let r = weil_ratio(m, n, c)?;
                    if r > best.0 {
                        best = (r, (*m, *n, *c));
                    }
                }
            }
            Ok(best)
        })
        .collect();
    let mut out = WeilScan {
        max_ratio: f64::NEG_INFINITY,
        argmax: (G::zero(), G::zero(), G::one()),
        evaluated: moduli.len() * set.len() * set.len(),
    };
    for r in per_c {
        let (v, at) = r?;
        if v > out.max_ratio {
            out.max_ratio = v;
            out.argmax = at;
        }
    }
    Ok(out)
}

/// `Σ_{0 < N(c) ≤ x} |gcd(m, n, c)|` over canonical `c`, with the number of such `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GcdAverage {
    pub sum: f64,
    pub count: u64,
}

impl GcdAverage {
    pub fn ratio(&self) -> f64 {
        self.sum / self.count as f64
    }
}

pub fn gcd_average<T: Scalar>(m: &Gaussian<T>, n: &Gaussian<T>, x: f64) -> Result<GcdAverage> {
    if m.is_zero() && n.is_zero() {
        // gcd(0, 0, c) = c
        let moduli = canonical_moduli(x.floor() as i64);
        let sum = moduli.iter().map(|c| c.abs_f64()).sum();
        return Ok(GcdAverage {
            sum,
            count: moduli.len() as u64,
        });
    }
    let g = gcd(&small(m)?, &small(n)?)?;
    let moduli = canonical_moduli(x.floor() as i64);
    let sum = moduli
        .iter()
        .map(|c| gcd(&g, c).map(|d| d.abs_f64()))
        .sum::<Result<f64>>()?;
    Ok(GcdAverage {
        sum,
        count: moduli.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> G {
        G::new(re, im)
    }

    #[test]
    fn examples() {
        let s = kloosterman(&g(1, 0), &g(1, 0), &g(1, 1), Strategy::Naive).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert_eq!(s.terms, 1);
        let r = weil_ratio(&g(1, 0), &g(1, 0), &g(1, 1)).unwrap();
        assert!((r - 1.0 / (2f64.sqrt() * 2.0)).abs() < 1e-12);
        for c in [g(1, 0), g(3, 2), g(5, 0), g(4, 4)] {
            let s = kloosterman(&G::zero(), &G::zero(), &c, Strategy::Naive).unwrap();
            assert_eq!(s.value, totient(&c).unwrap() as f64);
        }
        assert!(kloosterman(&g(1, 0), &g(1, 0), &G::zero(), Strategy::Naive).is_err());
    }

    #[test]
    fn unit_modulus_and_unit_twist() {
        for u in G::units() {
            let s = kloosterman(&g(2, 1), &g(1, 3), &u, Strategy::Factored).unwrap();
            assert_eq!(s.value, 1.0);
        }
        let c = g(7, 4);
        for u in G::units() {
            let a = kloosterman(&g(2, 1), &g(1, 3), &(&u * &c), Strategy::Naive).unwrap();
            let b = kloosterman(&(&g(2, 1) * &u), &(&g(1, 3) * &u), &c, Strategy::Naive).unwrap();
            assert!((a.value - b.value).abs() < 1e-9);
        }
    }

    #[test]
    fn naive_guard() {
        let c = g(1001, 0);
        assert!(kloosterman(&g(1, 0), &g(1, 0), &c, Strategy::Naive).is_err());
        assert!(kloosterman(&g(1, 0), &g(1, 0), &c, Strategy::Factored).is_ok());
    }

    #[test]
    fn gcd_average_examples() {
        let a = gcd_average(&g(1, 0), &g(1, 0), 50.0).unwrap();
        assert_eq!(a.sum, a.count as f64);
        let z = gcd_average(&G::zero(), &G::zero(), 10.0).unwrap();
        let expect: f64 = canonical_moduli(10).iter().map(|c| c.abs_f64()).sum();
        assert_eq!(z.sum, expect);
        assert_eq!(z.count, 9); // 1, 1+i, 2, 2+i, 1+2i, 2+2i, 3, 3+i, 1+3i
    }
}
