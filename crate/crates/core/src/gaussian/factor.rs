
use super::rational::{factor_u64, sqrt_mod_prime};
use super::{gcd, Gaussian, Scalar};
use crate::error::{Error, Result};

/// `z = unit · ∏ primeᵉ` with canonical primes sorted by `(norm, re)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianFactorization<T: Scalar> {
    pub unit: Gaussian<T>,
    pub factors: Vec<(Gaussian<T>, u32)>,
}

impl<T: Scalar> GaussianFactorization<T> {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> Gaussian<T> {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// `u = u1·u2²` up to a unit with `u1` squarefree; `u_plus = u1²·u2²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeSplit<T: Scalar> {
    pub u1: Gaussian<T>,
    pub u2: Gaussian<T>,
    pub u_plus: Gaussian<T>,
}

type G = Gaussian<i128>;

fn to_i128<T: Scalar>(z: &Gaussian<T>) -> Result<G> {
    let big = || Error::TooLarge(z.to_string());
    let w: G = z.cast().ok_or_else(big)?;
    if w.re.unsigned_abs() > u32::MAX as u128 || w.im.unsigned_abs() > u32::MAX as u128 {
        return Err(big());
    }
    Ok(w)
}

fn from_i128<T: Scalar>(z: &G) -> Gaussian<T> {
    z.cast().expect("factor of a representable integer is representable")
}

/// The canonical Gaussian prime above a rational prime `p ≡ 1 (mod 4)`.
fn split_prime(p: u64) -> G {
    let x = sqrt_mod_prime(p - 1, p).expect("-1 is a square mod p ≡ 1 (mod 4)");
    let pi = gcd(&G::new(p as i128, 0), &G::new(x as i128, 1)).expect("nonzero");
    debug_assert_eq!(pi.norm(), p as i128);
    pi
}

/// Factors a nonzero Gaussian integer whose components fit in 32 bits.
pub fn factor<T: Scalar>(z: &Gaussian<T>) -> Result<GaussianFactorization<T>> {
    if z.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let w = to_i128(z)?;
    let n = w.norm() as u64;
    let mut rest = w;
    let mut factors: Vec<(G, u32)> = Vec::new();
    for (p, e) in factor_u64(n) {
        let mut take = |pi: G, rest: &mut G| {
            let mut k = 0;
            while let Some(q) = rest.div_exact(&pi) {
                *rest = q;
                k += 1;
            }
            if k > 0 {
                factors.push((pi, k));
            }
            k
        };
        match p % 4 {
            2 => {
                take(G::new(1, 1), &mut rest);
            }
            3 => {
                take(G::new(p as i128, 0), &mut rest);
            }
            _ => {
                let pi = split_prime(p);
                let bar = pi.conj().normalize_unit();
                let k = take(pi, &mut rest);
                if k < e {
                    take(bar, &mut rest);
                }
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by(|a, b| (a.0.norm(), &a.0.re).cmp(&(b.0.norm(), &b.0.re)));
    Ok(GaussianFactorization {
        unit: from_i128(&rest),
        factors: factors.iter().map(|(p, e)| (from_i128(p), *e)).collect(),
    })
}

/// Canonical divisors of `n`, sorted by `(norm, re)`.
pub fn divisors<T: Scalar>(n: &Gaussian<T>) -> Result<Vec<Gaussian<T>>> {
    let f = factor(n)?;
    let mut out = vec![Gaussian::<T>::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * p;
                next.push(acc.normalize_unit());
            }
        }
        out = next;
    }
    let mut out: Vec<_> = out.into_iter().map(|d| d.normalize_unit()).collect();
    out.sort_by(|a, b| (a.norm(), &a.re).cmp(&(b.norm(), &b.re)));
    Ok(out)
}

/// Number of canonical divisors `d(n)`.
pub fn divisor_count<T: Scalar>(n: &Gaussian<T>) -> Result<u64> {
    Ok(factor(n)?
        .factors
        .iter()
        .map(|(_, e)| *e as u64 + 1)
        .product())
}

/// `σ_s(n) = Σ_{d | n} N(d)^s`, accumulated in ascending divisor order.
pub fn divisor_sum<T: Scalar>(s: f64, n: &Gaussian<T>) -> Result<f64> {
    if s == 0.0 {
        return Ok(divisor_count(n)? as f64);
    }
    Ok(divisors(n)?
        .iter()
        .map(|d| d.norm().to_f64().unwrap_or(f64::INFINITY).powf(s))
        .sum())
}

/// Exact `σ_k(n)` for a nonnegative integer exponent.
pub fn divisor_sum_int<T: Scalar>(k: u32, n: &Gaussian<T>) -> Result<num_bigint::BigUint> {
    use num_bigint::BigUint;
    Ok(divisors(n)?
        .iter()
        .map(|d| BigUint::from(d.norm().to_u128().expect("norm is nonnegative")).pow(k))
        .sum())
}

/// Splits `u` into squarefree and square parts.
pub fn squarefree_split<T: Scalar>(u: &Gaussian<T>) -> Result<SquarefreeSplit<T>> {
    let f = factor(u)?;
    let mut u1 = Gaussian::<T>::one();
    let mut u2 = Gaussian::<T>::one();
    for (p, e) in &f.factors {
        u1 = &u1 * &p.pow(e % 2);
        u2 = &u2 * &p.pow(e / 2);
    }
    let u_plus = &(&u1 * &u1) * &(&u2 * &u2);
    Ok(SquarefreeSplit { u1, u2, u_plus })
}
