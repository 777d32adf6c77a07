//! Exact arithmetic in the Gaussian integers ℤ[i].
//!
//! [`Gaussian`] is generic over the component type so the same code serves
//! arbitrary precision ([`GaussianInt`]) and the `i64` instantiation used in
//! the enumeration loops.

mod factor;
pub mod rational;
mod residues;

pub use factor::{
    divisor_count, divisor_sum, divisor_sum_int, divisors, factor, squarefree_split,
    GaussianFactorization, SquarefreeSplit,
};
pub use residues::{totient, unit_residues};

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Component type of a Gaussian integer.
pub trait Scalar:
    Clone
    + Integer
    + Signed
    + Roots
    + FromPrimitive
    + ToPrimitive
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Clone
        + Integer
        + Signed
        + Roots
        + FromPrimitive
        + ToPrimitive
        + Hash
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// A Gaussian integer `re + im·i`.
///
/// The derived ordering is lexicographic in `(re, im)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize, serde::Deserialize)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

/// Gaussian integer with arbitrary-precision components.
pub type GaussianInt = Gaussian<BigInt>;

impl<T: Scalar> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn from_int(n: T) -> Self {
        Gaussian::new(n, T::zero())
    }

    /// Builds from machine integers; panics only if `T` cannot hold an `i64`.
    pub fn from_i64(re: i64, im: i64) -> Self {
        Gaussian::new(
            T::from_i64(re).expect("component fits"),
            T::from_i64(im).expect("component fits"),
        )
    }

    pub fn zero() -> Self {
        Gaussian::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Gaussian::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        Gaussian::new(T::zero(), T::one())
    }

    /// The four units `1, i, -1, -i`, in that order.
    pub fn units() -> [Self; 4] {
        let one = Self::one();
        let i = Self::i();
        [one.clone(), i.clone(), -one, -i]
    }

    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Gaussian::new(-self.im.clone(), self.re.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// True for `re > 0, im ≥ 0` (and for zero).
    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.re.is_positive() && !self.im.is_negative())
    }

    /// The associate in the region `re > 0, im ≥ 0`; zero maps to zero.
    pub fn normalize_unit(&self) -> Self {
        self.canonical_parts().1
    }

    /// Returns `(u, w)` with `self = u·w`, `u` a unit and `w` canonical.
    pub fn canonical_parts(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::one(), Self::zero());
        }
        // rotating by -i repeatedly visits all four associates
        let mut w = self.clone();
        let mut u = Self::one();
        for _ in 0..4 {
            if w.is_canonical() {
                return (u, w);
            }
            w = Gaussian::new(w.im.clone(), -w.re.clone());
            u = u.mul_i();
        }
        unreachable!("some associate of a nonzero Gaussian integer is canonical")
    }

    /// True for representatives of `z` modulo `±1`: `re > 0`, or `re = 0` and `im > 0`.
    pub fn is_half_plane(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && self.im.is_positive())
    }

    /// The element of `{z, -z}` satisfying [`Gaussian::is_half_plane`]; zero maps to zero.
    pub fn half_plane(&self) -> Self {
        if self.is_zero() || self.is_half_plane() {
            self.clone()
        } else {
            -self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient rounded to the nearest lattice point (ties toward +∞ componentwise).
    pub fn div_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let p = self * &d.conj();
        let two = T::one() + T::one();
        let round = |x: T| (two.clone() * x + n.clone()).div_floor(&(two.clone() * n.clone()));
        Gaussian::new(round(p.re), round(p.im))
    }

    /// Remainder of [`Gaussian::div_round`]; its norm is at most `N(d)/2`.
    pub fn rem_round(&self, d: &Self) -> Self {
        self - &(&self.div_round(d) * d)
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let p = self * &d.conj();
        let (qr, rr) = p.re.div_rem(&n);
        let (qi, ri) = p.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| Gaussian::new(qr, qi))
    }

    pub fn divides(&self, n: &Self) -> bool {
        if self.is_zero() {
            return n.is_zero();
        }
        n.div_exact(self).is_some()
    }

    /// Canonical residue modulo `c`: the lattice point `α·c + β·ic` with
    /// `0 ≤ α, β < 1` congruent to `self`. Every residue mod a unit is zero.
    pub fn reduce_mod(&self, c: &Self) -> Self {
        let n = c.norm();
        let p = self * &c.conj();
        let q = Gaussian::new(p.re.div_floor(&n), p.im.div_floor(&n));
        self - &(&q * c)
    }

    /// Converts the components to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Option<Gaussian<U>> {
        Some(Gaussian::new(
            U::from_i128(self.re.to_i128()?)?,
            U::from_i128(self.im.to_i128()?)?,
        ))
    }

    /// Components as `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Complex absolute value as `f64`.
    pub fn abs_f64(&self) -> f64 {
        let (x, y) = self.to_f64();
        x.hypot(y)
    }
}

impl GaussianInt {
    pub fn from_i64_pair(re: i64, im: i64) -> Self {
        Gaussian::new(BigInt::from(re), BigInt::from(im))
    }
}

/// `re² + im²`.
pub fn norm<T: Scalar>(z: &Gaussian<T>) -> T {
    z.norm()
}

/// Canonical associate, see [`Gaussian::normalize_unit`].
pub fn normalize_unit<T: Scalar>(z: &Gaussian<T>) -> Gaussian<T> {
    z.normalize_unit()
}

/// Greatest common divisor by the Euclidean algorithm, canonically normalized.
pub fn gcd<T: Scalar>(a: &Gaussian<T>, b: &Gaussian<T>) -> Result<Gaussian<T>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Domain("gcd(0, 0) is undefined".into()));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem_round(&y);
        x = y;
        y = r;
    }
    Ok(x.normalize_unit())
}

/// `gcd(gcd(m, n), c)`; requires `c ≠ 0`.
pub fn gcd3<T: Scalar>(m: &Gaussian<T>, n: &Gaussian<T>, c: &Gaussian<T>) -> Result<Gaussian<T>> {
    if m.is_zero() && n.is_zero() {
        return gcd(c, &Gaussian::zero());
    }
    gcd(&gcd(m, n)?, c)
}

/// Inverse of `a` modulo `c` as a canonical residue.
pub fn inv_mod<T: Scalar>(a: &Gaussian<T>, c: &Gaussian<T>) -> Result<Gaussian<T>> {
    if c.is_zero() {
        return Err(Error::Domain("modulus is zero".into()));
    }
    // invariant: r_k ≡ s_k·a (mod c)
    let (mut r0, mut s0) = (c.clone(), Gaussian::zero());
    let (mut r1, mut s1) = (a.reduce_mod(c), Gaussian::one());
    while !r1.is_zero() {
        let q = r0.div_round(&r1);
        let r2 = &r0 - &(&q * &r1);
        let s2 = &s0 - &(&q * &s1);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if !r0.is_unit() {
        return Err(Error::NoInverse {
            a: a.to_string(),
            c: c.to_string(),
        });
    }
    // r0 is a unit u, so s0·a ≡ u and a⁻¹ ≡ s0·ū
    Ok((&s0 * &r0.conj()).reduce_mod(c))
}

/// Square root `w` with `w² = z`, or `None` when `z` is not a square.
///
/// Of the two roots `±w` the one with `re > 0`, or `re = 0` and `im > 0`, is
/// returned. The first-quadrant associate of a root is generally not a root.
pub fn sqrt_exact<T: Scalar>(z: &Gaussian<T>) -> Option<Gaussian<T>> {
    if z.is_zero() {
        return Some(Gaussian::zero());
    }
    let n = z.norm();
    let s = n.sqrt();
    if s.clone() * s.clone() != n {
        return None;
    }
    let two = T::one() + T::one();
    let (xs, xr) = (s.clone() + z.re.clone()).div_rem(&two);
    if !xr.is_zero() {
        return None;
    }
    let ys = (s - z.re.clone()) / two;
    let x = xs.sqrt();
    let mut y = ys.sqrt();
    if x.clone() * x.clone() != xs || y.clone() * y.clone() != ys {
        return None;
    }
    if z.im.is_negative() {
        y = -y;
    }
    let w = Gaussian::new(x, y);
    (&w * &w == *z).then(|| w.half_plane())
}

macro_rules! impl_binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl<T: Scalar> $tr<&Gaussian<T>> for &Gaussian<T> {
            type Output = Gaussian<T>;
            fn $f(self, o: &Gaussian<T>) -> Gaussian<T> {
                let g: fn(&Gaussian<T>, &Gaussian<T>) -> Gaussian<T> = $body;
                g(self, o)
            }
        }
        impl<T: Scalar> $tr<Gaussian<T>> for Gaussian<T> {
            type Output = Gaussian<T>;
            fn $f(self, o: Gaussian<T>) -> Gaussian<T> {
                (&self).$f(&o)
            }
        }
        impl<T: Scalar> $tr<&Gaussian<T>> for Gaussian<T> {
            type Output = Gaussian<T>;
            fn $f(self, o: &Gaussian<T>) -> Gaussian<T> {
                (&self).$f(o)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| Gaussian::new(
    a.re.clone() + b.re.clone(),
    a.im.clone() + b.im.clone()
));
impl_binop!(Sub, sub, |a, b| Gaussian::new(
    a.re.clone() - b.re.clone(),
    a.im.clone() - b.im.clone()
));
impl_binop!(Mul, mul, |a, b| Gaussian::new(
    a.re.clone() * b.re.clone() - a.im.clone() * b.im.clone(),
    a.re.clone() * b.im.clone() + a.im.clone() * b.re.clone()
));

impl<T: Scalar> Neg for Gaussian<T> {
    type Output = Gaussian<T>;
    fn neg(self) -> Gaussian<T> {
        Gaussian::new(-self.re, -self.im)
    }
}

impl<T: Scalar> Neg for &Gaussian<T> {
    type Output = Gaussian<T>;
    fn neg(self) -> Gaussian<T> {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }
}

impl<T: Scalar> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<T: Scalar> fmt::Debug for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar + FromStr> FromStr for Gaussian<T> {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i`/`-i` shorthand for `±1i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse Gaussian integer from {s:?}"));
        let t = s.trim();
        if t.is_empty() || t.contains(char::is_whitespace) {
            return Err(bad());
        }
        let int = |x: &str| -> Result<T> { x.parse::<T>().map_err(|_| bad()) };
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gaussian::from_int(int(t)?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => T::one(),
            "-" => -T::one(),
            x => int(x.strip_prefix('+').unwrap_or(x))?,
        };
        Ok(Gaussian::new(int(re)?, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = Gaussian<i64>;

    fn g(re: i64, im: i64) -> G {
        G::new(re, im)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&g(3, 4)), 25);
        assert_eq!(norm(&g(0, 0)), 0);
        assert_eq!(norm(&g(1, 1)), 2);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_unit(&g(-2, 0)), g(2, 0));
        assert_eq!(normalize_unit(&g(0, 1)), g(1, 0));
        assert_eq!(normalize_unit(&g(1, -1)), g(1, 1));
        assert_eq!(normalize_unit(&g(0, 0)), g(0, 0));
        for re in -5..=5 {
            for im in -5..=5 {
                let z = g(re, im);
                let (u, w) = z.canonical_parts();
                assert!(u.is_unit());
                assert_eq!(&u * &w, z);
                assert_eq!(w.normalize_unit(), w);
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 1));
        assert_eq!(gcd(&g(3, 0), &g(7, 0)).unwrap(), g(1, 0));
        assert_eq!(gcd(&g(-3, 2), &g(0, 0)).unwrap(), g(-3, 2).normalize_unit());
        assert!(gcd(&g(0, 0), &g(0, 0)).is_err());
    }

    #[test]
    fn inv_mod_examples() {
        let c = g(1, 2);
        let r = inv_mod(&g(2, 0), &c).unwrap();
        assert_eq!((&g(2, 0) * &r - g(1, 0)).reduce_mod(&c), G::zero());
        assert_eq!(r.reduce_mod(&c), r);
        for c in [g(4, 7), g(1, 1), g(3, 0), g(-2, 5)] {
            assert_eq!(inv_mod(&g(1, 0), &c).unwrap(), g(1, 0).reduce_mod(&c));
        }
        assert_eq!(inv_mod(&g(1, 0), &g(5, 0)).unwrap(), g(1, 0));
        assert!(matches!(
            inv_mod(&g(1, 1), &g(2, 0)),
            Err(Error::NoInverse { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_exact(&g(0, 2)), Some(g(1, 1)));
        assert_eq!(sqrt_exact(&g(5, 0)), None);
        assert_eq!(sqrt_exact(&g(0, 0)), Some(g(0, 0)));
        assert_eq!(sqrt_exact(&g(0, -2)), Some(g(1, -1)));
        assert_eq!(sqrt_exact(&g(-1, 0)), Some(g(0, 1)));
    }

    #[test]
    fn reduce_mod_lands_in_parallelogram() {
        let c = g(3, 2);
        let mut seen = std::collections::HashSet::new();
        for re in -20..20 {
            for im in -20..20 {
                let r = g(re, im).reduce_mod(&c);
                assert!(c.divides(&(g(re, im) - &r)));
                // α, β in [0, 1) means r·c̄ has both components in [0, N(c))
                let p = &r * &c.conj();
                assert!((0..13).contains(&p.re) && (0..13).contains(&p.im));
                seen.insert(r);
            }
        }
        assert_eq!(seen.len(), 13);
    }

    #[test]
    fn parse_and_display() {
        for (s, z) in [
            ("1+1i", g(1, 1)),
            ("3-4i", g(3, -4)),
            ("-2", g(-2, 0)),
            ("i", g(0, 1)),
            ("-i", g(0, -1)),
            ("5i", g(0, 5)),
            ("-7-i", g(-7, -1)),
            ("2+i", g(2, 1)),
        ] {
            assert_eq!(s.parse::<G>().unwrap(), z, "{s}");
            assert_eq!(z.to_string().parse::<G>().unwrap(), z);
        }
        for s in ["", "1 + i", "x", "1+2j", "i+1", "++1i"] {
            assert!(s.parse::<G>().is_err(), "{s}");
        }
        assert_eq!(g(1, -1).to_string(), "1-1i");
    }

    #[test]
    fn bigint_instantiation() {
        let z = GaussianInt::from_i64_pair(3, 4);
        assert_eq!(z.norm(), BigInt::from(25));
        let w = GaussianInt::from_i64_pair(1_000_000_007, -3);
        let p = &w * &w;
        assert_eq!(sqrt_exact(&p), Some(w.half_plane()));
    }
}
