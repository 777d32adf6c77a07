//! Binary quadratic forms over ℤ[i] and their class numbers.
//!
//! A form `(a, b, c)` of discriminant `d` has roots `(-b ± √d)/(2a)` on the
//! sphere at infinity; the form is *reduced* when the geodesic joining them
//! meets the closed Picard fundamental domain
//! `F = {|x| ≤ 1/2, 0 ≤ y ≤ 1/2, |z|² + r² ≥ 1}`. Every class contains a
//! reduced form, there are finitely many reduced forms, and two reduced forms
//! are equivalent iff they are joined by a chain of face pairings of `F`
//! through reduced forms. Class numbers are component counts of that graph.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{divisors, gcd, Gaussian};

type G = Gaussian<i64>;

/// `a·x² + b·xy + c·y²`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Form {
    pub a: G,
    pub b: G,
    pub c: G,
}

/// `[[p, q], [r, s]]` acting on forms by `f ↦ f((x, y)·γᵀ)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub p: G,
    pub q: G,
    pub r: G,
    pub s: G,
}

const fn g(re: i64, im: i64) -> G {
    Gaussian { re, im }
}

impl Matrix {
    pub const T: Matrix = Matrix { p: g(1, 0), q: g(1, 0), r: g(0, 0), s: g(1, 0) };
    pub const T_INV: Matrix = Matrix { p: g(1, 0), q: g(-1, 0), r: g(0, 0), s: g(1, 0) };
    pub const T_I: Matrix = Matrix { p: g(1, 0), q: g(0, 1), r: g(0, 0), s: g(1, 0) };
    pub const T_I_INV: Matrix = Matrix { p: g(1, 0), q: g(0, -1), r: g(0, 0), s: g(1, 0) };
    pub const S: Matrix = Matrix { p: g(0, 0), q: g(-1, 0), r: g(1, 0), s: g(0, 0) };
    /// `diag(i, -i)`, acting as `z ↦ -z`.
    pub const U: Matrix = Matrix { p: g(0, 1), q: g(0, 0), r: g(0, 0), s: g(0, -1) };
    /// `T_i·U`, acting as `z ↦ -z + i`.
    pub const T_I_U: Matrix = Matrix { p: g(0, 1), q: g(1, 0), r: g(0, 0), s: g(0, -1) };

    /// The generators `T^±1, T_i^±1, S`.
    pub const GENERATORS: [Matrix; 5] = [Self::T, Self::T_INV, Self::T_I, Self::T_I_INV, Self::S];

    /// Face pairings of `F`: `x = ±1/2`, `y = 0`, `y = 1/2` and the unit hemisphere.
    pub const FACE_PAIRINGS: [Matrix; 5] = [Self::T, Self::T_INV, Self::U, Self::T_I_U, Self::S];

    pub fn det(&self) -> G {
        &(&self.p * &self.s) - &(&self.q * &self.r)
    }
}

impl Form {
    pub fn new(a: G, b: G, c: G) -> Self {
        Form { a, b, c }
    }

    /// `b² − 4ac`.
    pub fn disc(&self) -> G {
        let four = g(4, 0);
        &(&self.b * &self.b) - &(&four * &(&self.a * &self.c))
    }

    pub fn act(&self, m: &Matrix) -> Form {
        let two = g(2, 0);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (p, q, r, s) = (&m.p, &m.q, &m.r, &m.s);
        let a2 = &(&(a * &(p * p)) + &(b * &(p * r))) + &(c * &(r * r));
        let b2 = &(&(&two * &(a * &(p * q))) + &(b * &(&(p * s) + &(q * r))))
            + &(&two * &(c * &(r * s)));
        let c2 = &(&(a * &(q * q)) + &(b * &(q * s))) + &(c * &(s * s));
        Form::new(a2, b2, c2)
    }

    /// Largest absolute component among `a, b, c`.
    pub fn height(&self) -> i64 {
        [self.a, self.b, self.c]
            .iter()
            .map(|z| z.re.abs().max(z.im.abs()))
            .max()
            .unwrap()
    }

    pub fn is_primitive(&self) -> bool {
        gcd(&self.a, &self.b)
            .and_then(|ab| gcd(&ab, &self.c))
            .map(|g| g.is_unit())
            .unwrap_or(false)
    }
}

/// Principal square root of `d` as a complex float.
pub fn principal_sqrt(d: &G) -> Complex64 {
    Complex64::new(d.re as f64, d.im as f64).sqrt()
}

/// Slack allowed in the reduction test, in upper half-space coordinates.
pub const REDUCED_TOL: f64 = 1e-9;

/// Whether the geodesic of `(a, b)` with discriminant root `sd` meets `F`.
///
/// The geodesic is `m + s·v` at height `|v|·√(1 − s²)` for `s ∈ (−1, 1)`,
/// with `m = −b/2a` and `v = √d/2a`; each face of `F` cuts an interval of `s`.
pub fn meets_fundamental_domain(a: &G, b: &G, sd: Complex64) -> bool {
    let two_a = Complex64::new(2.0 * a.re as f64, 2.0 * a.im as f64);
    let m = -Complex64::new(b.re as f64, b.im as f64) / two_a;
    geodesic_meets_fundamental_domain(m, sd / two_a)
}

/// Whether the geodesic with centre `m` and half-axis `v` meets `F`.
pub fn geodesic_meets_fundamental_domain(m: Complex64, v: Complex64) -> bool {
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut clip = |alpha: f64, beta: f64, lower: f64, upper: f64| -> bool {
        if beta.abs() < 1e-300 {
            return alpha >= lower && alpha <= upper;
        }
        let (s0, s1) = ((lower - alpha) / beta, (upper - alpha) / beta);
        let (s0, s1) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        lo = lo.max(s0);
        hi = hi.min(s1);
        true
    };
    let t = REDUCED_TOL;
    if !clip(m.re, v.re, -0.5 - t, 0.5 + t) || !clip(m.im, v.im, -t, 0.5 + t) {
        return false;
    }
    // |z|² + r² along the geodesic is |m|² + |v|² + 2s⟨m, v⟩
    let base = m.norm_sqr() + v.norm_sqr();
    let slope = 2.0 * (m.re * v.re + m.im * v.im);
    if !clip(base, slope, 1.0 - t, f64::INFINITY) {
        return false;
    }
    lo <= hi + t
}

/// Bound on the height of every reduced form of discriminant `d`.
pub fn reduced_height_bound(d: &G) -> i64 {
    let nd = (d.norm() as f64).sqrt();
    // |a| ≤ √(|d|/2), |b| ≤ 2√|d|, |c| = |b² − d|/(4|a|) ≤ 5|d|/4
    (1.25 * nd).ceil() as i64 + 2
}

/// All primitive reduced forms of discriminant `d` with height ≤ `cap`, sorted.
///
/// Reference enumeration over `b`, factoring `(b² − d)/4` for `a`.
pub fn reduced_forms_by_b(d: &G, cap: i64) -> Vec<Form> {
    let sd = principal_sqrt(d);
    let nd = d.norm() as f64;
    let rb = (2.0 * nd.sqrt().sqrt() + 1.0) as i64 + 1;
    let a_norm_max = nd.sqrt() / 2.0 + 1e-6;
    let mut out = Vec::new();
    for br in -rb..=rb {
        for bi in -rb..=rb {
            let b = g(br, bi);
            let m4 = &(&b * &b) - d;
            if m4.re.rem_euclid(4) != 0 || m4.im.rem_euclid(4) != 0 {
                continue;
            }
            let m = g(m4.re / 4, m4.im / 4);
            let Ok(divs) = divisors(&m) else { continue };
            for a0 in divs {
                if a0.norm() as f64 > a_norm_max {
                    break;
                }
                for u in G::units() {
                    let a = &u * &a0;
                    if !meets_fundamental_domain(&a, &b, sd) {
                        continue;
                    }
                    let c = m.div_exact(&a).expect("a divides m");
                    let f = Form::new(a, b, c);
                    if f.height() <= cap && f.is_primitive() {
                        out.push(f);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

struct UnionFind {
    parent: Vec<u32>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            self.components -= 1;
        }
    }
}

/// Number of components of `forms` under the given moves.
pub fn count_components(forms: &[Form], moves: &[Matrix]) -> usize {
    let index: HashMap<Form, u32> = forms
        .iter()
        .enumerate()
        .map(|(k, f)| (*f, k as u32))
        .collect();
    let mut uf = UnionFind::new(forms.len());
    for (k, f) in forms.iter().enumerate() {
        for m in moves {
            if let Some(&j) = index.get(&f.act(m)) {
                uf.union(k as u32, j);
            }
        }
    }
    uf.components
}

/// Class number from the reduced forms of height ≤ `cap`.
pub fn class_number_at(d: &G, cap: i64) -> u64 {
    let forms = reduced_forms_by_b(d, cap);
    count_components(&forms, &Matrix::FACE_PAIRINGS) as u64
}

/// Class number `h(d)`, requiring agreement between `cap` and `2·cap`.
///
/// When `cap` already covers every reduced form the doubled run would see
/// the same forms and is skipped.
pub fn class_number(d: &G, height_cap: i64) -> Result<u64> {
    let h = class_number_at(d, height_cap);
    if height_cap >= reduced_height_bound(d) {
        return Ok(h);
    }
    let h2 = class_number_at(d, 2 * height_cap);
    if h != h2 {
        return Err(Error::NotConverged {
            d: d.to_string(),
            cap: height_cap as u64,
            at_cap: h,
            double: 2 * height_cap as u64,
            at_double: h2,
        });
    }
    Ok(h)
}

/// Orbit count by breadth-first search over every primitive form of height
/// ≤ `cap` under the generators `T^±1, T_i^±1, S`, without any reduction theory.
pub fn class_number_bfs(d: &G, cap: i64) -> u64 {
    let mut forms = Vec::new();
    for ar in -cap..=cap {
        for ai in -cap..=cap {
            let a = g(ar, ai);
            if a.is_zero() {
                continue;
            }
            for br in -cap..=cap {
                for bi in -cap..=cap {
                    let b = g(br, bi);
                    let num = &(&b * &b) - d;
                    let four_a = g(4 * ar, 4 * ai);
                    if let Some(c) = num.div_exact(&four_a) {
                        let f = Form::new(a, b, c);
                        if f.height() <= cap && f.is_primitive() {
                            forms.push(f);
                        }
                    }
                }
            }
        }
    }
    count_components(&forms, &Matrix::GENERATORS) as u64
}
