//! Reduced forms for many discriminants, enumerated from `a`.
//!
//! For fixed `a` the admissible `b` are the square roots of `d` modulo `4a`,
//! taken modulo `2a`; these are tabulated once per ideal `(a)`. The centre
//! `m = −b/2a` of the geodesic then runs over a translate of ℤ[i], and only the
//! centres whose shadow `m ± √d/2a` crosses the half-square `|x| ≤ 1/2,
//! 0 ≤ y ≤ 1/2` are tested for reduction.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::forms::{geodesic_meets_fundamental_domain, principal_sqrt, Form};
use crate::error::{Error, Result};
use crate::gaussian::{factor, Gaussian};

type G = Gaussian<i64>;

/// Slack of the shadow test; the exact reduction test runs afterwards.
const SHADOW_TOL: f64 = 1e-6;

/// Indexes `ℤ[i]/(w)` through the Hermite basis `(N/g, 0), (shift, g)` of `(w)`.
#[derive(Clone, Copy, Debug)]
struct ResidueIndex {
    cols: i64,
    rows: i64,
    shift: i64,
}

impl ResidueIndex {
    fn new(w: &G) -> Self {
        let (p, q) = (w.re, w.im);
        // x·q + y·p = g puts x·w + y·iw = (x·p − y·q) + g·i in (w)
        let e = q.extended_gcd(&p);
        let (g, x, y) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        let cols = w.norm() / g;
        ResidueIndex {
            cols,
            rows: g,
            shift: (x * p - y * q).rem_euclid(cols),
        }
    }

    fn len(&self) -> u32 {
        (self.cols * self.rows) as u32
    }

    fn index(&self, z: &G) -> u32 {
        let k = z.im.div_euclid(self.rows);
        let y = z.im - k * self.rows;
        let x = (z.re - k * self.shift).rem_euclid(self.cols);
        (y * self.cols + x) as u32
    }

    fn representative(&self, index: u32) -> G {
        let k = index as i64;
        G::new(k % self.cols, k / self.cols)
    }
}

/// Square roots of every residue modulo `4a`, as residues modulo `2a`.
struct RootTable {
    a: G,
    mod4a: ResidueIndex,
    mod2a: ResidueIndex,
    keys: Vec<u32>,
    roots: Vec<u32>,
}

impl RootTable {
    fn new(a: G) -> Self {
        let mod4a = ResidueIndex::new(&(&G::new(4, 0) * &a));
        let mod2a = ResidueIndex::new(&(&G::new(2, 0) * &a));
        let mut pairs: Vec<(u32, u32)> = (0..mod2a.len())
            .map(|r| {
                let b = mod2a.representative(r);
                (mod4a.index(&(&b * &b)), r)
            })
            .collect();
        pairs.sort_unstable();
        let (keys, roots) = pairs.into_iter().unzip();
        RootTable {
            a,
            mod4a,
            mod2a,
            keys,
            roots,
        }
    }

    fn roots_of(&self, d: &G) -> impl Iterator<Item = G> + '_ {
        let key = self.mod4a.index(d);
        let lo = self.keys.partition_point(|&k| k < key);
        let hi = self.keys.partition_point(|&k| k <= key);
        self.roots[lo..hi].iter().map(|&r| self.mod2a.representative(r))
    }
}

/// Root tables for every canonical `a` with `N(a) ≤ max_abs_d/2`.
pub struct ReductionTables {
    max_abs_d: f64,
    tables: Vec<RootTable>,
}

fn a_norm_limit(abs_d: f64) -> f64 {
    abs_d / 2.0 * (1.0 + 1e-9) + 1e-6
}

impl ReductionTables {
    pub fn new(max_abs_d: f64) -> Self {
        let lim = a_norm_limit(max_abs_d);
        let r = lim.sqrt() as i64 + 1;
        let mut canon: Vec<G> = (1..=r)
            .flat_map(|x| (0..=r).map(move |y| G::new(x, y)))
            .filter(|a| (a.norm() as f64) <= lim)
            .collect();
        canon.sort_by_key(|a| (a.norm(), a.re));
        let tables = canon.into_par_iter().map(RootTable::new).collect();
        ReductionTables { max_abs_d, tables }
    }

    pub fn max_abs_d(&self) -> f64 {
        self.max_abs_d
    }

    /// All primitive reduced forms of discriminant `d` with height ≤ `cap`, sorted.
    pub fn reduced_forms(&self, d: &G, cap: i64) -> Result<Vec<Form>> {
        let abs_d = (d.norm() as f64).sqrt();
        if abs_d > self.max_abs_d * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "|d| = {abs_d} exceeds the tabulated {}",
                self.max_abs_d
            )));
        }
        let lim = a_norm_limit(abs_d);
        let ctx = Disc::new(d)?;
        let mut out = Vec::new();
        for t in self.tables.iter().take_while(|t| (t.a.norm() as f64) <= lim) {
            for b0 in t.roots_of(d) {
                for u in G::units() {
                    let a = &u * &t.a;
                    shadow_candidates(&a, &b0, &ctx, cap, &mut out);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn class_number(&self, d: &G, cap: i64) -> Result<u64> {
        Ok(count_components(&self.reduced_forms(d, cap)?) as u64)
    }
}

/// A discriminant with its square root and the primes whose square divides it.
struct Disc {
    d: G,
    sd: Complex64,
    /// A common prime factor of `a, b, c` has its square dividing `d`.
    square_primes: Vec<G>,
}

impl Disc {
    fn new(d: &G) -> Result<Self> {
        let square_primes = factor(d)?
            .factors
            .into_iter()
            .filter(|(_, e)| *e >= 2)
            .map(|(p, _)| p)
            .collect();
        Ok(Disc {
            d: *d,
            sd: principal_sqrt(d),
            square_primes,
        })
    }

    fn is_primitive(&self, f: &Form) -> bool {
        !self
            .square_primes
            .iter()
            .any(|p| p.divides(&f.a) && p.divides(&f.b) && p.divides(&f.c))
    }
}

fn shadow_candidates(a: &G, b0: &G, ctx: &Disc, cap: i64, out: &mut Vec<Form>) {
    let two_a = Complex64::new(2.0 * a.re as f64, 2.0 * a.im as f64);
    let v = ctx.sd / two_a;
    let m0 = -Complex64::new(b0.re as f64, b0.im as f64) / two_a;
    // c = (b² − d)/4a = (b² − d)·conj(a)/(4·N(a))
    let (a_conj, four_na) = (a.conj(), 4 * a.norm());
    let two_a_int = &G::new(2, 0) * a;
    let t = SHADOW_TOL;
    let vy = v.im.abs();
    let j_lo = (-vy - t - m0.im).ceil() as i64;
    let j_hi = (0.5 + vy + t - m0.im).floor() as i64;
    for j in j_lo..=j_hi {
        let y = m0.im + j as f64;
        // s with y − s·v.im ∈ [0, 1/2]
        let (s_lo, s_hi) = if vy < 1e-12 {
            if y < -t || y > 0.5 + t {
                continue;
            }
            (-1.0, 1.0)
        } else {
            let (s1, s2) = ((y + t) / v.im, (y - 0.5 - t) / v.im);
            let (s1, s2) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
            (s1.max(-1.0), s2.min(1.0))
        };
        if s_lo > s_hi {
            continue;
        }
        let (x1, x2) = (s_lo * v.re, s_hi * v.re);
        let i_lo = (x1.min(x2) - 0.5 - t - m0.re).ceil() as i64;
        let i_hi = (x1.max(x2) + 0.5 + t - m0.re).floor() as i64;
        for i in i_lo..=i_hi {
            let m = m0 + Complex64::new(i as f64, j as f64);
            if !geodesic_meets_fundamental_domain(m, v) {
                continue;
            }
            let b = b0 + &(&two_a_int * &G::new(-i, -j));
            let num = &(&(&b * &b) - &ctx.d) * &a_conj;
            debug_assert!(num.re % four_na == 0 && num.im % four_na == 0);
            let f = Form::new(*a, b, G::new(num.re / four_na, num.im / four_na));
            if f.height() <= cap && ctx.is_primitive(&f) {
                out.push(f);
            }
        }
    }
}

/// `T`, `U`, `T_i·U` and `S` in coefficient form; `T⁻¹` edges are `T` edges
/// seen from the other end and the rest are involutions on forms.
fn neighbours(f: &Form) -> [Form; 4] {
    let (a, b, c) = (f.a, f.b, f.c);
    [
        Form::new(a, G::new(b.re + 2 * a.re, b.im + 2 * a.im), &(&a + &b) + &c),
        Form::new(-a, b, -c),
        Form::new(
            -a,
            G::new(b.re - 2 * a.im, b.im + 2 * a.re),
            G::new(a.re + b.im - c.re, a.im - b.re - c.im),
        ),
        Form::new(c, -b, a),
    ]
}

/// Components of reduced forms under the face pairings of `F`.
pub fn count_components(forms: &[Form]) -> usize {
    let index: FxHashMap<Form, u32> = forms
        .iter()
        .enumerate()
        .map(|(k, f)| (*f, k as u32))
        .collect();
    let mut parent: Vec<u32> = (0..forms.len() as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[parent[x as usize] as usize];
            parent[x as usize] = p;
            x = p;
        }
        x
    }
    let mut components = forms.len();
    for (k, f) in forms.iter().enumerate() {
        for nb in neighbours(f) {
            if let Some(&j) = index.get(&nb) {
                let (ra, rb) = (find(&mut parent, k as u32), find(&mut parent, j));
                if ra != rb {
                    parent[ra.max(rb) as usize] = ra.min(rb);
                    components -= 1;
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::super::forms::{reduced_forms_by_b, Matrix};
    use super::*;

    #[test]
    fn residue_index_is_a_bijection() {
        for w in [G::new(3, 0), G::new(2, 2), G::new(4, 6), G::new(-5, 3), G::new(0, 8), G::new(12, 4)] {
            let ix = ResidueIndex::new(&w);
            assert_eq!(ix.len() as i64, w.norm());
            let mut seen = vec![false; ix.len() as usize];
            for re in -20..20 {
                for im in -20..20 {
                    let z = G::new(re, im);
                    let k = ix.index(&z);
                    let r = ix.representative(k);
                    assert!(w.divides(&(&z - &r)));
                    seen[k as usize] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn neighbours_match_matrix_action() {
        let f = Form::new(G::new(2, 1), G::new(3, -1), G::new(-1, 4));
        let m = [Matrix::T, Matrix::U, Matrix::T_I_U, Matrix::S];
        for (nb, m) in neighbours(&f).iter().zip(m.iter()) {
            assert_eq!(*nb, f.act(m));
        }
    }

    #[test]
    fn agrees_with_enumeration_by_b() {
        let tables = ReductionTables::new(60.0);
        for d in super::super::enumerate_discriminants(60.0).into_iter().step_by(7) {
            let fast = tables.reduced_forms(&d, i64::MAX).unwrap();
            assert_eq!(fast, reduced_forms_by_b(&d, i64::MAX), "d = {d}");
        }
    }
}
