use crate::gaussian::{sqrt_exact, Gaussian};

type G = Gaussian<i64>;

/// Squares of Gaussian integers modulo 4, as residues in `[0, 4)²`.
fn squares_mod_4() -> [[bool; 4]; 4] {
    let mut t = [[false; 4]; 4];
    for x in 0..4 {
        for y in 0..4 {
            let s = &G::new(x, y) * &G::new(x, y);
            t[s.re.rem_euclid(4) as usize][s.im.rem_euclid(4) as usize] = true;
        }
    }
    t
}

/// Whether `m ≡ y² (mod 4)` for some Gaussian `y`.
pub fn is_square_mod_4(m: &G) -> bool {
    // the 16-entry table is tiny; rebuilding it is cheaper than a lazy static
    squares_mod_4()[m.re.rem_euclid(4) as usize][m.im.rem_euclid(4) as usize]
}

/// `m ≡ y² (mod 4)` and `m` is not a perfect square.
pub fn is_discriminant(m: &G) -> bool {
    is_square_mod_4(m) && sqrt_exact(m).is_none()
}

/// All discriminants with `|d| ≤ bound`, ordered by `(norm, re, im)`.
pub fn enumerate_discriminants(bound: f64) -> Vec<G> {
    enumerate(bound, |_| true)
}

/// Discriminants with `|d| ≤ bound` taken modulo sign (`re > 0`, or `re = 0, im > 0`).
pub fn enumerate_discriminants_mod_sign(bound: f64) -> Vec<G> {
    enumerate(bound, |d| d.is_half_plane())
}

fn enumerate(bound: f64, keep: impl Fn(&G) -> bool) -> Vec<G> {
    if !(bound > 0.0) {
        return Vec::new();
    }
    let r = bound.floor() as i64;
    let b2 = bound * bound;
    let table = squares_mod_4();
    let mut out = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let d = G::new(re, im);
            if (d.norm() as f64) > b2 || !keep(&d) {
                continue;
            }
            if table[re.rem_euclid(4) as usize][im.rem_euclid(4) as usize]
                && sqrt_exact(&d).is_none()
            {
                out.push(d);
            }
        }
    }
    out.sort_by_key(|d| (d.norm(), d.re, d.im));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(is_discriminant(&G::new(5, 0)));
        assert!(!is_discriminant(&G::new(4, 0)));
        assert!(!is_discriminant(&G::new(2, 0)));
        assert!(!is_discriminant(&G::new(0, 0)));
        assert!(!is_discriminant(&G::new(1, 0)));
        let ds = enumerate_discriminants(5.0);
        for d in [G::new(5, 0), G::new(-3, 0), G::new(3, 0)] {
            assert!(ds.contains(&d));
        }
        for d in [G::new(4, 0), G::new(0, 0), G::new(1, 0)] {
            assert!(!ds.contains(&d));
        }
        assert!(enumerate_discriminants(0.0).is_empty());
        let counts: Vec<usize> = [10.0, 20.0, 40.0]
            .iter()
            .map(|&b| enumerate_discriminants(b).len())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn square_table_matches_brute_force() {
        // y ranges over a full residue system mod 4 several times over
        for re in -8..8 {
            for im in -8..8 {
                let m = G::new(re, im);
                let brute = (-4..4).any(|x| {
                    (-4..4).any(|y| {
                        let s = &G::new(x, y) * &G::new(x, y);
                        (s.re - re).rem_euclid(4) == 0 && (s.im - im).rem_euclid(4) == 0
                    })
                });
                assert_eq!(is_square_mod_4(&m), brute);
            }
        }
    }

    #[test]
    fn sign_classes_split_evenly() {
        let all = enumerate_discriminants(30.0);
        let half = enumerate_discriminants_mod_sign(30.0);
        assert_eq!(all.len(), 2 * half.len());
        for d in &half {
            assert!(all.contains(&-*d));
        }
    }
}
