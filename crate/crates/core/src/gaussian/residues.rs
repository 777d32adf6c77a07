
use super::{factor, gcd, Gaussian, Scalar};
use crate::error::{Error, Result};

/// Canonical representatives of `(ℤ[i]/(c))^×`, sorted by `(re, im)`.
///
/// A unit modulus gives the empty sequence.
pub fn unit_residues<T: Scalar>(c: &Gaussian<T>) -> Result<Vec<Gaussian<T>>> {
    if c.is_zero() {
        return Err(Error::Domain("modulus is zero".into()));
    }
    if c.is_unit() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for z in residue_box(c) {
        if z.reduce_mod(c) == z && gcd(&z, c)?.is_unit() {
            out.push(z);
        }
    }
    out.sort();
    Ok(out)
}

/// All lattice points of the bounding box of the fundamental parallelogram of `c`.
fn residue_box<T: Scalar>(c: &Gaussian<T>) -> impl Iterator<Item = Gaussian<T>> {
    let ic = c.mul_i();
    let corners = [Gaussian::zero(), c.clone(), ic.clone(), c + &ic];
    let lo_re = corners.iter().map(|z| z.re.clone()).min().unwrap();
    let hi_re = corners.iter().map(|z| z.re.clone()).max().unwrap();
    let lo_im = corners.iter().map(|z| z.im.clone()).min().unwrap();
    let hi_im = corners.iter().map(|z| z.im.clone()).max().unwrap();
    let mut re = lo_re;
    let mut im = lo_im.clone();
    std::iter::from_fn(move || {
        if re > hi_re {
            return None;
        }
        let z = Gaussian::new(re.clone(), im.clone());
        im = im.clone() + T::one();
        if im > hi_im {
            im = lo_im.clone();
            re = re.clone() + T::one();
        }
        Some(z)
    })
}

/// Euler totient of the ideal `(c)`: `∏ N(π)^{e-1}(N(π) - 1)`; 1 for a unit.
pub fn totient<T: Scalar>(c: &Gaussian<T>) -> Result<u64> {
    let f = factor(c)?;
    Ok(f.factors
        .iter()
        .map(|(p, e)| {
            let n = p.norm().to_u64().expect("norm fits");
            n.pow(e - 1) * (n - 1)
        })
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = Gaussian<i64>;

    fn g(re: i64, im: i64) -> Z {
        Z::new(re, im)
    }

    #[test]
    fn examples() {
        // the class of 1 modulo 1+i is represented by i in the parallelogram
        assert_eq!(unit_residues(&g(1, 1)).unwrap(), vec![g(0, 1)]);
        let r = unit_residues(&g(2, 0)).unwrap();
        assert_eq!(r.len(), 2);
        for a in &r {
            assert!(gcd(a, &g(2, 0)).unwrap().is_unit());
        }
        for u in Z::units() {
            assert!(unit_residues(&u).unwrap().is_empty());
            assert_eq!(totient(&u).unwrap(), 1);
        }
        assert!(unit_residues(&g(0, 0)).is_err());
    }

    #[test]
    fn count_is_totient_and_multiplicative() {
        let moduli: Vec<Z> = (-9..=9)
            .flat_map(|x| (-9..=9).map(move |y| g(x, y)))
            .filter(|c| !c.is_zero() && !c.is_unit())
            .collect();
        for c in &moduli {
            let r = unit_residues(c).unwrap();
            assert_eq!(r.len() as u64, totient(c).unwrap(), "{c}");
            assert!(r.windows(2).all(|w| w[0] < w[1]));
        }
        for a in &moduli {
            for b in &moduli {
                if a.norm() * b.norm() <= 400 && gcd(a, b).unwrap().is_unit() {
                    let ab = a * b;
                    assert_eq!(
                        unit_residues(&ab).unwrap().len(),
                        unit_residues(a).unwrap().len() * unit_residues(b).unwrap().len()
                    );
                }
            }
        }
    }
}
