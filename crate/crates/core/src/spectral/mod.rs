//! Spectral data of the Picard group and the test functions of the explicit
//! formula and of the second-moment argument.

pub mod test_functions;
pub mod transforms;

pub use test_functions::{
    bump, bump_fourier, fourier_inverse_h, g_s, h_s, lemma_bound, lemma_kernel_integral,
    mollified_g, mollified_h, smooth_g_plus, Sign,
};
pub use transforms::{
    bessel_h, gaussian_weight, i_transform, j_star, k_bessel_contour, k_bessel_direct,
    k_bessel_imag_order, kuznetsov_h, kuznetsov_h_residual,
};

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Maass cusp form eigenvalue `λ = 1 + r²` with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralDatum {
    pub r: f64,
    pub multiplicity: u32,
}

/// Parameters shared by the test functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionParams {
    /// `log X`.
    pub s: f64,
    pub delta: f64,
    pub t: f64,
    /// Width of the Gaussian weight in the transforms.
    pub m: f64,
    pub v: f64,
    pub window: f64,
    /// `2α = log X + i/T`.
    pub alpha: Complex64,
}

impl TestFunctionParams {
    pub fn new(x: f64, delta: f64, t: f64, m: f64, v: f64, window: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.25) {
            return Err(Error::Domain(format!("δ = {delta} outside (0, 1/4)")));
        }
        if !(x > 1.0 && t > 0.0 && m > 0.0) {
            return Err(Error::Domain("need X > 1, T > 0, M > 0".into()));
        }
        if window > v {
            return Err(Error::Domain(format!("Δ = {window} exceeds V = {v}")));
        }
        Ok(TestFunctionParams {
            s: x.ln(),
            delta,
            t,
            m,
            v,
            window,
            alpha: Complex64::new(x.ln(), 1.0 / t) / 2.0,
        })
    }
}

fn parse_real(field: &str, line: usize) -> Result<f64> {
    let ok = !field.is_empty()
        && field
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    let v: f64 = if ok { field.parse().ok() } else { None }.ok_or_else(|| Error::Parse {
        line,
        msg: format!("not a decimal real: {field:?}"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("not finite: {field:?}"),
        });
    }
    Ok(v)
}

/// Parses `r,multiplicity` lines; `#` starts a comment and blank lines are skipped.
pub fn parse_spectrum(text: &str) -> Result<Vec<SpectralDatum>> {
    let mut out: Vec<SpectralDatum> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split(',').map(str::trim);
        let r = parse_real(fields.next().unwrap_or(""), line)?;
        let multiplicity = match fields.next() {
            None => 1,
            Some(m) => m.parse::<u32>().ok().filter(|&m| m > 0).ok_or_else(|| Error::Parse {
                line,
                msg: format!("multiplicity must be a positive integer: {m:?}"),
            })?,
        };
        if fields.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "expected r[,multiplicity]".into(),
            });
        }
        if r <= 0.0 {
            return Err(Error::Parse {
                line,
                msg: format!("r = {r} must be positive"),
            });
        }
        if let Some(prev) = out.last() {
            if r == prev.r {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate r = {r}"),
                });
            }
            if r < prev.r {
                return Err(Error::Parse {
                    line,
                    msg: format!("r = {r} below the previous {}", prev.r),
                });
            }
        }
        out.push(SpectralDatum { r, multiplicity });
    }
    Ok(out)
}

pub fn load_spectrum(path: &Path) -> Result<Vec<SpectralDatum>> {
    parse_spectrum(&std::fs::read_to_string(path)?)
}

/// Unit intervals `[T, T + 1]` holding more than `c_w·T²` eigenvalues.
pub fn weyl_warnings(spectrum: &[SpectralDatum], c_w: f64) -> Vec<String> {
    let Some(last) = spectrum.last() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for t in 1..=last.r.ceil() as u64 {
        let t = t as f64;
        let n: u64 = spectrum
            .iter()
            .filter(|d| d.r >= t && d.r <= t + 1.0)
            .map(|d| d.multiplicity as u64)
            .sum();
        if n as f64 > c_w * t * t {
            out.push(format!("{n} eigenvalues in [{t}, {}] exceed {c_w}·T²", t + 1.0));
        }
    }
    out
}

/// `S(T, X) = Σ_{0 < r_j ≤ T} X^{i r_j}`.
pub fn spectral_exponential_sum(t: f64, x: f64, spectrum: &[SpectralDatum]) -> Complex64 {
    let l = x.ln();
    spectrum
        .iter()
        .take_while(|d| d.r <= t)
        .map(|d| d.multiplicity as f64 * Complex64::from_polar(1.0, d.r * l))
        .sum()
}

/// `2 Re Σ_{r_j ≤ T} X^{1 + i r_j}/(1 + i r_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplicitFormula {
    pub value: f64,
    /// `T > √X`, beyond the range where the remainder `O(X² log X/T)` holds.
    pub beyond_validity: bool,
}

pub fn explicit_formula_error(x: f64, t: f64, spectrum: &[SpectralDatum]) -> Result<ExplicitFormula> {
    if !(t >= 1.0) {
        return Err(Error::Domain(format!("T = {t} below 1")));
    }
    let l = x.ln();
    let value = spectrum
        .iter()
        .take_while(|d| d.r <= t)
        .map(|d| {
            let (c, s) = ((d.r * l).cos(), (d.r * l).sin());
            d.multiplicity as f64 * 2.0 * x * (c + d.r * s) / (1.0 + d.r * d.r)
        })
        .sum();
    Ok(ExplicitFormula {
        value,
        beyond_validity: t > x.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert!(parse_spectrum("").unwrap().is_empty());
        let s = parse_spectrum("# r,mult\n6.0,1\n\n8.55 # comment\n11.1,2\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], SpectralDatum { r: 6.0, multiplicity: 1 });
        assert_eq!(s[1].multiplicity, 1);
        assert_eq!(s[2].multiplicity, 2);
        for (text, line) in [
            ("6.0\n6.0\n", 2),
            ("6.0\n5.0\n", 2),
            ("nan\n", 1),
            ("inf\n", 1),
            ("-1\n", 1),
            ("0\n", 1),
            ("6.0,0\n", 1),
            ("1.0\n2.0,x\n", 2),
            ("0x10\n", 1),
        ] {
            match parse_spectrum(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn exponential_sum() {
        let s = parse_spectrum("6.0\n8.5,2\n12.0\n").unwrap();
        assert_eq!(spectral_exponential_sum(10.0, 1.0, &s), Complex64::new(3.0, 0.0));
        assert_eq!(spectral_exponential_sum(10.0, 7.0, &[]), Complex64::new(0.0, 0.0));
        for (t, x) in [(7.0, 3.3), (20.0, 150.0), (9.0, 2.0)] {
            let n: u32 = s.iter().filter(|d| d.r <= t).map(|d| d.multiplicity).sum();
            assert!(spectral_exponential_sum(t, x, &s).norm() <= n as f64 + 1e-12);
        }
    }

    #[test]
    fn explicit_formula_single_term() {
        let s = parse_spectrum("6.0\n").unwrap();
        let (x, r) = (50.0f64, 6.0f64);
        let z = Complex64::new(1.0, r);
        let expect = 2.0 * (Complex64::new(x, 0.0).powc(z) / z).re;
        let got = explicit_formula_error(x, 10.0, &s).unwrap();
        assert!((got.value - expect).abs() < 1e-9 * expect.abs());
        assert!(got.beyond_validity);
        assert_eq!(explicit_formula_error(x, 5.0, &s).unwrap().value, 0.0);
        assert!(explicit_formula_error(x, 0.5, &s).is_err());
    }
}
