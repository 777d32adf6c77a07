//! Constants measured once and frozen; later runs must not exceed them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Golden {
    /// Largest Weil ratio over the scan box.
    pub weil_max_ratio: f64,
    pub weil_scan_norm_bound: i64,
    /// `gcd_average(4, 6, x)/#{N(c) ≤ x} ≤ C·x^{0.1}` for `x ≤ 10⁵`.
    pub gcd_average_c: f64,
    pub class_number_d5: u64,
    /// Smallest `|ε_d|²` over all discriminants.
    pub smallest_class_norm: f64,
    /// `|E(X)| ≤ C·X^{5/3}` on the census grid.
    pub sarnak_c: f64,
    /// `g_− ≤ g_s + Cδe^x` and `g_s ≤ g_+ + Cδe^x`.
    pub sandwich_c: f64,
    /// Kernel integral over `(V³/Δ)u(r₁)u(r₂)u(|r₁| − |r₂|)`.
    pub lemma_c: f64,
    /// `|h(r) − X^{ir}e^{−r/T}| ≤ C·e^{−πr}` on `r ∈ [1, 30]`, `X = 100`, `T = 10`.
    pub kuznetsov_c: f64,
    /// `|q̂_δ(r)| ≤ C_k·(δ|r|)^{−k}` for `δ|r| ≥ 1`.
    pub qhat_c2: f64,
    pub qhat_c4: f64,
    /// Second moment over `V^{18/5}Δ^{−2/5}(log V)^{2/5}`.
    pub moment_c: f64,
    /// Explicit-formula residual over `X² log X/T`; unset until fitted on spectral data.
    pub explicit_formula_c: Option<f64>,
}

const EMBEDDED: &str = include_str!("../golden.json");

impl Golden {
    pub fn embedded() -> Golden {
        serde_json::from_str(EMBEDDED).expect("embedded golden file parses")
    }

    pub fn load(path: &Path) -> Result<Golden> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_parses() {
        let g = Golden::embedded();
        assert_eq!(g.class_number_d5, 2);
        assert!(g.explicit_formula_c.is_none());
    }
}
