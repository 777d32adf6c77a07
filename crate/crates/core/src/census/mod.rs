//! The prime-geodesic census of `PSL(2, ℤ[i])`.
//!
//! Primitive hyperbolic classes are counted through discriminants `d`, the
//! fundamental solution `ε_d` of `t² − d·u² = 4` and the class number `h(d)`:
//! each `d` contributes `h(d)` classes of norm `|ε_d|^{2k}` for every `k ≥ 1`,
//! weighted by `log |ε_d|²`.

pub mod discriminant;
pub mod forms;
pub mod pell;
pub mod reduction;
pub mod stats;
pub mod trace;

pub use discriminant::{enumerate_discriminants, enumerate_discriminants_mod_sign, is_discriminant};
pub use forms::{class_number, class_number_bfs, Form, Matrix};
pub use pell::{pell_fundamental, PellUnit};
pub use reduction::ReductionTables;
pub use stats::{
    class_number_sum, error_ratio_max, sarnak_identity, second_moment_e, second_moment_with,
    ClassNumberSum, MomentMethod, SarnakIdentity,
};
pub use trace::{trace_census, trace_side_psi, TorsionTwist, TraceCensus};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::numeric::KahanSum;

type G = Gaussian<i64>;

/// One record of the census: `h` classes of norm `|ε_d|^{2k}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicClass {
    pub pell: PellUnit,
    pub k: u32,
    /// `N(P) = exp(k·log_norm)`.
    pub norm: f64,
    /// `Λ(N(P)) = log N(P₀)`.
    pub lambda_weight: f64,
    pub h: u64,
}

impl GeodesicClass {
    pub fn d(&self) -> G {
        self.pell.d
    }
}

/// Which discriminants are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DiscriminantDomain {
    /// One of `±d` (`re > 0`, or `re = 0, im > 0`).
    #[default]
    ModSign,
    /// Every `d`; each class is then seen twice, once through `d` and once through `−d`.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub domain: DiscriminantDomain,
    /// Caps the Pell search radius; below the certified radius the table is incomplete.
    pub search_limit: Option<f64>,
    /// Height cap for class numbers; `None` covers every reduced form.
    pub height_cap: Option<i64>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            domain: DiscriminantDomain::ModSign,
            search_limit: None,
            height_cap: None,
        }
    }
}

/// Census entries sorted by norm; `complete` when the search certifiably
/// covers every `|ε_d|² ≤ x_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusTable {
    pub x_max: f64,
    pub entries: Vec<GeodesicClass>,
    pub complete: bool,
}

fn sort_key(e: &GeodesicClass) -> (u64, i64, i64, i64, u32) {
    let d = e.d();
    // norms are positive, so their bit patterns order like the values
    (e.norm.to_bits(), d.norm(), d.re, d.im, e.k)
}

/// Radius of the discriminant disc certifying all `|ε_d|² ≤ x`.
pub fn discriminant_radius(x: f64) -> f64 {
    let e = x.sqrt();
    (e + 1.0 / e).powi(2)
}

/// Builds the census of all classes with `N(P) ≤ x_max`.
pub fn build_census(x_max: f64, config: &CensusConfig) -> Result<CensusTable> {
    if !(x_max > 1.0) {
        return Err(Error::Domain(format!("x_max = {x_max} must exceed 1")));
    }
    let radius = discriminant_radius(x_max);
    let ds = match config.domain {
        DiscriminantDomain::ModSign => enumerate_discriminants_mod_sign(radius),
        DiscriminantDomain::Literal => enumerate_discriminants(radius),
    };
    let units: Vec<(Option<PellUnit>, bool)> = ds
        .par_iter()
        .map(|d| fundamental_below(d, x_max, config))
        .collect();
    let complete = units.iter().all(|(_, c)| *c);
    let units: Vec<PellUnit> = units.into_iter().filter_map(|(p, _)| p).collect();
    let max_abs_d = units
        .iter()
        .map(|p| (p.d.norm() as f64).sqrt())
        .fold(0.0, f64::max);
    let tables = ReductionTables::new(max_abs_d);
    let per_d: Vec<Result<Vec<GeodesicClass>>> = units
        .par_iter()
        .map(|p| {
            let cap = config
                .height_cap
                .unwrap_or_else(|| forms::reduced_height_bound(&p.d));
            let h = tables.class_number(&p.d, cap)?;
            Ok(powers(p, h, x_max))
        })
        .collect();
    let mut entries = Vec::new();
    for r in per_d {
        entries.extend(r?);
    }
    entries.sort_by_key(sort_key);
    Ok(CensusTable {
        x_max,
        entries,
        complete,
    })
}

/// The fundamental unit of `d` if `|ε_d|² ≤ x_max`, and whether the search was certified.
fn fundamental_below(d: &G, x_max: f64, config: &CensusConfig) -> (Option<PellUnit>, bool) {
    let needed = pell::search_limit_for(d, x_max);
    let limit = config.search_limit.map_or(needed, |l| l.min(needed));
    let p = pell_fundamental(d, limit).filter(|p| p.abs_eps * p.abs_eps <= x_max);
    (p, limit >= needed)
}

fn powers(p: &PellUnit, h: u64, x_max: f64) -> Vec<GeodesicClass> {
    (1u32..)
        .map(|k| (k, (k as f64 * p.log_norm).exp()))
        .take_while(|&(_, norm)| norm <= x_max)
        .map(|(k, norm)| GeodesicClass {
            pell: *p,
            k,
            norm,
            lambda_weight: p.log_norm,
            h,
        })
        .collect()
}

fn check_covered(x: f64, census: &CensusTable) -> Result<()> {
    if !census.complete {
        return Err(Error::Incomplete(
            "a Pell search stopped below its certified radius".into(),
        ));
    }
    if x > census.x_max * (1.0 + 1e-12) {
        return Err(Error::Coverage {
            needed: x,
            x_max: census.x_max,
        });
    }
    Ok(())
}

/// `ψ(X) = Σ_{N(P) ≤ X} Λ(N(P))`.
pub fn psi(x: f64, census: &CensusTable) -> Result<f64> {
    check_covered(x, census)?;
    let mut s = KahanSum::default();
    for e in census.entries.iter().take_while(|e| e.norm <= x) {
        s.add(e.h as f64 * e.lambda_weight);
    }
    Ok(s.value())
}

/// `M(X) = Σ X^{s_j}/s_j` over the small eigenvalue exponents `s_j ∈ (1, 2]`.
pub fn main_term(x: f64, small_eigenvalues: &[f64]) -> Result<f64> {
    let mut s = KahanSum::default();
    for &sj in small_eigenvalues {
        if !(sj > 1.0 && sj <= 2.0) {
            return Err(Error::Domain(format!("s_j = {sj} outside (1, 2]")));
        }
        s.add(x.powf(sj) / sj);
    }
    Ok(s.value())
}

/// `E(X) = ψ(X) − M(X)`.
pub fn error_term(x: f64, census: &CensusTable, small_eigenvalues: &[f64]) -> Result<f64> {
    Ok(psi(x, census)? - main_term(x, small_eigenvalues)?)
}
