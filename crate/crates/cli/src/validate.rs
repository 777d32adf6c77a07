//! The invariant suite behind `picard validate`.
//!
//! Every check reports a measured value against a bound; the report is
//! deterministic and does not depend on the thread count.

use std::f64::consts::PI;

use picard::census::forms::reduced_height_bound;
use picard::census::pell::search_limit_for;
use picard::census::{
    build_census, class_number, class_number_bfs, error_ratio_max, pell_fundamental, psi,
    second_moment_with, trace_census, CensusConfig, CensusTable, MomentMethod,
};
use picard::export::Cell;
use picard::gaussian::{factor, inv_mod, totient, unit_residues};
use picard::golden::Golden;
use picard::kloosterman::{canonical_moduli, gcd_average, kloosterman, weil_scan, weil_set, Strategy};
use picard::spectral::{
    bump_fourier, fourier_inverse_h, g_s, i_transform, kuznetsov_h_residual, lemma_bound,
    lemma_kernel_integral, mollified_g, Sign,
};
use picard::Gaussian;

use crate::Outcome;

type G = Gaussian<i64>;

pub const HEADER: [&str; 5] = ["check", "value", "relation", "bound", "pass"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
}

impl Check {
    fn new(name: &'static str, value: f64, relation: Relation, bound: f64) -> Check {
        Check {
            name,
            value,
            relation,
            bound,
        }
    }

    pub fn pass(&self) -> bool {
        match self.relation {
            Relation::AtMost => self.value <= self.bound,
            Relation::AtLeast => self.value >= self.bound,
            Relation::Equal => self.value == self.bound,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass()).count()
    }

    pub fn rows(&self) -> Vec<Vec<Cell>> {
        self.checks
            .iter()
            .map(|c| {
                let rel = match c.relation {
                    Relation::AtMost => "<=",
                    Relation::AtLeast => ">=",
                    Relation::Equal => "==",
                };
                vec![
                    c.name.into(),
                    c.value.into(),
                    rel.into(),
                    c.bound.into(),
                    (if c.pass() { "yes" } else { "no" }).into(),
                ]
            })
            .collect()
    }
}

/// The seven `m, n` values of the exactness checks.
pub const EXACTNESS_SET: [(i64, i64); 7] = [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (3, 0), (0, 0)];

fn gaussian_checks(out: &mut Vec<Check>) -> Outcome<()> {
    let mut bad = 0u64;
    for re in -45i64..=45 {
        for im in -45i64..=45 {
            let z = G::new(re, im);
            if z.is_zero() || z.norm() > 2000 {
                continue;
            }
            if factor(&z)?.product() != z {
                bad += 1;
            }
        }
    }
    out.push(Check::new("factor_round_trip_failures", bad as f64, Relation::Equal, 0.0));
    let mut bad = 0u64;
    for c in canonical_moduli(200) {
        for a in unit_residues(&c)? {
            let b = inv_mod(&a, &c)?;
            if !c.divides(&(&(&a * &b) - &G::one())) {
                bad += 1;
            }
        }
    }
    out.push(Check::new("inv_mod_failures", bad as f64, Relation::Equal, 0.0));
    Ok(())
}

fn kloosterman_checks(out: &mut Vec<Check>, golden: &Golden) -> Outcome<()> {
    let set: Vec<G> = EXACTNESS_SET.iter().map(|&(a, b)| G::new(a, b)).collect();
    let (mut agree, mut imag, mut sym, mut tot) = (0f64, 0f64, 0f64, 0u64);
    for c in canonical_moduli(200) {
        for m in &set {
            for n in &set {
                let a = kloosterman(m, n, &c, Strategy::Naive)?;
                let b = kloosterman(m, n, &c, Strategy::Factored)?;
                let s = kloosterman(n, m, &c, Strategy::Factored)?;
                let terms = a.terms.max(1) as f64;
                agree = agree.max((a.value - b.value).abs() / terms);
                imag = imag.max(a.imag_residual.max(b.imag_residual) / terms);
                sym = sym.max((b.value - s.value).abs() / terms);
            }
        }
        let z = kloosterman(&G::zero(), &G::zero(), &c, Strategy::Naive)?;
        if z.value != totient(&c)? as f64 {
            tot += 1;
        }
    }
    out.push(Check::new("kloosterman_strategy_gap_per_term", agree, Relation::AtMost, 1e-9));
    out.push(Check::new("kloosterman_imag_per_term", imag, Relation::AtMost, 1e-10));
    out.push(Check::new("kloosterman_symmetry_gap_per_term", sym, Relation::AtMost, 1e-10));
    out.push(Check::new("kloosterman_totient_failures", tot as f64, Relation::Equal, 0.0));
    let scan = weil_scan(golden.weil_scan_norm_bound, &weil_set())?;
    out.push(Check::new("weil_max_ratio", scan.max_ratio, Relation::AtMost, golden.weil_max_ratio));
    out.push(Check::new(
        "weil_max_ratio_drift",
        (scan.max_ratio - golden.weil_max_ratio).abs(),
        Relation::AtMost,
        1e-9,
    ));
    let mut c = 0f64;
    for x in [1e3, 1e4] {
        let a = gcd_average(&G::new(4, 0), &G::new(6, 0), x)?;
        c = c.max(a.ratio() / x.powf(0.1));
    }
    out.push(Check::new("gcd_average_constant", c, Relation::AtMost, golden.gcd_average_c));
    Ok(())
}

fn census_checks(out: &mut Vec<Check>, x: f64, golden: &Golden) -> Outcome<CensusTable> {
    let census = build_census(x, &CensusConfig::default())?;
    out.push(Check::new("census_complete", census.complete as u8 as f64, Relation::Equal, 1.0));
    let mut bad = 0u64;
    for e in &census.entries {
        let p = &e.pell;
        if &(&p.t0 * &p.t0) - &(&p.d * &(&p.u0 * &p.u0)) != G::new(4, 0) {
            bad += 1;
        }
    }
    out.push(Check::new("pell_exactness_failures", bad as f64, Relation::Equal, 0.0));
    let trace = trace_census(x)?;
    let mismatched = census.entries.len().abs_diff(trace.entries.len())
        + census
            .entries
            .iter()
            .zip(&trace.entries)
            .filter(|(a, b)| {
                !(a.d() == b.d()
                    && a.k == b.k
                    && a.h == b.h
                    && a.pell.t0 == b.pell.t0
                    && a.pell.u0 == b.pell.u0
                    && a.norm == b.norm
                    && a.lambda_weight == b.lambda_weight)
            })
            .count();
    out.push(Check::new("census_trace_mismatches", mismatched as f64, Relation::Equal, 0.0));
    let mut unstable = 0u64;
    for e in census.entries.iter().filter(|e| e.k == 1 && e.d().norm() <= 900) {
        let d = e.d();
        let lim = search_limit_for(&d, x);
        let twice = pell_fundamental(&d, 2.0 * lim);
        if twice.map(|p| p.abs_eps) != Some(e.pell.abs_eps) {
            unstable += 1;
        }
        let cap = reduced_height_bound(&d);
        if class_number(&d, cap)? != class_number(&d, 2 * cap)? || class_number(&d, cap)? != e.h {
            unstable += 1;
        }
    }
    out.push(Check::new("pell_class_number_instabilities", unstable as f64, Relation::Equal, 0.0));
    let mut bfs = 0u64;
    for e in census.entries.iter().filter(|e| e.k == 1 && e.d().norm() <= 100) {
        if class_number_bfs(&e.d(), 8) != e.h {
            bfs += 1;
        }
    }
    out.push(Check::new("class_number_bfs_disagreements", bfs as f64, Relation::Equal, 0.0));
    let smallest = census.entries.first().map_or(f64::INFINITY, |e| e.norm);
    out.push(Check::new("smallest_class_norm", smallest, Relation::Equal, golden.smallest_class_norm));
    out.push(Check::new("psi_over_half_x_squared", psi(x, &census)? / (x * x / 2.0), Relation::AtLeast, 0.8));
    out.push(Check::new("psi_over_half_x_squared_upper", psi(x, &census)? / (x * x / 2.0), Relation::AtMost, 1.2));
    let mut grid = Vec::new();
    for e in census.entries.iter().filter(|e| e.norm >= 10.0) {
        grid.push(e.norm);
        grid.push(e.norm * (1.0 - 1e-12));
    }
    let (c, _) = error_ratio_max(&grid, &census, &[2.0], 5.0 / 3.0)?;
    out.push(Check::new("error_over_x_five_thirds", c, Relation::AtMost, golden.sarnak_c));
    Ok(census)
}

fn moment_checks(out: &mut Vec<Check>) -> Outcome<()> {
    let empty = CensusTable {
        x_max: 1e4,
        entries: Vec::new(),
        complete: true,
    };
    let mut gap = 0f64;
    for (v, d) in [(1000.0, 100.0), (3000.0, 2000.0), (50.0, 7.5)] {
        let a = second_moment_with(v, d, &empty, &[2.0], MomentMethod::Exact)?;
        let b = second_moment_with(v, d, &empty, &[2.0], MomentMethod::Quadrature)?;
        gap = gap.max((a - b).abs() / a.abs());
    }
    out.push(Check::new("second_moment_exact_vs_quadrature", gap, Relation::AtMost, 1e-8));
    Ok(())
}

fn spectral_checks(out: &mut Vec<Check>, golden: &Golden) -> Outcome<()> {
    let mut gap = 0f64;
    for s in [1.0, 2.0, 5.0f64] {
        for x in [0.5, s / 2.0, s - 0.1] {
            gap = gap.max((fourier_inverse_h(s, x)? - g_s(x, s)).abs());
        }
    }
    out.push(Check::new("fourier_pair_gap", gap, Relation::AtMost, 1e-6));
    let mut c = f64::NEG_INFINITY;
    for s in [1.0, 2.0, 5.0f64] {
        for delta in [0.05, 0.1, 0.2] {
            for k in 0..=20 {
                let x = s * k as f64 / 20.0;
                let g = g_s(x, s);
                let scale = delta * x.exp();
                c = c
                    .max((mollified_g(x, s, delta, Sign::Minus)? - g) / scale)
                    .max((g - mollified_g(x, s, delta, Sign::Plus)?) / scale);
            }
        }
    }
    out.push(Check::new("sandwich_constant", c, Relation::AtMost, golden.sandwich_c));
    let mut c = 0f64;
    for (v, w) in [(1e3, 1e2), (1e4, 1e3)] {
        for r1 in [0.0, 1.0, 5.0, 20.0] {
            for r2 in [0.0, 1.0, 5.0, 20.0] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let i = lemma_kernel_integral(r1, r2, v, w, sign, 0.1)?;
                    c = c.max(i.abs() / lemma_bound(r1, r2, v, w));
                }
            }
        }
    }
    out.push(Check::new("lemma_kernel_constant", c, Relation::AtMost, golden.lemma_c));
    let mut c = 0f64;
    for k in 0..=290 {
        let r = 1.0 + k as f64 * 0.1;
        c = c.max(kuznetsov_h_residual(r, 100.0, 10.0)?.norm() / (-PI * r).exp());
    }
    out.push(Check::new("kuznetsov_residual_constant", c, Relation::AtMost, golden.kuznetsov_c));
    let (mut c2, mut c4) = (0f64, 0f64);
    for k in 0..=400 {
        let w = 1.0 + k as f64 * 0.5;
        let q = bump_fourier(w / 0.1, 0.1)?.abs();
        c2 = c2.max(q * w * w);
        c4 = c4.max(q * w.powi(4));
    }
    out.push(Check::new("bump_transform_decay_k2", c2, Relation::AtMost, golden.qhat_c2));
    out.push(Check::new("bump_transform_decay_k4", c4, Relation::AtMost, golden.qhat_c4));
    let t = 20.0f64;
    let m = t.powf(0.8);
    let ratio = i_transform(2.0 * t, t, m)?.abs() / i_transform(t / 200.0, t, m)?.abs();
    out.push(Check::new("i_transform_localization", ratio, Relation::AtLeast, 1e6));
    Ok(())
}

/// Runs every check with a census up to `x`.
pub fn run(x: f64, golden: &Golden) -> Outcome<Report> {
    let mut checks = Vec::new();
    gaussian_checks(&mut checks)?;
    kloosterman_checks(&mut checks, golden)?;
    census_checks(&mut checks, x, golden)?;
    moment_checks(&mut checks)?;
    spectral_checks(&mut checks, golden)?;
    Ok(Report { checks })
}
