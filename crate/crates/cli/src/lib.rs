//! Command-line front end: builds censuses, runs the experiments and writes CSV tables.

pub mod grid;
pub mod validate;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use picard::census::{
    build_census, class_number_sum, error_term, main_term, psi, second_moment_e,
    CensusConfig, CensusTable, DiscriminantDomain,
};
use picard::export::{self, render_table, Cell};
use picard::golden::Golden;
use picard::kloosterman::{
    canonical_moduli, kloosterman, kloosterman_forced, weil_ratio, weil_set, Strategy,
    NAIVE_NORM_LIMIT,
};
use picard::numeric::li;
use picard::spectral::{
    explicit_formula_error, h_s, i_transform, load_spectrum, mollified_h, weyl_warnings,
    Sign,
};
use picard::Gaussian;

use grid::parse_grid;

type G = Gaussian<i64>;

#[derive(Debug, Parser)]
#[command(name = "picard", version, about = "Prime geodesic statistics on the Picard manifold")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for CSV output; tables go to stdout without it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Frozen constants to check against; the built-in set is used without it.
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct CensusArgs {
    #[arg(long)]
    pub x_max: f64,
    #[arg(long)]
    pub height_cap: Option<i64>,
    #[arg(long)]
    pub search_limit: Option<f64>,
    /// Enumerate every discriminant instead of one of each pair ±d.
    #[arg(long)]
    pub literal: bool,
    /// Small eigenvalues s_j ∈ (1, 2] of the main term.
    #[arg(long, default_value = "2")]
    pub small_eigenvalues: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    /// I(x) with the Gaussian weight.
    I,
    /// h_s and its mollified versions.
    H,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the census and export it as CSV.
    Census {
        #[command(flatten)]
        census: CensusArgs,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// ψ(X), the main term and E(X) on a grid.
    Psi {
        #[command(flatten)]
        census: CensusArgs,
        /// "a:b:step" or "a,b,c"; defaults to 1, 2, …, x_max.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Σ h(d) over |ε_d| ≤ X against Li(X⁴).
    ClassSum {
        #[arg(long, default_value = "5,10,20")]
        grid: String,
        #[arg(long)]
        height_cap: Option<i64>,
    },
    /// (1/Δ)∫_V^{V+Δ}|E|² over the pairs with Δ ≤ V.
    SecondMoment {
        #[arg(long)]
        v: String,
        #[arg(long)]
        window: String,
        #[arg(long, default_value = "2")]
        small_eigenvalues: String,
    },
    /// A single Kloosterman sum, or a scan over canonical moduli with Weil ratios.
    Kloosterman {
        #[arg(long, allow_hyphen_values = true)]
        m: Option<G>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<G>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<G>,
        /// Scan all canonical c with N(c) up to this bound over the fixed m, n set.
        #[arg(long = "box")]
        box_norm: Option<i64>,
        #[arg(long)]
        naive: bool,
        /// Allow naive sums beyond the size guard.
        #[arg(long)]
        force: bool,
    },
    /// E(X) from the census against the spectral sum.
    ExplicitFormula {
        #[command(flatten)]
        census: CensusArgs,
        #[arg(long)]
        spectrum: PathBuf,
        /// Spectral cutoffs T.
        #[arg(long, default_value = "5,10,20")]
        t_max: String,
        /// X values; defaults to 10, 20, …, x_max.
        #[arg(long)]
        grid: Option<String>,
        /// Weyl-law constant for the unit-interval warning.
        #[arg(long, default_value_t = 1.0)]
        weyl_c: f64,
    },
    /// Diagnostic curves of I(x) or of h_s and h_±.
    Transforms {
        #[arg(long, value_enum, default_value = "i")]
        curve: Curve,
        /// T of the Gaussian weight.
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
        /// Width of the Gaussian weight; defaults to T^0.8.
        #[arg(long)]
        m: Option<f64>,
        /// X with s = log X for the h curves.
        #[arg(long, default_value_t = 100.0)]
        x_max: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run the invariant suite.
    Validate {
        #[arg(long, default_value_t = 200.0)]
        x_max: f64,
    },
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Validation(String),
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) | Failure::Runtime(_) => 1,
            Failure::Config(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Validation(m) => write!(f, "validation failed: {m}"),
            Failure::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<picard::Error> for Failure {
    fn from(e: picard::Error) -> Self {
        use picard::Error::*;
        match e {
            Domain(_) | Parse { .. } | Coverage { .. } | Schema(_) | NotConverged { .. } | Incomplete(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome<()> {
    let threads = cli.threads.unwrap_or(0);
    if cli.threads == Some(0) {
        return Err(Failure::Config("--threads must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    pool.install(|| dispatch(cli))
}

fn golden(cli: &Cli) -> Outcome<Golden> {
    match &cli.golden {
        Some(p) => Ok(Golden::load(p)?),
        None => Ok(Golden::embedded()),
    }
}

/// Writes a table to `<out>/<name>.csv`, or to stdout without `--out`.
pub fn emit(out: Option<&Path>, name: &str, header: &[&str], rows: &[Vec<Cell>]) -> Outcome<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            export::export_table(header, rows, &dir.join(format!("{name}.csv")))?;
        }
        None => {
            let text = render_table(header, rows)?;
            std::io::stdout().lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Outcome<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Config(format!("{name} must be positive, got {v}")))
    }
}

fn small_eigenvalues(list: &str) -> Outcome<Vec<f64>> {
    let s = parse_grid(list)?;
    if let Some(bad) = s.iter().find(|s| !(**s > 1.0 && **s <= 2.0)) {
        return Err(Failure::Config(format!("small eigenvalue s = {bad} outside (1, 2]")));
    }
    Ok(s)
}

fn census_config(a: &CensusArgs) -> Outcome<CensusConfig> {
    positive("--x-max", a.x_max)?;
    if let Some(h) = a.height_cap {
        if h <= 0 {
            return Err(Failure::Config(format!("--height-cap must be positive, got {h}")));
        }
    }
    if let Some(s) = a.search_limit {
        positive("--search-limit", s)?;
    }
    Ok(CensusConfig {
        domain: if a.literal {
            DiscriminantDomain::Literal
        } else {
            DiscriminantDomain::ModSign
        },
        search_limit: a.search_limit,
        height_cap: a.height_cap,
    })
}

fn census_for(a: &CensusArgs) -> Outcome<CensusTable> {
    let config = census_config(a)?;
    if a.x_max <= 1.0 {
        return Err(Failure::Config(format!("--x-max must exceed 1, got {}", a.x_max)));
    }
    Ok(build_census(a.x_max, &config)?)
}

fn dispatch(cli: &Cli) -> Outcome<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Census { census, export } => {
            let table = census_for(census)?;
            if !table.complete {
                eprintln!("warning: census incomplete below the certified search radius");
            }
            match export {
                Some(path) => export::export_census(&table, path)?,
                None => emit(out, "census", &export::CENSUS_HEADER, &export::census_rows(&table))?,
            }
            Ok(())
        }
        Command::Psi { census, grid } => {
            let s = small_eigenvalues(&census.small_eigenvalues)?;
            let xs = match grid {
                Some(g) => parse_grid(g)?,
                None => (1..=census.x_max.floor() as u64).map(|x| x as f64).collect(),
            };
            let table = census_for(census)?;
            let mut rows = Vec::with_capacity(xs.len());
            for x in xs {
                let p = psi(x, &table)?;
                let m = main_term(x, &s)?;
                rows.push(vec![x.into(), p.into(), m.into(), error_term(x, &table, &s)?.into()]);
            }
            emit(out, "psi", &["X", "psi", "main_term", "error"], &rows)
        }
        Command::ClassSum { grid, height_cap } => {
            let xs = parse_grid(grid)?;
            let top = xs.iter().cloned().fold(0.0, f64::max);
            let a = CensusArgs {
                x_max: (top * top).max(2.0),
                height_cap: *height_cap,
                search_limit: None,
                literal: false,
                small_eigenvalues: "2".into(),
            };
            let table = census_for(&a)?;
            let mut rows = Vec::new();
            for x in xs {
                positive("class-sum X", x)?;
                let c = class_number_sum(x, &table)?;
                let l = li(x.powi(4))?;
                rows.push(vec![
                    x.into(),
                    c.sum.into(),
                    l.into(),
                    c.residual.into(),
                    (c.residual / x.powi(4)).into(),
                ]);
            }
            emit(out, "class_sum", &["X", "sum_h", "li_x4", "residual", "residual_over_x4"], &rows)
        }
        Command::SecondMoment { v, window, small_eigenvalues: se } => {
            let s = small_eigenvalues(se)?;
            let (vs, ds) = (parse_grid(v)?, parse_grid(window)?);
            let pairs: Vec<(f64, f64)> = vs
                .iter()
                .flat_map(|&v| ds.iter().map(move |&d| (v, d)))
                .filter(|(v, d)| d <= v)
                .collect();
            if pairs.is_empty() {
                return Err(Failure::Config("no (V, Δ) pair with Δ ≤ V".into()));
            }
            if let Some((v, d)) = pairs.iter().find(|(_, d)| *d <= 1.0) {
                return Err(Failure::Config(format!("need Δ > 1, got V = {v}, Δ = {d}")));
            }
            let top = pairs.iter().map(|(v, d)| v + d).fold(0.0, f64::max);
            let a = CensusArgs {
                x_max: top,
                height_cap: None,
                search_limit: None,
                literal: false,
                small_eigenvalues: se.clone(),
            };
            let table = census_for(&a)?;
            let mut rows = Vec::new();
            for (v, d) in pairs {
                let m = second_moment_e(v, d, &table, &s)?;
                let scale = v.powf(3.6) * d.powf(-0.4) * v.ln().powf(0.4);
                rows.push(vec![v.into(), d.into(), m.into(), scale.into(), (m / scale).into()]);
            }
            emit(out, "second_moment", &["V", "Delta", "second_moment", "scale", "ratio"], &rows)
        }
        Command::Kloosterman { m, n, c, box_norm, naive, force } => {
            let strategy = if *naive { Strategy::Naive } else { Strategy::Factored };
            let eval = |m: &G, n: &G, c: &G| {
                if *force {
                    kloosterman_forced(m, n, c, strategy)
                } else {
                    kloosterman(m, n, c, strategy)
                }
            };
            let header = ["m", "n", "c", "value", "imag_residual", "terms", "weil_ratio"];
            let row = |m: &G, n: &G, c: &G| -> Outcome<Vec<Cell>> {
                let s = eval(m, n, c)?;
                Ok(vec![
                    m.to_string().into(),
                    n.to_string().into(),
                    c.to_string().into(),
                    s.value.into(),
                    s.imag_residual.into(),
                    s.terms.into(),
                    weil_ratio(m, n, c)?.into(),
                ])
            };
            match (m, n, c, box_norm) {
                (Some(m), Some(n), Some(c), None) => emit(out, "kloosterman", &header, &[row(m, n, c)?]),
                (None, None, None, Some(b)) => {
                    if *b <= 0 {
                        return Err(Failure::Config(format!("--box must be positive, got {b}")));
                    }
                    if *naive && !*force && *b > NAIVE_NORM_LIMIT {
                        return Err(Failure::Config(format!(
                            "naive scan up to N(c) = {b} needs --force"
                        )));
                    }
                    use rayon::prelude::*;
                    let set = weil_set();
                    let per_c: Vec<Outcome<Vec<Vec<Cell>>>> = canonical_moduli(*b)
                        .par_iter()
                        .map(|c| {
                            let mut rows = Vec::new();
                            for m in &set {
                                for n in &set {
                                    rows.push(row(m, n, c)?);
                                }
                            }
                            Ok(rows)
                        })
                        .collect();
                    let mut rows = Vec::new();
                    for r in per_c {
                        rows.extend(r?);
                    }
                    emit(out, "kloosterman", &header, &rows)
                }
                _ => Err(Failure::Config(
                    "give either --m, --n and --c, or --box".into(),
                )),
            }
        }
        Command::ExplicitFormula { census, spectrum, t_max, grid, weyl_c } => {
            let s = small_eigenvalues(&census.small_eigenvalues)?;
            let data = load_spectrum(spectrum)?;
            for w in weyl_warnings(&data, *weyl_c) {
                eprintln!("warning: {w}");
            }
            let ts = parse_grid(t_max)?;
            if let Some(t) = ts.iter().find(|t| **t < 1.0) {
                return Err(Failure::Config(format!("T = {t} below 1")));
            }
            let xs = match grid {
                Some(g) => parse_grid(g)?,
                None => (1..=(census.x_max / 10.0).floor() as u64).map(|k| 10.0 * k as f64).collect(),
            };
            let table = census_for(census)?;
            let mut rows = Vec::new();
            for &x in &xs {
                let e = error_term(x, &table, &s)?;
                for &t in &ts {
                    let f = explicit_formula_error(x, t, &data)?;
                    let scale = x * x * x.ln() / t;
                    rows.push(vec![
                        x.into(),
                        t.into(),
                        e.into(),
                        f.value.into(),
                        (e - f.value).abs().into(),
                        scale.into(),
                        ((e - f.value).abs() / scale).into(),
                        (if f.beyond_validity { "yes" } else { "no" }).into(),
                    ]);
                }
            }
            emit(
                out,
                "explicit_formula",
                &["X", "T", "error_census", "spectral_sum", "residual", "scale", "ratio", "beyond_validity"],
                &rows,
            )
        }
        Command::Transforms { curve, t_max, m, x_max, delta, grid } => match curve {
            Curve::I => {
                let t = positive("--t-max", *t_max)?;
                let m = positive("--m", m.unwrap_or(t.powf(0.8)))?;
                let xs = match grid {
                    Some(g) => parse_grid(g)?,
                    None => parse_grid(&format!("1:{}:1", (4.0 * t).ceil()))?,
                };
                let mut rows = Vec::new();
                for x in xs {
                    rows.push(vec![x.into(), i_transform(positive("x", x)?, t, m)?.into()]);
                }
                emit(out, "transform_i", &["x", "I"], &rows)
            }
            Curve::H => {
                if !(*delta > 0.0 && *delta < 0.25) {
                    return Err(Failure::Config(format!("--delta = {delta} outside (0, 1/4)")));
                }
                if !(*x_max > 1.0) {
                    return Err(Failure::Config(format!("--x-max must exceed 1, got {x_max}")));
                }
                let s = x_max.ln();
                let rs = match grid {
                    Some(g) => parse_grid(g)?,
                    None => parse_grid("0:30:0.25")?,
                };
                let mut rows = Vec::new();
                for r in rs {
                    rows.push(vec![
                        r.into(),
                        h_s(r, s).into(),
                        mollified_h(r, s, *delta, Sign::Plus)?.into(),
                        mollified_h(r, s, *delta, Sign::Minus)?.into(),
                    ]);
                }
                emit(out, "transform_h", &["r", "h_s", "h_plus", "h_minus"], &rows)
            }
        },
        Command::Validate { x_max } => {
            let g = golden(cli)?;
            let report = validate::run(positive("--x-max", *x_max)?, &g)?;
            emit(out, "validate", &validate::HEADER, &report.rows())?;
            match report.failures() {
                0 => Ok(()),
                n => Err(Failure::Validation(format!("{n} checks failed"))),
            }
        }
    }
}
