//! Deterministic CSV output.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::census::CensusTable;
use crate::error::{Error, Result};

/// A CSV cell; reals are printed with 15 significant digits.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// `x` with 15 significant digits, like C's `%.15g`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let s = format!("{:.*}", (14 - exp).max(0) as usize, x);
        trim_zeros(&s).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Real(v) => format_real(*v),
        Cell::Text(t) => {
            if t.contains([',', '"', '\n']) {
                format!("\"{}\"", t.replace('"', "\"\""))
            } else {
                t.clone()
            }
        }
    }
}

/// Renders a table; every row must have one cell per header column.
pub fn render_table(header: &[&str], rows: &[Vec<Cell>]) -> Result<String> {
    if let Some((k, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != header.len()) {
        return Err(Error::Schema(format!(
            "row {k} has {} cells for {} columns",
            r.len(),
            header.len()
        )));
    }
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(format_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Writes a table to `path`; a schema mismatch is reported before anything is written.
pub fn export_table(header: &[&str], rows: &[Vec<Cell>], path: &Path) -> Result<()> {
    let text = render_table(header, rows)?;
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

pub const CENSUS_HEADER: [&str; 11] = [
    "d_re",
    "d_im",
    "t0_re",
    "t0_im",
    "u0_re",
    "u0_im",
    "abs_eps",
    "h",
    "k",
    "norm",
    "lambda_weight",
];

pub fn census_rows(census: &CensusTable) -> Vec<Vec<Cell>> {
    census
        .entries
        .iter()
        .map(|e| {
            let p = &e.pell;
            vec![
                p.d.re.into(),
                p.d.im.into(),
                p.t0.re.into(),
                p.t0.im.into(),
                p.u0.re.into(),
                p.u0.im.into(),
                p.abs_eps.into(),
                e.h.into(),
                e.k.into(),
                e.norm.into(),
                e.lambda_weight.into(),
            ]
        })
        .collect()
}

pub fn export_census(census: &CensusTable, path: &Path) -> Result<()> {
    export_table(&CENSUS_HEADER, &census_rows(census), path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(format_real(1.618033988749895), "1.61803398874989");
        assert_eq!(format_real(0.5), "0.5");
        assert_eq!(format_real(50.0), "50");
        assert_eq!(format_real(-2.25e-7), "-2.25e-07");
        assert_eq!(format_real(1.5e20), "1.5e+20");
        assert_eq!(format_real(999999999999999.9), "1e+15");
        assert_eq!(format_real(0.0), "0");
    }

    #[test]
    fn header_only_and_schema_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        export_table(&["a", "b"], &[], &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "a,b\n");
        let q = dir.path().join("bad.csv");
        assert!(export_table(&["a", "b"], &[vec![Cell::Int(1)]], &q).is_err());
        assert!(!q.exists());
    }
}
