use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{a} has no inverse modulo {c}")]
    NoInverse { a: String, c: String },

    #[error("value too large for exact machine arithmetic: {0}")]
    TooLarge(String),

    #[error("class number for d = {d} did not converge (cap {cap}: {at_cap}, cap {double}: {at_double})")]
    NotConverged {
        d: String,
        cap: u64,
        at_cap: u64,
        double: u64,
        at_double: u64,
    },

    #[error("census incomplete: {0}")]
    Incomplete(String),

    #[error("census does not cover {needed} (x_max = {x_max})")]
    Coverage { needed: f64, x_max: f64 },

    #[error("trace decomposition failed at t = {t}: {reason}")]
    Decomposition { t: String, reason: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e}, error {error:e})")]
    Quadrature { tol: f64, estimate: f64, error: f64 },

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
