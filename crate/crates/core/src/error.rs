use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("band limit {band_limit} out of range (supported: 1..={max})")]
    BandLimitOutOfRange { band_limit: usize, max: usize },

    #[error("degree {degree} out of range for band limit {band_limit}")]
    DegreeOutOfRange { degree: usize, band_limit: usize },

    #[error("orders (m={m}, n={n}) out of range for degree {degree}")]
    OrderOutOfRange { degree: usize, m: i64, n: i64 },

    #[error("{name} = {value} outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("band limit mismatch: expected {expected}, found {found}")]
    BandLimitMismatch { expected: usize, found: usize },

    #[error("shape mismatch: expected {expected} values, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("reference transform refuses band limit {band_limit} (cap {cap})")]
    OracleCap { band_limit: usize, cap: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}
