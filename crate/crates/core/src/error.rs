use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate profile point: {0}")]
    Degenerate(String),
    #[error("no sign change of the balance function in y ∈ [{lo}, {hi}] for c = {c}")]
    NoBracket { c: f64, lo: f64, hi: f64 },
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("patch mismatch: {0}")]
    PatchMismatch(String),
    #[error("curve is neither closed nor bounded by the rotation axis")]
    NotClosed,
    #[error("out of range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
