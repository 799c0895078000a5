//! Error type shared by every module of the toolkit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime (or is out of the supported range)")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("arity mismatch: expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("degenerate section: {0}")]
    DegenerateSection(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("unsupported bidegree ({0},{1}): one of a, b must equal 1")]
    UnsupportedBidegree(u32, u32),

    #[error("resampling exhausted after {attempts} attempts: {what}")]
    ResampleExhausted { attempts: usize, what: String },

    #[error(
        "internal inconsistency: multiplication rank routes disagree at m={m}, t={t}: \
         formula route {formula}, presentation route {presentation}"
    )]
    RouteDisagreement {
        m: u32,
        t: i64,
        formula: i64,
        presentation: i64,
    },

    #[error("unknown recipe or tag `{0}`")]
    UnknownTag(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
