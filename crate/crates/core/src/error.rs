use thiserror::Error;

/// Everything that can go wrong while building or evaluating an index or a point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("digit stream is not in canonical (non-terminating) form")]
    NonCanonicalInput,

    #[error("the value is zero")]
    ZeroValue,

    #[error("inadmissible index: {0}")]
    Inadmissible(String),

    #[error("the series diverges: {0}")]
    Divergent(String),

    #[error("no convergence after {terms} terms (last error estimate {err:e})")]
    NotConverged { terms: usize, err: f64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("Gamma has a pole at {0}")]
    Pole(f64),

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dyadic exponent {0} exceeds the supported maximum of 127")]
    ExponentOverflow(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
