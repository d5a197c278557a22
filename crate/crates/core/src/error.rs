use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {point:?} is not strictly interior (facet {facet} has value {value})")]
    NotInterior {
        point: Vec<f64>,
        facet: usize,
        value: f64,
    },

    #[error("polyhedral set has empty interior")]
    EmptyInterior,

    #[error("invalid polyhedral set: {0}")]
    InvalidPolytope(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("singular linear system for {0}")]
    SingularSystem(String),

    #[error("linear system residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("profile pole: Q({r}) = {q}")]
    Pole { r: f64, q: f64 },

    #[error("degenerate metric at r = {r}: 1 + r h''(r) = {value}")]
    Degenerate { r: f64, value: f64 },

    #[error("non-finite value while evaluating {0}")]
    NonFinite(String),

    #[error("constraint mismatch: {0}")]
    ConstraintMismatch(String),

    #[error("profile does not match polytope: {0}")]
    ProfileMismatch(String),

    #[error("invalid 2d family (k={k}, b={b}, c={c})")]
    InvalidFamily { k: f64, b: f64, c: f64 },

    #[error("inconsistent curvature routes: {0}")]
    Inconsistent(String),

    #[error("only {found} valid samples (needed {needed})")]
    TooFewSamples { found: usize, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
