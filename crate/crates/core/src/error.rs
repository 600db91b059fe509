use thiserror::Error;

/// Errors from the combinatorial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrigamiError {
    #[error("arrays are not permutations of 0..n")]
    NonBijective,
    #[error("h and v have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("an origami needs at least one square")]
    Empty,
    #[error("the group generated by h and v is not transitive")]
    Disconnected,
    #[error("direction ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
    #[error("infeasible size: {0}")]
    InfeasibleSize(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Errors from the flat-geometry layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Origami(#[from] OrigamiError),
    #[error("surface has no zeros; use marked mode to treat vertices as marked points")]
    NoZeros,
    #[error("matrix determinant {0} differs from 1 by more than 1e-12")]
    NotUnimodular(f64),
    #[error("separatrix trace from square {square} in direction ({p}, {q}) did not terminate")]
    NonTermination { square: u32, p: i64, q: i64 },
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
}

/// Errors from counting, quadrature and the experiments.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no cylinders found up to radius {0}")]
    DegenerateCount(f64),
    #[error("certified radius {certified} is smaller than support radius {needed}")]
    InsufficientRadius { certified: f64, needed: f64 },
    #[error("adaptive depth cap hit; value bracketed in [{lo}, {hi}]")]
    ToleranceNotMet { lo: f64, hi: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("checkpoint i/o: {0}")]
    Checkpoint(String),
}

impl From<OrigamiError> for AnalysisError {
    fn from(e: OrigamiError) -> Self {
        AnalysisError::Geometry(GeometryError::Origami(e))
    }
}
