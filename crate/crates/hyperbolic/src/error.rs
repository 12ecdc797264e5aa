use crate::moebius::{Classification, Model};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HyperbolicError {
    #[error("model mismatch: {left:?} vs {right:?}")]
    ModelMismatch { left: Model, right: Model },
    #[error("expected a hyperbolic map, got {0:?}")]
    NotHyperbolic(Classification),
    #[error("point {0} is not inside the model")]
    OutsideModel(String),
    #[error("matrix has non-positive determinant {0}")]
    BadDeterminant(f64),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
}
