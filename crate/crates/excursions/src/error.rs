#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExcursionError {
    #[error("winding number n = 0 gives a degenerate excursion")]
    ZeroWinding,
    #[error("point must lie in the upper half-plane, got Im z = {0}")]
    NotInHalfPlane(f64),
    #[error("level must be positive, got {0}")]
    BadLevel(f64),
    #[error("geodesic with apex height {apex} does not reach level {level}")]
    NoEntry { apex: f64, level: f64 },
    #[error("total length must be positive, got {0}")]
    BadHorizon(f64),
    #[error("the code is finite; the ray has no endpoint")]
    FiniteCode,
    #[error("csv export failed: {0}")]
    Csv(String),
}
