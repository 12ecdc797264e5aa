use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DimensionError {
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("bracket [{lo}, {hi}] does not straddle the exponent")]
    BadBracket { lo: f64, hi: f64 },
    #[error("tree too shallow: {0}")]
    ShallowTree(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("export failed: {0}")]
    Export(String),
}
