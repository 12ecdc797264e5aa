use symbolic::SymbolicError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DivergenceError {
    #[error("the cut-off N must be positive")]
    BadCutoff,
    #[error("wanted {wanted} A3 pairs but the code only provides {achievable}")]
    InsufficientBlocks { wanted: usize, achievable: usize },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("export failed: {0}")]
    Export(String),
}
