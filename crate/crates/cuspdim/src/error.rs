use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config field {field}: {reason}")]
    Config { field: String, reason: String },
    #[error("budget exhausted ({field}): {reason}")]
    Budget { field: String, reason: String },
    #[error("check failed: {0}")]
    Check(String),
    #[error("{0}")]
    Compute(String),
    #[error("output: {0}")]
    Io(String),
}

impl CliError {
    /// 2 is left to usage errors, which the argument parser reports itself.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(_) | CliError::Io(_) => 1,
            CliError::Config { .. } => 3,
            CliError::Budget { .. } => 4,
            CliError::Check(_) => 5,
        }
    }

    pub fn to_exit(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<dimension::DimensionError> for CliError {
    fn from(e: dimension::DimensionError) -> Self {
        match e {
            dimension::DimensionError::ShallowTree(r) => CliError::Budget { field: "tree_depths".into(), reason: r },
            dimension::DimensionError::BadParameter(r) => CliError::Config { field: "dimension".into(), reason: r },
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<divergence::DivergenceError> for CliError {
    fn from(e: divergence::DivergenceError) -> Self {
        match e {
            divergence::DivergenceError::InsufficientBlocks { .. } => {
                CliError::Budget { field: "q_max".into(), reason: e.to_string() }
            }
            divergence::DivergenceError::BadCutoff => {
                CliError::Config { field: "cutoffs".into(), reason: e.to_string() }
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<excursions::ExcursionError> for CliError {
    fn from(e: excursions::ExcursionError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<schottky::SchottkyError> for CliError {
    fn from(e: schottky::SchottkyError) -> Self {
        match e {
            schottky::SchottkyError::InvalidParams { field, reason } => {
                CliError::Config { field: field.into(), reason }
            }
            other => CliError::Check(other.to_string()),
        }
    }
}

impl From<symbolic::SymbolicError> for CliError {
    fn from(e: symbolic::SymbolicError) -> Self {
        CliError::Config { field: "--spec".into(), reason: e.to_string() }
    }
}
