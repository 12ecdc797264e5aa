#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymbolicError {
    #[error("cannot parse '{input}': {reason}")]
    Parse { input: String, reason: String },
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("blocks must alternate between h and p")]
    NotAlternating,
    #[error("zero exponent in a power block")]
    ZeroExponent,
    #[error("invalid A3 word: {0}")]
    InvalidA3(String),
    #[error("the word starts with a parabolic block, so its first omega would not begin with h")]
    LeadingParabolic,
    #[error("periodic word {0} is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("the code is finite; it has no endpoint")]
    FiniteCode,
    #[error("word too long for a plain matrix; use the log-scaled product")]
    Overflow,
}
