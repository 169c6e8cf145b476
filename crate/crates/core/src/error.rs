use thiserror::Error;

/// Failure to read a word in the band / Artin token grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}: `{token}`")]
pub struct ParseError {
    pub token: String,
    /// Character offset of the offending token in the input text.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown letter")]
    UnknownLetter,
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("zero exponent")]
    ZeroExponent,
    #[error("no tokens in non-empty input")]
    NoTokens,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("rule {rule} does not match at position {at} of `{word}`")]
    RuleMismatch { rule: String, at: usize, word: String },

    #[error("rewriting step budget of {budget} exceeded while normalizing `{word}`")]
    StepBudgetExceeded { budget: usize, word: String },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("unsound step {step}: {detail}")]
    Unsound { step: usize, detail: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
