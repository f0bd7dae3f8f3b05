use thiserror::Error;

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MixError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("input must be holomorphic (no conjugated variables)")]
    NotHolomorphic,
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("operation needs exactly {expected} variables, input has {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("total degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("elimination degenerate: {0}")]
    EliminationDegenerate(String),
    #[error("shear search exhausted for k in 2..={max_k}")]
    SearchExhausted { max_k: u32 },
    #[error("degenerate normal frame at the requested point")]
    DegenerateFrame,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow in lattice computation")]
    Overflow,
    #[error("fixture error: {0}")]
    Fixture(String),
}

impl MixError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            MixError::Parse(_) | MixError::Fixture(_) | MixError::InvalidArgument(_) => 2,
            _ => 3,
        }
    }
}
