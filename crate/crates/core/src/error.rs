use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("index {index} out of range for {what} (dimension {dim})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        dim: usize,
    },

    #[error("coalgebra fails `{check}` at basis index {witness:?}")]
    InvalidCoalgebra { check: String, witness: Vec<usize> },

    #[error("operation requires a counit, but none is present")]
    MissingCounit,

    #[error("operation requires a unital algebra")]
    NotUnital,

    #[error("bimodule axiom `{0}` fails")]
    BimoduleAxiom(String),

    #[error("input fails invariant: {0}")]
    InvariantFailure(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
