use thiserror::Error;

use crate::graph::ChordalityCertificate;

/// Errors produced by the library. Every precondition violation has its own
/// variant so callers (and the CLI) can map them to precise diagnostics.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("variable labels must be unique and nonempty")]
    BadContext,

    #[error("unknown variable position {0}")]
    UnknownVariable(usize),

    #[error("generator is not squarefree: {0}")]
    NotSquarefree(String),

    #[error("generator is not quadratic: {0}")]
    NotQuadratic(String),

    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,

    #[error("index {index} out of range (valid {min}..{max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("ordering does not permute the generating set")]
    NotAPermutation,

    #[error("graph supports at most {max} vertices, context has {got}")]
    TooManyVertices { got: usize, max: usize },

    #[error("exhaustive search limited to {max} generators, ideal has {got}")]
    TooManyGenerators { got: usize, max: usize },

    #[error("homology oracle limited to support of size {max}, got {got}")]
    SupportTooLarge { got: usize, max: usize },

    #[error("generator count {got} exceeds configured bound {max}")]
    GeneratorExplosion { got: usize, max: usize },

    #[error("ideal does not have linear resolution")]
    NoLinearResolution(ChordalityCertificate),

    #[error("monomial is not a minimal generator of the requested power")]
    NotAPowerGenerator,

    #[error("witness precondition violated: {0}")]
    WitnessPrecondition(String),

    #[error("internal construction failed: {0}")]
    Diagnostic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
