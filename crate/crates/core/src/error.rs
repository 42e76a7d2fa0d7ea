use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("modulus {0} is not a prime power; split the code with crt_decompose first")]
    CompositeModulus(u64),

    #[error("stabilizer columns {0} and {1} do not commute: omega = {2}")]
    NotIsotropic(usize, usize, String),

    #[error("no solution: vector is not in the image")]
    NoSolution,

    #[error("module is not finite: {0}")]
    NotFinite(String),

    #[error("not mobile at degree(s) {0:?}")]
    NotMobile(Vec<usize>),

    #[error("lift failed: {0}")]
    LiftFailed(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not stabilized: window orders {0:?}")]
    NotStabilized(Vec<u64>),

    #[error("group order {0} is not a perfect square")]
    NonSquare(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
