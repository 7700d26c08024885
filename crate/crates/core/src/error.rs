use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: expected two node tokens, found {found}")]
    Parse { line: usize, found: usize },

    #[error("edge list contains no edges or nodes")]
    EmptyInput,

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("isomorphism oracle limited to {cap} nodes, got {n}")]
    OracleTooLarge { n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("interval [{lo}, {hi}] does not bracket target {target} (endpoint estimates {at_lo:.4} and {at_hi:.4})")]
    NotBracketing {
        lo: f64,
        hi: f64,
        target: f64,
        at_lo: f64,
        at_hi: f64,
    },

    #[error("line fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
