use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational `{0}`; expected `p/q` or an integer")]
    Parse(String),
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series must have constant term {expected}, found {found}")]
    ConstantTerm {
        expected: &'static str,
        found: String,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("iteration cap of {0} terms reached before the tail bound met its target")]
    IterationCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
