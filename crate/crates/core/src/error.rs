use thiserror::Error;

/// Errors raised by the constructors, evaluators and certifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {0} is not in the open unit disc")]
    OutsideDisc(String),
    #[error("value {0} is not in the closed unit disc")]
    OutsideClosedDisc(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible data: {0}")]
    Infeasible(String),
    #[error("constant unimodular function is not reducible")]
    NotReducible,
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("not commensurable: {0}")]
    NotCommensurable(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
