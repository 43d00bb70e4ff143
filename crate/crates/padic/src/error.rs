use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("division by an element indistinguishable from zero")]
    DivisionByZero,
    #[error("operation requires a p-adic unit")]
    NotUnit,
    #[error("input is indistinguishable from zero at its precision")]
    PrecisionZero,
    #[error("{0}")]
    Domain(String),
    #[error("only {available} absolute digits known, {requested} requested")]
    InsufficientPrecision { available: i64, requested: i64 },
    #[error("value is not p-integral")]
    NotIntegral,
    #[error("cannot parse p-adic number: {0}")]
    Parse(String),
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
}
