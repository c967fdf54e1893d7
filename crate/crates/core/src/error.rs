use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypergraph is not connected")]
    Disconnected,

    #[error("configuration is not stable")]
    NotStable,

    #[error("illegal firing: {0}")]
    IllegalFiring(String),

    #[error("enumeration of {requested} configurations exceeds the bound of {bound}")]
    EnumerationTooLarge { requested: String, bound: u64 },

    #[error("exact division left a nonzero remainder")]
    DivisionNotExact,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("product is not a polynomial: {factor} has exponent {exponent}")]
    NotPolynomial { factor: String, exponent: String },

    #[error("Macaulay minor vanishes under every variable ordering")]
    DegenerateMinor,

    #[error("Macaulay matrix with {columns} columns exceeds the oracle bound of {bound}")]
    OracleTooLarge { columns: usize, bound: usize },
}
