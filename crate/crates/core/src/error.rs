use thiserror::Error;

/// Errors produced while building, evaluating or optimizing instances.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SboError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid weight {weight} on keyword {index}: weights must be positive")]
    InvalidWeight { index: usize, weight: f64 },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("model mismatch: operation requires the {expected} model, instance uses {found}")]
    ModelMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("exact enumeration needs {size} joint outcomes, above the cap of {cap}; use the PTAS evaluator instead")]
    OracleTooLarge { size: u128, cap: u128 },

    #[error("exhaustive search over {n} keywords exceeds the cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for SboError {
    fn from(err: std::io::Error) -> Self {
        SboError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SboError>;
