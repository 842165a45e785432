use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("generator `{0}` must have positive degree")]
    NonPositiveDegree(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("operands disagree on coefficient field or monomial order")]
    Mismatch,
    #[error("cannot reduce by the zero polynomial")]
    ZeroReducer,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("Adem relation ({a}, {b}) requires 0 < a < 2b")]
    AdemRange { a: u32, b: u32 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("internal contract violation: {0}")]
    Contract(String),
}
