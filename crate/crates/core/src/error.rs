use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{n} exceeds the supported envelope of 2^20 elements")]
    EnvelopeExceeded { p: u64, n: u64 },
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{sub} is not a subfield of {sup}")]
    NoSubfieldRelation { sub: String, sup: String },
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("element index {0} out of range")]
    ElementOutOfRange(u64),
    #[error("polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("rational function with zero numerator and denominator")]
    ZeroOverZero,
    #[error("pole at a point of the base field")]
    PoleInBaseField,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("power-sum formula out of range: {0}")]
    FormulaOutOfRange(String),
    #[error("k = {k} outside 1..={q}")]
    KOutOfRange { k: u64, q: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("cannot move the function to one fixing infinity without base-field poles")]
    Unfixable,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    MissingVariable(String),
    #[error("inexact division")]
    InexactDivision,
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
