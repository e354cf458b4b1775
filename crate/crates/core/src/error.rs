use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero free term and is not a unit")]
    ZeroFreeTerm,
    #[error("free term {0} has no rational square root")]
    NonSquareFreeTerm(String),
    #[error("division by zero in `{0}`")]
    ZeroDivision(String),
    #[error("order is indeterminate: all coefficients known through T^{0} vanish")]
    Indeterminate(i64),
    #[error("cancellation consumed all tracked coefficients (known through T^{0})")]
    PrecisionExhausted(i64),
    #[error("∂F/∂u vanishes at the branch point; the branch is degenerate")]
    DegenerateBranch,
    #[error("branch point does not lie on the curve: F(u0, 0) = {0}")]
    NotOnCurve(String),
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is not a polynomial in u and t")]
    NotPolynomial(String),
    #[error("insufficient truncation: need {needed}, have {have}")]
    InsufficientTruncation { needed: i64, have: i64 },
    #[error("equation has degree {0}; no solutions other than 0")]
    NotPositiveDegree(i64),
    #[error("operator series is exactly zero")]
    ZeroOperator,
    #[error("expected {expected} initial values, got {got}")]
    InitLength { expected: usize, got: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroFreeTerm => "ZeroFreeTerm",
            Error::NonSquareFreeTerm(_) => "NonSquareFreeTerm",
            Error::ZeroDivision(_) => "ZeroDivision",
            Error::Indeterminate(_) => "Indeterminate",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::DegenerateBranch => "DegenerateBranch",
            Error::NotOnCurve(_) => "NotOnCurve",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::NotPolynomial(_) => "NotPolynomial",
            Error::InsufficientTruncation { .. } => "InsufficientTruncation",
            Error::NotPositiveDegree(_) => "NotPositiveDegree",
            Error::ZeroOperator => "ZeroOperator",
            Error::InitLength { .. } => "InitLength",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::Precondition(_) => "Precondition",
            Error::Format(_) => "FormatError",
        }
    }
}
