use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial is not a valid modulus")]
    ZeroModulus,
    #[error("evaluation or expansion point must be nonzero")]
    ZeroPoint,
    #[error("expected a polynomial in t, found negative exponents in `{0}`")]
    LaurentInput(String),
    #[error("expected a monic polynomial, got `{0}`")]
    NotMonic(String),
    #[error("`{0}` is not a reciprocal polynomial")]
    NotReciprocal(String),
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("input list is empty")]
    EmptyInput,
    #[error("all input elements are zero")]
    AllZero,
    #[error("q(t) must satisfy q(1/t) = -q(t): `{0}`")]
    NotAntisymmetric(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("spin must be a positive half-integer, got 2s = {0}")]
    InvalidSpin(i64),
    #[error("length mismatch: {0} points but {1} spins")]
    LengthMismatch(usize, usize),
    #[error("order must be positive")]
    ZeroOrder,
    #[error("this construction needs an even truncation order, got {0}")]
    OddOrder(usize),
    #[error("Hilbert space dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("invalid chain parameters: {0}")]
    InvalidChain(String),
    #[error("spectrum fit failed for trajectory {trajectory}: best residual {residual:e} with n = {n}")]
    FitFailed { trajectory: usize, n: usize, residual: f64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
