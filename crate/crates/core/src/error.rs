use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator in rational function construction")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("evaluation hits a pole: denominator {denominator} vanishes at {point}")]
    Pole { denominator: String, point: String },

    #[error("cannot evaluate at L: odd T-exponent {exponent} present")]
    OddExponent { exponent: i64 },

    #[error("constant term of the divisor is not a unit")]
    NonUnitConstant,

    #[error("plethystic exponential needs a series with zero constant term")]
    NonzeroConstantTerm,

    #[error("pole at T = -1 in the coefficient of q^{degree}")]
    EulerPole { degree: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vertex index {index} out of range for {vertices} vertices")]
    VertexOutOfRange { index: usize, vertices: usize },

    #[error("operands live over different quivers")]
    QuiverMismatch,

    #[error("phase is undefined for the zero dimension vector")]
    ZeroDimensionVector,

    #[error("window {window} too small: need at least {required}")]
    WindowTooSmall { window: usize, required: usize },

    #[error("brute-force budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("saddle-point bracket [{lo}, {hi}] does not contain a root")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("saddle sandwich bound violated: {0}")]
    SandwichViolated(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
