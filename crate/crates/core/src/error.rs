use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("x must be a single monic monomial t^n")]
    NonMonomialX,

    #[error("parametrization is not primitive (exponent gcd {gcd})")]
    NonPrimitive { gcd: u32 },

    #[error("branch does not pass through the origin (a component has order < 1)")]
    NotThroughOrigin,

    #[error("truncation precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("quotient is not a power series (order {numerator} < order {denominator})")]
    NotPowerSeries { numerator: u32, denominator: u32 },

    #[error("characteristic exponents need y-order >= x-multiplicity (y order {y_order} < n = {n})")]
    NotPuiseuxNormal { n: u32, y_order: u32 },

    #[error("expansion needs an irrational coefficient: {0}")]
    IrrationalRoot(String),

    #[error("polynomial is reducible at the origin: {0}")]
    Reducible(String),

    #[error("ramification index {n} exceeds the limit {limit}")]
    RamificationLimit { n: u32, limit: u32 },

    #[error("resolution did not terminate within {0} blowups")]
    MaxSteps(usize),

    #[error("branches are not equisingular: {0}")]
    NotEquisingular(String),

    #[error("isotopy construction failed: {0}")]
    Construction(String),

    #[error("lift is ill-conditioned: {0}")]
    LiftIllConditioned(String),

    #[error("non-finite value during flow integration")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
