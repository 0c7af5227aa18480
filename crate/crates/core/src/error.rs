use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("indeterminate residual evaluation 0/0")]
    IndeterminateResidual,
    #[error("join of a point with itself")]
    DegenerateJoin,
    #[error("expected a cut, got a classical point")]
    NotACut,
    #[error("direction from a cut towards itself")]
    DegenerateDirection,
    #[error("invalid affinoid: {0}")]
    InvalidAffinoid(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("pole inside the ball")]
    UnsupportedPoleConfiguration,
    #[error("center does not land in the target ball")]
    CenterMisses,
    #[error("resonant multiplier")]
    ResonantMultiplier,
    #[error("multiplier is a root of unity (order {0})")]
    RootOfUnity(usize),
    #[error("unsupported normalization: {0}")]
    UnsupportedNormalization(String),
    #[error("map does not have good reduction")]
    RequiresGoodReduction,
    #[error("code is not periodic")]
    NotPeriodic,
    #[error("code does not single out one cell per level")]
    AmbiguousCode,
    #[error("no cell carries this code at depth {0}")]
    UnrealizedCode(usize),
    #[error("field of order {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands use different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
