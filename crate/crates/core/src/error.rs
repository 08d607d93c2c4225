use thiserror::Error;

/// Errors raised by the arithmetic, sequence and measurement routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is below 5; the gap sequences need at least two residues")]
    PrimeTooSmall(u64),
    #[error("empty range: lower bound {lo} exceeds upper bound {hi}")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("gcd({a}, {m}) != 1, so {a} has no multiplicative order modulo {m}")]
    NotInvertible { a: u64, m: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("index {index} out of range for aperiodic sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires a periodic sequence")]
    NotPeriodic,
    #[error("period length {period} does not match {len} stored bits")]
    PeriodMismatch { period: usize, len: usize },
    #[error("invalid bit character {0:?}; expected '0' or '1'")]
    InvalidBit(char),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("exponent T must be at least 1")]
    ZeroExponent,
    #[error("need {needed} terms but only {available} are available")]
    NotEnoughTerms { needed: usize, available: usize },
    #[error("pattern length {s} is outside the allowed range 1..={max}")]
    PatternLength { s: usize, max: usize },
    #[error("{r} does not divide the period {period}")]
    NotADivisor { r: usize, period: usize },
    #[error("correlation measure requested for N = {n}, above the cap of {cap}; raise the cap to allow the exact search")]
    OverCap { n: usize, cap: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
