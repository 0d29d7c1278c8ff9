use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("cannot refine a ball of scale {from} to coarser scale {to}")]
    InvalidRefinement { from: i64, to: i64 },
    #[error("operands use different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
    #[error("{0} does not have a power-of-p denominator")]
    NotPPower(String),
    #[error("elements carry different multipliers")]
    MultiplierMismatch,
    #[error("residue {residue} outside 0..{modulus}")]
    ResidueOutOfRange { residue: i64, modulus: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("theta must lie in (0, 1), got {0}")]
    ThetaOutOfRange(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
