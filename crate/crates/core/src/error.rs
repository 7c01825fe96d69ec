use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} is outside the supported range 5 <= p < 2^20")]
    PrimeOutOfRange(u64),

    #[error("exponent {0} is outside the supported range 1..=3")]
    BadExponent(u32),

    #[error("division produced a negative p-adic valuation ({numerator} - {denominator})")]
    NegativeValuation { numerator: u32, denominator: u32 },

    #[error("division by a p-adic zero")]
    DivisionByZero,

    #[error("series has a zero constant term")]
    ZeroConstantTerm,

    #[error("series constant term is not the square of a rational")]
    NonSquareConstant,

    #[error("inner series must have zero constant term for composition")]
    NonzeroInnerConstant,

    #[error("certificate denominator vanishes at m={m}, k={k}")]
    DegenerateDenominator { m: i64, k: i64 },

    #[error("no representation of {target} as {a}x^2 + {b}y^2")]
    NoRepresentation { target: u64, a: u64, b: u64 },

    #[error("unknown statement id {0:?}")]
    UnknownStatement(String),

    #[error("invalid prime range {lo}..{hi}")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("sweep would evaluate {estimated} instances, above the budget of {budget}")]
    RangeTooLarge { estimated: u64, budget: u64 },

    #[error("index {n} exceeds the supported bound {max}")]
    IndexTooLarge { n: u64, max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
