use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty index")]
    EmptyIndex,
    #[error("index part equal to 0 in {0}")]
    ZeroPart(String),
    #[error("word {0:?} does not begin with y")]
    NotInYH(String),
    #[error("not divisible by x on the right: word {0}")]
    NotRightDivisible(String),
    #[error("word {0:?} is not admissible (must begin with y and end with x)")]
    NotAdmissible(String),
    #[error("index {0} is not admissible (last part must be at least 2)")]
    InadmissibleIndex(String),
    #[error("operator index n must be positive")]
    ZeroOrder,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} must exceed the largest index part {max_part}")]
    PrimeTooSmall { p: u64, max_part: u32 },
    #[error("denominator of {value} is divisible by {p}")]
    DenominatorDivisible { value: String, p: u64 },
    #[error("prime {p} is at or below the exclusion bound {bound}")]
    PrimeExcluded { p: u64, bound: u64 },
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
