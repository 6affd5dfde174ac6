use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sieve limit {0} is below 2, the table would be empty")]
    EmptySieve(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("Jacobi modulus must be odd and positive, got {0}")]
    BadJacobiModulus(i64),

    #[error("Kronecker character is undefined for a = 0")]
    ZeroCharacter,

    #[error("class number oracle needs a prime p = 3 mod 4, got {0}")]
    NotThreeModFour(u64),

    #[error("alpha {0} lies outside [0, 1)")]
    AlphaOutOfRange(String),

    #[error("cannot parse alpha {0:?}: expected \"a/b\" or a decimal")]
    ParseAlpha(String),

    #[error("unsupported alpha {0}: needs an exact rational with denominator in {{1, 2, 3, 4, 5, 6, 8, 12}}")]
    UnsupportedAlpha(String),

    #[error("no primes p <= {x} with p = {eps} mod 4 to average over")]
    EmptyPopulation { x: u64, eps: i8 },

    #[error("alpha*p is an integer for alpha = {alpha}, p = {p}; the Fourier series sits on a jump")]
    BoundaryCase { alpha: String, p: u64 },

    #[error("{what} requires {requirement}")]
    InvalidParameter {
        what: &'static str,
        requirement: &'static str,
    },

    #[error("could not render output: {0}")]
    Output(String),

    #[error("moment of order {k} needs ~{work} kernel combinations (limit {limit})")]
    Resource { k: u32, work: u128, limit: u128 },
}

impl Error {
    pub(crate) fn param(what: &'static str, requirement: &'static str) -> Self {
        Error::InvalidParameter { what, requirement }
    }
}
