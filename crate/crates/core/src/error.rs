use thiserror::Error;

/// Errors raised by the library. Verification *failures* are not errors:
/// they are reported as verdicts inside the report types.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("exact division failed: nonzero remainder")]
    NotDivisible,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial has an odd-degree term at x^{0}")]
    NotEven(usize),
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("modulus {0} exceeds the supported 63-bit range")]
    ModulusTooLarge(String),
    #[error("polynomial vanishes modulo {0}")]
    ZeroModP(u64),
    #[error("Hensel lifting failed: {0}")]
    Lifting(String),
    #[error("could not factor discriminant cofactor {0}")]
    UnfactoredCofactor(String),
    #[error("wild ramification at p = {p} (degree {degree}) is unsupported")]
    WildRamification { p: u64, degree: usize },
    #[error("invalid subgroup specification: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("retry budget exhausted after {attempts} attempts")]
    RetryExhausted { attempts: usize },
    #[error("local analysis produced no candidates at p = {0}")]
    NoCandidates(u64),
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
