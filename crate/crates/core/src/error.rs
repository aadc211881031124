use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inexact division at q^{exponent}: leading coefficient does not divide")]
    InexactDivision { exponent: String },
    #[error("division by a zero series")]
    ZeroDivisor,
    #[error("series has odd powers of u; half-period substitution needs integer powers of y")]
    OddParity,
    #[error("coefficient of q^{requested} requested but series is only known below q^{trunc}")]
    AboveTruncation { requested: String, trunc: String },
    #[error("a tail bound is required to shift z by a multiple of tau")]
    MissingTailBound,
    #[error("term u^{upow} q^{exponent} violates the supplied tail bound")]
    TailBoundViolated { exponent: String, upow: i64 },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
    #[error("leading block of the linear system is singular")]
    SingularLeadingBlock,
    #[error("unknown object: {0}")]
    UnknownObject(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("argument is within {distance:e} of a pole")]
    NearPole { distance: f64 },
    #[error("sum did not converge within {terms} terms")]
    NonConvergent { terms: usize },
    #[error("quadrature forms disagree: {0:e}")]
    QuadratureDivergence(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
