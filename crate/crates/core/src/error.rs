use num_complex::Complex64;
use thiserror::Error;

/// Broad category of a failure, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller asked for something outside the domain of the operation.
    Domain,
    /// A numerical procedure failed to reach its tolerance.
    Numerical,
    /// An internal invariant was violated.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tau must lie in the upper half plane, got {0}")]
    NotUpperHalfPlane(Complex64),

    #[error("tau = {0} is ill-conditioned: imaginary part below 1e-6")]
    IllConditioned(Complex64),

    #[error("w = {w} lies within {distance:e} of a lattice point (pole of the Weierstrass function)")]
    PoleProximity { w: Complex64, distance: f64 },

    #[error("mu must avoid {{0,1}}, got {0}")]
    DegenerateMu(Complex64),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("theta series did not converge after {0} terms")]
    SeriesDivergence(usize),

    #[error("inverse lambda failed to converge for mu = {mu}: residual {residual:e}")]
    NoConvergence { mu: Complex64, residual: f64 },

    #[error("invalid slope: {0}")]
    InvalidSlope(String),

    #[error("scale k must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("a = 0 does not define a differential with four simple poles")]
    ZeroCoefficient,

    #[error("max_denominator must be at least 1")]
    InvalidDenominatorBound,

    #[error("degenerate start point ({s}, {t}) for slope {q}: {reason}; re-seed the start point")]
    DegenerateStart {
        s: String,
        t: String,
        q: String,
        reason: &'static str,
    },

    #[error("{entry}->{exit} is not a valid gray-tile transit")]
    InvalidTransit { entry: String, exit: String },

    #[error("cannot parse word {input:?}: {reason}")]
    WordParse { input: String, reason: String },

    #[error("at least 16 samples are required, got {0}")]
    TooFewSamples(usize),

    #[error("trajectory passes within {distance:e} of a branch point at u = {u}")]
    BranchProximity { u: f64, distance: f64 },

    #[error("critical trajectory endpoint {0} matches no puncture")]
    UnmatchedEndpoint(String),

    #[error("could not lift the traced curve back to the plane at sample {0}")]
    LiftFailure(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotUpperHalfPlane(_)
            | Error::IllConditioned(_)
            | Error::PoleProximity { .. }
            | Error::DegenerateMu(_)
            | Error::NonFinite(_)
            | Error::InvalidSlope(_)
            | Error::InvalidScale(_)
            | Error::ZeroCoefficient
            | Error::InvalidDenominatorBound
            | Error::DegenerateStart { .. }
            | Error::InvalidTransit { .. }
            | Error::WordParse { .. }
            | Error::TooFewSamples(_)
            | Error::BranchProximity { .. } => ErrorKind::Domain,
            Error::SeriesDivergence(_)
            | Error::NoConvergence { .. }
            | Error::UnmatchedEndpoint(_)
            | Error::LiftFailure(_) => ErrorKind::Numerical,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
