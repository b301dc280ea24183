use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("generator {index} is the zero vector")]
    ZeroGenerator { index: usize },

    #[error("generators {first} and {second} are the same direction")]
    DuplicateGenerator { first: usize, second: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dependent base: smallest Gram eigenvalue {min_eigenvalue:.3e} is below the independence threshold")]
    DependentBase { min_eigenvalue: f64 },

    #[error("affinely dependent base: the circumcenter system is singular")]
    AffinelyDependent,

    #[error("circumcentric direction is zero; no aperture axis exists")]
    DegenerateDirection,

    #[error("zero direction")]
    ZeroDirection,

    #[error("value {value} outside the admissible range {range}")]
    OutOfRange { value: f64, range: &'static str },

    #[error("hypothesis fails for {variant}: affine hull of the extremal section is at distance {distance:.3e} from the origin")]
    HypothesisFails { variant: String, distance: f64 },

    #[error("no exact oracle for {0}; use the sampled variant")]
    UnsupportedExact(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("point is infeasible: constraint {label} has value {value:.3e}")]
    Infeasible { label: String, value: f64 },

    #[error("active constraint {label} has a zero gradient")]
    ZeroGradient { label: String },

    #[error("empty active set")]
    EmptyActiveSet,

    #[error("row {row} is active at both signs; the box is degenerate")]
    DegenerateBox { row: usize },

    #[error("constraint {index} is at its apex (residual norm {residual:.3e})")]
    Apex { index: usize, residual: f64 },

    #[error("step {sigma} is not below the sharp bound {bound}")]
    StepTooLong { sigma: f64, bound: f64 },

    #[error("backtracking failed to find a feasible point after {halvings} halvings")]
    StepFailure { halvings: usize },

    #[error("the origin lies in the affine hull of the base (distance {distance:.3e})")]
    DegenerateAffine { distance: f64 },

    #[error("Bregman margin {kappa:.3e} is not positive")]
    DegenerateMargin { kappa: f64 },

    #[error("invalid Legendre function: {0}")]
    InvalidLegendre(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("contract violation: {0}")]
    Contract(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the variant, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Empty(_) => "Empty",
            Error::ZeroGenerator { .. } => "ZeroGenerator",
            Error::DuplicateGenerator { .. } => "DuplicateGenerator",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DependentBase { .. } => "DependentBase",
            Error::AffinelyDependent => "AffinelyDependent",
            Error::DegenerateDirection => "DegenerateDirection",
            Error::ZeroDirection => "ZeroDirection",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::HypothesisFails { .. } => "HypothesisFails",
            Error::UnsupportedExact(_) => "UnsupportedExact",
            Error::InvalidCone(_) => "InvalidCone",
            Error::Infeasible { .. } => "Infeasible",
            Error::ZeroGradient { .. } => "ZeroGradient",
            Error::EmptyActiveSet => "EmptyActiveSet",
            Error::DegenerateBox { .. } => "DegenerateBox",
            Error::Apex { .. } => "ApexError",
            Error::StepTooLong { .. } => "StepTooLong",
            Error::StepFailure { .. } => "StepFailure",
            Error::DegenerateAffine { .. } => "DegenerateAffine",
            Error::DegenerateMargin { .. } => "DegenerateMargin",
            Error::InvalidLegendre(_) => "InvalidLegendre",
            Error::NonFinite(_) => "NonFinite",
            Error::InvalidProblem(_) => "InvalidProblem",
            Error::Contract(_) => "Contract",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
