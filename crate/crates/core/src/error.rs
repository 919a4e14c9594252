use thiserror::Error;

use crate::geom::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points coincide within tolerance")]
    CoincidentPoints,
    #[error("homothety ratio must be positive, got {0}")]
    NonPositiveRatio(f64),
    #[error("non-finite coordinate in site {0}")]
    NonFinite(usize),
    #[error("site {0} is degenerate (endpoints coincide) and point sites are not enabled")]
    DegenerateSegment(usize),
    #[error("beta {beta} is out of range for {what}")]
    BetaOutOfRange { beta: f64, what: &'static str },
    #[error("refraction angle {0} must lie in (0, pi)")]
    DeltaOutOfRange(f64),
    #[error("invalid input set: {0}")]
    InvalidInput(Violation),
    #[error("the site set is empty")]
    EmptySiteSet,
    #[error("grid resolution {0} is below the minimum of 16")]
    ResolutionTooSmall(usize),
    #[error("frame has parallel supporting lines")]
    ParallelFrame,
    #[error("disc radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("duplicate point at index {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("site index {0} is out of range")]
    IndexOutOfRange(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
