use thiserror::Error;

use crate::domain::Violation;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HilbertError {
    #[error("point lies on the boundary (zero distance to a chord endpoint)")]
    PointOnBoundary,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("point maps onto the vanishing line")]
    VanishingLine,
    #[error("line misses the domain")]
    LineMissesDomain,
    #[error("boundary is not C² at this point")]
    NotC2,
    #[error("image of the domain is unbounded")]
    UnboundedImage,
    #[error("point ({x}, {y}) is not interior")]
    PointNotInterior { x: f64, y: f64 },
    #[error("geodesics are not asymptotic: {0}")]
    NotAsymptotic(String),
    #[error("support line undefined at the shared endpoint")]
    SupportLineUndefined,
    #[error("denominator is not positive")]
    DenominatorNonpositive,
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("degenerate chord: x <= y")]
    DegenerateChord,
    #[error("infeasible interpolation data: {0}")]
    InfeasibleData(String),
    #[error("solver did not converge: {0}")]
    SolverDidNotConverge(String),
    #[error("convexity violated: {0}")]
    ConvexityViolated(String),
    #[error("shared endpoint is not a polygon vertex")]
    NotAVertex,
    #[error("invalid domain: {}", format_violations(.0))]
    InvalidDomain(Vec<Violation>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl HilbertError {
    /// True for failures of an iterative numeric procedure, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, HilbertError::SolverDidNotConverge(_))
    }
}
