//! Error type shared by every operation in the crate.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("body is unbounded: support diverges in direction {direction:?}")]
    UnboundedBody { direction: Vec<f64> },
    #[error("base point is not in the interior of the body")]
    BaseNotInterior,
    #[error("point is not in the interior of the body")]
    PointNotInterior,
    #[error("origin is not in the interior of the body")]
    OriginNotInterior,
    #[error("degenerate hull: affine hull has dimension {rank} < {dim}")]
    DegenerateHull { rank: usize, dim: usize },
    #[error("delta {delta} exceeds the inradius {inradius}")]
    DeltaExceedsInradius { delta: f64, inradius: f64 },
    #[error("quadrature did not converge: estimated relative error {estimated} > tolerance {tolerance}")]
    QuadratureNotConverged { estimated: f64, tolerance: f64 },
    #[error("insufficient points in fit window: {got} < {needed}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("curve covers {decades:.2} decades, need at least {needed:.1}")]
    CurveTooNarrow { decades: f64, needed: f64 },
    #[error("pole is not the nearest boundary point at distance {d} (guard {guard})")]
    PoleNotNearest { d: f64, guard: f64 },
    #[error("argument outside the formula domain: {0}")]
    DomainError(String),
    #[error("delta {delta} too large for this domain (limit {limit})")]
    DeltaTooLarge { delta: f64, limit: f64 },
    #[error("pair distance {distance} falls outside the curve grid [{lo}, {hi}]")]
    EmptyCurveRange { distance: f64, lo: f64, hi: f64 },
    #[error("degenerate ray: |b_bar - a| below 1e-12")]
    CollinearDegeneracy,
    #[error("point lies outside the closed domain")]
    PointOutsideDomain,
    #[error("invalid body specification: {0}")]
    InvalidBody(String),
    #[error("linear program is infeasible")]
    LpInfeasible,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
