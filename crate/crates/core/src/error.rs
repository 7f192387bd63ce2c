//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the summation pipeline.
///
/// Truncation loss of series operations is deliberately *not* an error; it is
/// reported through [`crate::powerseries::TruncationLoss`] so that callers can
/// decide whether dropped mass matters.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),

    #[error("parse: {0}")]
    Parse(String),

    #[error("q-factorial overflow at n = {0}")]
    Overflow(usize),

    #[error("evaluation point within {guard:e} of a pole of Exp_q (factor {factor:e})")]
    PoleProximity { guard: f64, factor: f64 },

    #[error("series has a nonzero constant term (|c| = {0:e}); q-Borel transform undefined")]
    NonzeroConstantTerm(f64),

    #[error("Newton polygon does not have the admissible shape; corner index unavailable")]
    ShapeMismatch,

    #[error("root finding did not converge: residual {residual:e} > tol {tol:e}")]
    RootFindingFailure { residual: f64, tol: f64 },

    #[error("sector too degenerate: delta-hat {delta:e} below floor {floor:e}")]
    DegenerateSector { delta: f64, floor: f64 },

    #[error("resonant index n = {0}: |P1([n]_q; 0)| below tolerance with nonzero data")]
    ResonantIndex(usize),

    #[error("coefficient growth exceeds every q-Gevrey rate over the fit window")]
    GrowthExceeded,

    #[error("structural assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("t-order property violated: {0}")]
    OrderViolation(String),

    #[error("Jackson sum did not converge within {0} terms")]
    NonconvergentTail(usize),

    #[error("convolution node index {index} above grid top {k_max}")]
    GridUnderflow { index: i64, k_max: i64 },

    #[error("sub-grid node |xi| = {xi_abs:e} exceeds Taylor trust radius {radius:e}")]
    TaylorTrustExceeded { xi_abs: f64, radius: f64 },

    #[error("pivot |P(xi_k, 0)| = {pivot:e} below floor {floor:e} at node k = {k}")]
    PivotTooSmall { k: i64, pivot: f64, floor: f64 },

    #[error("no admissible rate h <= {h_cap:e} bounds the data (best ratio {best:e})")]
    BoundUnfittable { h_cap: f64, best: f64 },

    #[error("bilateral q-Laplace tail not converged: estimate {estimate:e} > tol {tol:e}")]
    TailNotConverged { estimate: f64, tol: f64 },

    #[error("contour quadrature not converged: node doubling moved result by {delta:e}")]
    QuadratureNonconvergence { delta: f64 },

    #[error("Watson hypothesis {which} failed: {detail}")]
    HypothesisFailed { which: &'static str, detail: String },

    #[error("point off the geometric ray lattice: {0}")]
    OffRay(String),

    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit code classification used by the command-line driver:
    /// 2 validation, 3 numeric failure, 4 certificate failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Parse(_) | Error::Json(_) => 2,
            Error::AssumptionViolated(_) | Error::ShapeMismatch => 2,
            Error::GrowthExceeded
            | Error::BoundUnfittable { .. }
            | Error::HypothesisFailed { .. } => 4,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}
