use thiserror::Error;

/// Errors raised by constructors, solvers and generators in this crate.
///
/// Every rejection names the violated invariant together with the measured
/// residual so borderline inputs can be audited.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite coordinate in vertex {vertex}")]
    NonFinite { vertex: usize },

    #[error(
        "vertices are affinely dependent: smallest singular value {smallest:e} \
         is below threshold {threshold:e}"
    )]
    AffinelyDependent { smallest: f64, threshold: f64 },

    #[error("invalid distance matrix: {reason} (residual {residual:e})")]
    InvalidDistanceMatrix { reason: String, residual: f64 },

    #[error("matrix is not symmetric (max asymmetry {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not positive semidefinite, eigenvalues {eigenvalues:?}")]
    NotPositiveSemidefinite { eigenvalues: Vec<f64> },

    #[error("numerical rank {rank} differs from required rank {expected}, eigenvalues {eigenvalues:?}")]
    RankMismatch {
        rank: usize,
        expected: usize,
        eigenvalues: Vec<f64>,
    },

    #[error("index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("point coincides with vertex {vertex}")]
    PointAtVertex { vertex: usize },

    #[error("cevian through vertex {vertex} is undefined: remaining coefficients sum to {sum:e}")]
    DegenerateCevian { vertex: usize, sum: f64 },

    #[error("dimension {dim} exceeds the supported bound {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no sample satisfied the constraint after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
