use thiserror::Error;

pub type Result<T> = std::result::Result<T, SymgateError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymgateError {
    #[error("matrix is not unitary (max |M†M - I| = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not hermitian (max |H - H†| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("unsupported matrix dimension {0} (expected {1})")]
    InvalidDimension(usize, &'static str),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("invalid sample count {count} (minimum {minimum})")]
    InvalidCount { count: usize, minimum: usize },

    #[error("rotation axis must be a unit vector (got norm {norm})")]
    BadAxis { norm: f64 },

    #[error("invalid grid resolution {resolution} (minimum {minimum})")]
    InvalidResolution { resolution: usize, minimum: usize },

    #[error("invalid time range [{start}, {end}] with {steps} steps")]
    InvalidRange { start: f64, end: f64, steps: usize },

    #[error("{name} = {value} is outside its domain")]
    InvalidAngle { name: &'static str, value: f64 },

    #[error("state has zero norm")]
    ZeroState,

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("two-qubit gate does not preserve the symmetric subspace (off-block norm {off_block:e})")]
    NotReducible { off_block: f64 },

    #[error("internal mismatch in {what}: {lhs} vs {rhs}")]
    InternalMismatch {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },

    #[error("hull test ({hull}) and chamber test ({chamber}) disagree at hull margin {margin:e}")]
    ClassifierMismatch {
        hull: bool,
        chamber: bool,
        margin: f64,
    },

    #[error("malformed gate description: {0}")]
    Schema(String),

    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
}

impl SymgateError {
    /// Errors that signal a numerical precondition failure on otherwise
    /// well-formed input, as opposed to a usage or validation problem.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            SymgateError::NotUnitary { .. }
                | SymgateError::NotHermitian { .. }
                | SymgateError::NotReducible { .. }
                | SymgateError::InternalMismatch { .. }
                | SymgateError::ClassifierMismatch { .. }
        )
    }
}
