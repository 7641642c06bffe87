use thiserror::Error;

pub type Result<T> = std::result::Result<T, NlsError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NlsError {
    /// An input lies outside the documented domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// There is no bound state at this frequency (`0 < omega <= alpha^2`).
    #[error("no bound state: omega = {omega} must exceed alpha^2 = {alpha_sq}")]
    NoBoundState { omega: f64, alpha_sq: f64 },

    /// No positive bound state has mass `mu`.
    #[error("no positive bound state of mass {mu}")]
    NoBoundStateOfMass { mu: f64 },

    /// The requested mass lies outside the image of the selected branch.
    #[error("mass {mu} is outside the range of the selected branch")]
    OutOfRange { mu: f64 },

    /// The branch selector does not fit the monotonicity regime of (p, alpha).
    #[error("branch selector {selector} is inconsistent with p = {p}, alpha = {alpha}")]
    BranchInvalid {
        selector: &'static str,
        p: f64,
        alpha: f64,
    },

    #[error("root finding failed: {0}")]
    Convergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is neither `Clone` nor `PartialEq`; keep the message only.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for NlsError {
    fn from(err: std::io::Error) -> Self {
        NlsError::Io(IoError(err.to_string()))
    }
}

impl NlsError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        NlsError::Domain(msg.into())
    }
}
