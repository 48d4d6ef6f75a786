use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("log-gamma pole: {0} is a non-positive integer")]
    GammaPole(f64),

    #[error("no admissible contour: {0}")]
    Contour(String),

    #[error("{what} did not converge: achieved {achieved:.3e}, target {target:.3e} (value {value:.6e})")]
    Convergence {
        what: &'static str,
        value: f64,
        achieved: f64,
        target: f64,
    },

    #[error("degenerate moment fit: {0}")]
    DegenerateFit(String),

    #[error("scenario configuration: {0}")]
    Scenario(String),

    #[error("{context}: {source}")]
    InKernel {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wraps an error with the name of the kernel being evaluated, so metric
    /// failures identify which term of which closed form broke.
    pub fn in_kernel(self, context: impl Into<String>) -> Self {
        Error::InKernel {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
