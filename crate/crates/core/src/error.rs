use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A coin failed one of the U(2) identities.
    #[error("coin is not unitary: {identity} violated (residual {residual:.3e})")]
    NonUnitary {
        identity: &'static str,
        residual: f64,
    },

    #[error("qubit state is not normalized: |alpha|^2 + |beta|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("weak limit requires abcd != 0, but |{entry}| = {modulus:.3e}")]
    DegenerateCoin { entry: char, modulus: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{point} is within {distance:.3e} of a singularity of {what}")]
    NearSingularity {
        what: &'static str,
        point: String,
        distance: f64,
    },

    #[error("continued fraction is depth-unstable: denominator vanished at level {level}")]
    DepthUnstable { level: usize },

    #[error("moment recovery is ill-conditioned at level {level}: {reason}")]
    IllConditioned { level: usize, reason: String },

    #[error("Stieltjes inversion did not converge at x = {x}: extrapolants differ by {spread:.3e}")]
    NonConvergent { x: f64, spread: f64 },

    #[error("division guard tripped: 1 - c^2 + c^2 s = {value:.3e} (boundary-degenerate)")]
    BoundaryDegenerate { value: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
