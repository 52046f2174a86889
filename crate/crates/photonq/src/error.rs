use thiserror::Error;

/// Errors produced by the photonq library.
#[derive(Error, Debug)]
pub enum Error {
    /// Two states or fields live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A zero state was passed where a normalizable one is required.
    #[error("null state cannot be normalized")]
    NullState,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Nodes too close to the k_z axis dominate a quadrature that involves
    /// the connection alpha(k), which is singular there.
    #[error(
        "connection singularity: {flagged} of {total} nodes lie within the k_perp cutoff \
         (eps = {eps:.2e}) and carry a fraction {share:.3e} of the state"
    )]
    ConnectionSingularity {
        flagged: usize,
        total: usize,
        eps: f64,
        share: f64,
    },

    #[error("mode set mismatch: {0}")]
    ModeSetMismatch(String),

    /// A truncated expansion would drop more probability than allowed.
    #[error("truncation tail {tail:.3e} exceeds tolerance {tol:.3e}; increase n_max")]
    TruncationTail { tail: f64, tol: f64 },

    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),

    #[error("unnormalized state: |norm^2 - 1| = {0:.3e}")]
    Unnormalized(f64),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
