use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Two of the three input points coincide within the distinctness guard.
    #[error(
        "degenerate input: points {i} and {j} are {distance:.3e} apart \
         (configuration scale {scale:.3e})"
    )]
    DegenerateInput {
        i: usize,
        j: usize,
        distance: f64,
        scale: f64,
    },

    #[error("unknown preset `{0}` (expected borromean, split-unlink or borromean-reversed)")]
    UnknownPreset(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    /// Two link components pass closer than the configured separation.
    #[error(
        "components {first} and {second} are {distance:.3e} apart at parameters \
         ({theta_first:.4}, {theta_second:.4}); minimum allowed is {minimum:.3e}"
    )]
    DisjointnessViolation {
        first: char,
        second: char,
        distance: f64,
        theta_first: f64,
        theta_second: f64,
        minimum: f64,
    },

    #[error("not a rotation: determinant {det:.6} or non-orthonormal rows")]
    NotARotation { det: f64 },

    /// A Gauss-integral linking number and the matching subtorus degree
    /// disagree beyond quadrature slack.
    #[error("linking/degree mismatch for {entry}: Gauss integral {linking:.6}, subtorus degree {degree:.6}")]
    CorrespondenceMismatch {
        entry: &'static str,
        linking: f64,
        degree: f64,
    },

    /// The μ formulas are only valid when all pairwise linking numbers vanish.
    #[error("pairwise linking numbers are not all zero: {reason}")]
    NotNullHomologous { reason: String },

    #[error("helicity grid {n} exceeds the cap of {cap} (the double sum is O(N^6))")]
    GridTooLarge { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
