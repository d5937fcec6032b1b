//! Error taxonomy for the solver pipeline.
//!
//! Structural errors (bad dimensions, non-Hermitian inputs, unsupported
//! parameter regimes) are distinguished from numerical-accuracy errors
//! (eigendecomposition residual too large, near-degenerate eigenbasis,
//! resonant Lyapunov denominators) so callers can map them to different
//! exit codes.

use thiserror::Error;

/// All errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix dimensions are inconsistent with the declared mode count.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A matrix that must be Hermitian is not, beyond tolerance.
    #[error("matrix {name} is not Hermitian: relative residual {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian {
        name: &'static str,
        residual: f64,
        tol: f64,
    },

    /// A bath matrix has a negative eigenvalue beyond tolerance.
    #[error("matrix {name} is not positive semidefinite: min eigenvalue {min_eig:.6e}")]
    NotPositiveSemidefinite { name: &'static str, min_eig: f64 },

    /// A model or experiment parameter is out of its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The eigenvector matrix is too ill-conditioned to invert reliably.
    #[error("eigenbasis is near-degenerate: cond(W) = {cond:.3e} exceeds {limit:.1e}")]
    DegenerateEigenbasis { cond: f64, limit: f64 },

    /// An eigendecomposition or reconstruction residual exceeded tolerance.
    #[error("{what} residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge {
        what: &'static str,
        residual: f64,
        tol: f64,
    },

    /// A Lyapunov denominator λ_m + conj(λ_n) is resonant (too close to zero).
    #[error(
        "steady state is ill-defined: eigenvalue pair ({m}, {n}) has \
         |λ_m + conj(λ_n)| = {denom:.3e} below threshold {tol:.3e}"
    )]
    ResonantPair {
        m: usize,
        n: usize,
        denom: f64,
        tol: f64,
    },

    /// A matrix required to be invertible is numerically singular.
    #[error("singular matrix encountered in {0}")]
    Singular(&'static str),

    /// The matrix logarithm ran on a defective (non-diagonalizable) input.
    #[error("matrix logarithm requires a diagonalizable input: cond(V) = {cond:.3e}")]
    NotDiagonalizable { cond: f64 },

    /// The truncated-Fock oracle would exceed its size budget or is untrustworthy.
    #[error("Fock-space oracle: {0}")]
    FockOracle(String),

    /// A physically impossible observable was produced (e.g. negative density).
    #[error("unphysical result: {0}")]
    Unphysical(String),

    /// Power-law fit preconditions violated (need ≥ 2 strictly positive points).
    #[error("power-law fit: {0}")]
    FitDomain(String),

    /// Model file could not be parsed.
    #[error("failed to parse model file: {0}")]
    Parse(String),

    /// Underlying LAPACK call failed.
    #[error("linear-algebra backend error: {0}")]
    Lapack(#[from] ndarray_linalg::error::LinalgError),

    /// Filesystem error while reading or writing artifacts.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that indicate a numerical-accuracy failure on
    /// structurally valid input (as opposed to malformed input).
    pub fn is_accuracy(&self) -> bool {
        matches!(
            self,
            Error::DegenerateEigenbasis { .. }
                | Error::ResidualTooLarge { .. }
                | Error::ResonantPair { .. }
                | Error::NotDiagonalizable { .. }
        )
    }
}
