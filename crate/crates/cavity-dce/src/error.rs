use crate::C64;

/// Errors surfaced by the simulation and analysis pipelines.
///
/// Configuration problems are kept separate from numerical failures so the
/// CLI can map them to distinct exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Integration produced a non-finite amplitude. The time of blow-up is
    /// part of the signal: parametric instability surfaces here.
    #[error("non-finite state at t = {t}: integration blew up (or the step is too large)")]
    NonFinite { t: f64 },

    #[error("state is at t = {actual} but Bogoliubov extraction needs the rest-wall time {expected}")]
    NotAtRest { actual: f64, expected: f64 },

    #[error("closed-form resonance results require integer gamma, got {gamma}")]
    NonIntegerGamma { gamma: f64 },

    #[error("short-time expansion invalid: eps*omega1*T = {value} exceeds {limit}")]
    OutsideSecularRegime { value: f64, limit: f64 },

    #[error("mode window too small: {0}")]
    WindowTooSmall(String),

    #[error("eigensolver failed to converge after {iterations} iterations (worst residual {worst_residual:.3e})")]
    EigenNonConvergence {
        iterations: usize,
        worst_residual: f64,
        /// Whatever part of the spectrum was obtained before giving up.
        partial_values: Vec<C64>,
    },

    #[error("eigenvalues degenerate within {tol:.3e}: {first} and {second}")]
    DegenerateEigenvalues { first: C64, second: C64, tol: f64 },

    #[error("eigenvector matrix ill-conditioned (cond = {cond:.3e}); exponents are degenerate at this truncation")]
    IllConditioned { cond: f64 },

    #[error("ambiguous Floquet branch while tracking exponents: candidates {candidates:?}")]
    AmbiguousBranch { candidates: Vec<C64> },
}

impl Error {
    /// True for errors that indicate a numerical failure rather than bad
    /// input.
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::InvalidConfig(_) | Error::DimensionMismatch(_) | Error::WindowTooSmall(_)
        )
    }
}
