//! Photon creation by parametric resonance in a 1D cavity with an
//! oscillating wall.
//!
//! The cavity has one fixed mirror at `x = 0` and one mirror whose position
//! follows `L(t) = L0 [1 + eps sin(Omega t)]` for `0 < t < T`, at rest
//! outside that window. A massless field in the cavity is expanded over the
//! instantaneous sine modes; the expansion coefficients obey a coupled
//! oscillator hierarchy that this crate truncates to `K` modes and studies
//! three ways:
//!
//! * [`evolve`] integrates the coupled system through the wall motion and
//!   extracts Bogoliubov coefficients, per-mode photon numbers `N_k`, and
//!   monodromy matrices for Floquet analysis,
//! * [`perturbation`] carries the closed-form first-order results valid in
//!   the short-time regime `eps * omega1 * T << 1`,
//! * [`floquet`] builds the characteristic-exponent matrix coupling every
//!   mode to its `gamma`-th neighbors, solves its eigenproblem, and matches
//!   initial conditions for long-time solutions.
//!
//! [`cavity`] holds the shared geometry, frequencies, and coupling
//! coefficients; [`linalg`] the dense eigensolver and complex LU kernels;
//! [`acceptance`] the end-to-end validation checks driven by the CLI and the
//! integration tests.
//!
//! Everything is deterministic: fixed-step integration, fixed summation
//! orders, no threading. Identical inputs give bit-identical outputs on one
//! platform.

pub mod acceptance;
pub mod cavity;
pub mod evolve;
pub mod floquet;
pub mod linalg;
pub mod perturbation;

mod error;

pub use cavity::{CavityConfig, Sign, SignedMode};
pub use error::Error;

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex scalar used for mode amplitudes and spectra.
pub type C64 = num_complex::Complex64;
