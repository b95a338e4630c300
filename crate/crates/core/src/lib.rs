//! Numerical toolkit for the Legendre oscillator.
//!
//! The oscillator is the generalized oscillator whose position operator is
//! the Jacobi matrix of the normalized Legendre recurrence. This crate builds
//! its truncated operators, the Barut-Girardello states (eigenvectors of the
//! annihilation operator) and the Gazeau-Klauder temporally stable states,
//! and checks the identities they satisfy: operator algebra, moment problems
//! behind the resolution of identity, closed-form overlaps and photon-number
//! statistics.
//!
//! Module map:
//!
//! - [`specfun`]: Pochhammer symbols, `2F1`, Legendre `P_n` and `P_ν`, elliptic `K`, `E`, `D`.
//! - [`oscillator`]: `b_n`, `ρ_n`, spectra and truncated operators.
//! - [`quadrature`]: adaptive Gauss-Kronrod with point atoms; Gauss-Legendre rules.
//! - [`weight`]: the Legendre weight function and radial measures.
//! - [`bg`]: Barut-Girardello states, wavefunctions, overlaps and their measure.
//! - [`gk`]: Gazeau-Klauder states, weight, evolution and number statistics.
//! - [`verify`]: the check suite driven by the `losc` command-line tool.

pub mod bg;
pub mod error;
pub mod gk;
pub mod oscillator;
pub mod quadrature;
pub mod specfun;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
