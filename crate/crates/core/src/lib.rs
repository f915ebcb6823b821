//! Spectral laboratory for the I-method on the defocusing cubic NLS
//! `i u_t + Laplace u = |u|^2 u`, posed on a periodic box.
//!
//! The crate is organised bottom-up: [`spectral`] holds lattices, transforms,
//! multipliers and norms; [`nls`] the split-step integrator and the conserved
//! quantities; [`multilinear`] the frequency-hyperplane functionals and the
//! modified energy; [`estimates`] the sampling harness for symbol bounds and
//! decay sweeps; [`exponents`] exact rational bookkeeping.

pub mod error;
pub mod estimates;
pub mod exponents;
pub mod multilinear;
pub mod nls;
pub mod reduce;
pub mod spectral;

pub use error::{Error, Result};
pub use exponents::{Exponent, Lebesgue, Rational};
pub use multilinear::{FrequencyTuple, ResonanceSpec, SymbolK};
pub use nls::{SolverConfig, Trajectory};
pub use spectral::{AdmissiblePair, Field, Grid, MultiplierSpec, Spectrum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
