//! Periodic-box Fourier analysis: lattices, transforms, multipliers and norms.

mod admissible;
mod fft;
mod field;
mod grid;
mod multiplier;
mod norms;

pub mod data;

pub use admissible::{is_admissible, AdmissiblePair};
pub use field::{Field, Spectrum};
pub use grid::{add, dot, neg, norm, norm_sqr, scale, Freq, Grid, Wavevector};
pub use multiplier::{
    apply_all, apply_multiplier, gradient_component, i_symbol, lp_bump, DerivativeSign,
    MultiplierSpec,
};
pub use norms::{
    gradient_magnitude, gradient_norm, lebesgue_norm, magnitude_norm, spacetime_gradient_norm,
    spacetime_norm, time_norm, z_norm,
};
