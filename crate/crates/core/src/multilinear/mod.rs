//! Functionals on the frequency hyperplanes `Sigma_k = {xi_1 + ... + xi_k = 0}`.
//!
//! For a symbol `M` and fields `u_1, ..., u_k`,
//!
//! `Lambda_k(M; u_1..u_k) = Re sum M(xi_1..xi_k) u1_hat(xi_1) conj(u2_hat(-xi_2)) u3_hat(xi_3) ...`
//!
//! with odd slots plain and even slots conjugated. Sums run over the retained
//! lattice of the grid and carry the weight `(dxi)^{d(k-1)} (2 pi)^{-d(k-2)/2}`,
//! which is what makes `Lambda_2(|xi_1|^2 / 2)` the Dirichlet energy and
//! `Lambda_4(1/4)` the quartic potential energy.

mod energy;
mod lattice;
mod resonance;
mod symbol;
mod tuple;

pub use energy::{
    energy_identity_gap, increment_integrands, increment_residual, modified_energy, pointwise_gap,
    IncrementSeries,
};
pub use lattice::{
    lambda2, lambda4, lambda4_complex, lambda4_with, lambda6_extended, lambda_weight, Lambda6Range,
    RetainedModes,
};
pub use resonance::{
    alpha4, alternating_square_sum, cos_angle, increment_symbol4, increment_symbol4_forms,
    increment_symbol4_left, increment_symbol_k, modified_sextic_symbol, region, resonant_indicator,
    sigma2, sigma2_symbol, sigma4, sigma4_symbol, sigma4_tilde, sigma4_tilde_symbol,
    weighted_alternating_sum, x_sigma2_symbol, Region, ResonanceSpec,
};
pub use symbol::{extend, symmetrize, symmetrize_with, SymbolK};
pub use tuple::FrequencyTuple;
