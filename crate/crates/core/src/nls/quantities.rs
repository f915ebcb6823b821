use num_complex::Complex64;

use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::reduce::pairwise_sum;
use crate::spectral::{
    apply_multiplier, norm_sqr, spacetime_norm, Field, Grid, MultiplierSpec, Spectrum,
};

/// `int |u|^2`.
pub fn mass(field: &Field) -> f64 {
    field.l2_norm_sqr()
}

/// `1/2 int |grad u|^2`, spectrally.
pub fn kinetic_energy(s: &Spectrum) -> f64 {
    0.5 * s.weighted_norm_sqr(norm_sqr)
}

/// `1/4 int |u|^4`, evaluated on the doubled grid so the quartic integrand of a
/// trigonometric polynomial is integrated exactly.
pub fn potential_energy(s: &Spectrum) -> f64 {
    let u = s
        .resample(2 * s.grid().modes())
        .expect("doubling a valid grid is valid")
        .inverse_transform();
    let q: Vec<f64> = u
        .values()
        .iter()
        .map(|z| z.norm_sqr() * z.norm_sqr())
        .collect();
    0.25 * pairwise_sum(&q) * u.grid().cell_volume()
}

pub fn energy_of_spectrum(s: &Spectrum) -> f64 {
    kinetic_energy(s) + potential_energy(s)
}

/// `1/2 int |grad u|^2 + 1/4 int |u|^4`.
pub fn energy(field: &Field) -> f64 {
    energy_of_spectrum(&field.transform())
}

/// `E(I u)` with `I = I_{N,s}`.
pub fn energy_i(field: &Field, n: f64, s: f64) -> Result<f64> {
    let iu = apply_multiplier(&field.transform(), &MultiplierSpec::i_operator(n, s)?)?;
    Ok(energy_of_spectrum(&iu))
}

/// `max{1, ||u||_{L^4_{t,x}}^4}^{1/q}`.
pub fn m_factor(traj: &Trajectory, q: f64) -> Result<f64> {
    if q.is_nan() || q <= 0.0 {
        return Err(Error::InvalidExponent(format!(
            "q must lie in (0, inf], got {q}"
        )));
    }
    if q.is_infinite() {
        return Ok(1.0);
    }
    let l4 = spacetime_norm(traj, 4.0, 4.0)?;
    Ok(l4.powi(4).max(1.0).powf(1.0 / q))
}

/// `u^lambda(x) = lambda^{-1} u(x / lambda)` on the box of side `lambda L`.
///
/// The coefficient at integer wavevector `k` becomes `lambda^{d-1}` times the
/// old one; frequencies shrink by `lambda`.
pub fn rescale(field: &Field, lambda: f64) -> Result<Field> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "scaling parameter must be positive, got {lambda}"
        )));
    }
    let g = field.grid();
    let target = Grid::new(g.dim(), g.modes(), lambda * g.box_length())?;
    let factor = lambda.powi(g.dim() as i32 - 1);
    let coeffs: Vec<Complex64> = field
        .transform()
        .coeffs()
        .iter()
        .map(|c| c * factor)
        .collect();
    Ok(Spectrum::new(target, coeffs)?.inverse_transform())
}
