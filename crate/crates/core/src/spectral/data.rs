//! Initial data generators.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::field::{Field, Spectrum};
use super::grid::{norm, Grid};

/// `amplitude * exp(-|x - c|^2 / width^2)` centred in the box.
pub fn gaussian(grid: Grid, amplitude: f64, width: f64) -> Field {
    let c = grid.box_length() / 2.0;
    let dim = grid.dim();
    Field::from_fn(grid, |x| {
        let r2: f64 = x.iter().take(dim).map(|xa| (xa - c) * (xa - c)).sum();
        Complex64::new(amplitude * (-r2 / (width * width)).exp(), 0.0)
    })
}

/// Random coefficients on retained modes with `lower <= |xi| <= upper`,
/// weighted by `(1 + |xi|)^{-decay}`.
pub fn random_band<R: Rng + ?Sized>(
    grid: Grid,
    lower: f64,
    upper: f64,
    decay: f64,
    rng: &mut R,
) -> Spectrum {
    let mut s = Spectrum::zeros(grid);
    for j in 0..grid.len() {
        let k = grid.wavevector(j);
        let r = norm(&grid.frequency(j));
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        if grid.is_retained(&k) && r >= lower && r <= upper {
            s.coeffs_mut()[j] = Complex64::new(re, im) * (1.0 + r).powf(-decay);
        }
    }
    s
}

/// Random trigonometric polynomial with frequencies `|xi| <= cutoff`, scaled
/// to root-mean-square amplitude `amplitude`.
pub fn random_bandlimited<R: Rng + ?Sized>(
    grid: Grid,
    cutoff: f64,
    amplitude: f64,
    rng: &mut R,
) -> Field {
    let s = random_band(grid, 0.0, cutoff, 0.0, rng);
    let rms = (s.l2_norm_sqr() / grid.volume()).sqrt();
    if rms == 0.0 {
        return Field::zeros(grid);
    }
    s.inverse_transform()
        .scaled(Complex64::new(amplitude / rms, 0.0))
}

/// Uniform random phase in `[0, 2 pi)`.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>())
}
