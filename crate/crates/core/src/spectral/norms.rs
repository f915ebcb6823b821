//! Lebesgue and mixed space-time norms on the lattice.

use super::admissible::AdmissiblePair;
use super::field::{Field, Spectrum};
use super::multiplier::{apply_multiplier, gradient_component, MultiplierSpec};
use crate::error::{Error, Result};
use crate::nls::Trajectory;
use crate::reduce::pairwise_sum;

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(format!(
            "Lebesgue exponent {p} outside [1, inf]"
        )));
    }
    Ok(())
}

/// `(sum |f|^p (L/M)^d)^{1/p}` for pointwise magnitudes `f`, or `max |f|` for `p = inf`.
pub fn magnitude_norm(mags: &[f64], cell_volume: f64, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(mags.iter().copied().fold(0.0, f64::max));
    }
    let powered: Vec<f64> = if p == 2.0 {
        mags.iter().map(|m| m * m).collect()
    } else {
        mags.iter().map(|m| m.powf(p)).collect()
    };
    Ok((pairwise_sum(&powered) * cell_volume).powf(1.0 / p))
}

pub fn lebesgue_norm(field: &Field, p: f64) -> Result<f64> {
    let mags: Vec<f64> = field.values().iter().map(|z| z.norm()).collect();
    magnitude_norm(&mags, field.grid().cell_volume(), p)
}

/// Pointwise `|grad u|` of the trigonometric polynomial behind `spectrum`.
pub fn gradient_magnitude(spectrum: &Spectrum) -> Vec<f64> {
    let dim = spectrum.grid().dim();
    let mut acc = vec![0.0; spectrum.grid().len()];
    for axis in 0..dim {
        let comp = gradient_component(spectrum, axis).inverse_transform();
        for (a, z) in acc.iter_mut().zip(comp.values()) {
            *a += z.norm_sqr();
        }
    }
    acc.iter_mut().for_each(|a| *a = a.sqrt());
    acc
}

/// `||grad u||_{L^p}`; the `p = 2` case is computed on the spectral side.
pub fn gradient_norm(spectrum: &Spectrum, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let g = spectrum.grid();
    if p == 2.0 {
        let sq: Vec<f64> = spectrum
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| super::grid::norm_sqr(&g.frequency(j)) * c.norm_sqr())
            .collect();
        return Ok((pairwise_sum(&sq) * g.freq_cell_volume()).sqrt());
    }
    magnitude_norm(&gradient_magnitude(spectrum), g.cell_volume(), p)
}

/// `(int ||f(t)||^q dt)^{1/q}` by the trapezoid rule on the sample times, or
/// the maximum for `q = inf`. A single finite-`q` sample spans no time and gives 0.
pub fn time_norm(times: &[f64], values: &[f64], q: f64) -> Result<f64> {
    check_exponent(q)?;
    if times.is_empty() || times.len() != values.len() {
        return Err(Error::Empty("time series".into()));
    }
    if q.is_infinite() {
        return Ok(values.iter().copied().fold(0.0, f64::max));
    }
    let powered: Vec<f64> = values.iter().map(|v| v.powf(q)).collect();
    let panels: Vec<f64> = times
        .windows(2)
        .zip(powered.windows(2))
        .map(|(t, f)| 0.5 * (t[1] - t[0]) * (f[0] + f[1]))
        .collect();
    Ok(pairwise_sum(&panels).powf(1.0 / q))
}

/// `||u||_{L_t^q L_x^r}` over the recorded samples.
pub fn spacetime_norm(traj: &Trajectory, q: f64, r: f64) -> Result<f64> {
    let inner = traj
        .states()
        .iter()
        .map(|u| lebesgue_norm(u, r))
        .collect::<Result<Vec<_>>>()?;
    time_norm(traj.times(), &inner, q)
}

/// `||grad P u||_{L_t^q L_x^r}` for the multiplier chain `specs`.
pub fn spacetime_gradient_norm(
    traj: &Trajectory,
    specs: &[MultiplierSpec],
    q: f64,
    r: f64,
) -> Result<f64> {
    let inner = traj
        .states()
        .iter()
        .map(|u| {
            let mut s = u.transform();
            for spec in specs {
                s = apply_multiplier(&s, spec)?;
            }
            gradient_norm(&s, r)
        })
        .collect::<Result<Vec<_>>>()?;
    time_norm(traj.times(), &inner, q)
}

/// `max_{(q, r) in pairs} ||grad I u||_{L_t^q L_x^r}` over a finite pair family.
pub fn z_norm(traj: &Trajectory, n: f64, s: f64, pairs: &[AdmissiblePair]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Empty("admissible pair list".into()));
    }
    let i = MultiplierSpec::i_operator(n, s)?;
    let mut best = 0.0f64;
    for pair in pairs {
        let v = spacetime_gradient_norm(traj, &[i], pair.q().to_f64(), pair.r().to_f64())?;
        best = best.max(v);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn constant_field_l2() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let c = Complex64::new(0.6, -0.8);
        let u = Field::from_fn(g, |_| c);
        let l2 = lebesgue_norm(&u, 2.0).unwrap();
        assert!((l2 - (2.0 * PI).sqrt()).abs() < 1e-13);
        assert!((lebesgue_norm(&u, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        assert!(lebesgue_norm(&u, 0.5).is_err());
    }

    #[test]
    fn gradient_norm_agrees_between_sides() {
        let g = Grid::new(2, 8, 2.0 * PI).unwrap();
        let u = Field::plane_wave(g, [1, 2, 0], Complex64::new(0.5, 0.0));
        let s = u.transform();
        let spectral = gradient_norm(&s, 2.0).unwrap();
        let physical = magnitude_norm(&gradient_magnitude(&s), g.cell_volume(), 2.0).unwrap();
        assert!((spectral - physical).abs() < 1e-12 * spectral);
        // |grad u| = |xi| |c| pointwise for a plane wave
        assert!((spectral - 5f64.sqrt() * 0.5 * 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_time_norm() {
        let t = [0.0, 0.5, 1.0];
        assert!((time_norm(&t, &[1.0, 1.0, 1.0], 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(time_norm(&t, &[1.0, 3.0, 2.0], f64::INFINITY).unwrap(), 3.0);
        assert_eq!(time_norm(&[0.0], &[5.0], 4.0).unwrap(), 0.0);
        assert!(time_norm(&[], &[], 2.0).is_err());
    }
}
