use num_complex::Complex64;

use super::trajectory::Trajectory;
use crate::error::{Error, Result};
use crate::spectral::{norm_sqr, Field, Spectrum};

/// `e^{i t Laplace}` on coefficients: multiplies by `e^{-i t |xi|^2}`.
pub fn free_evolve_spectrum(s: &Spectrum, t: f64) -> Spectrum {
    s.map_with_freq(|xi, c| c * Complex64::from_polar(1.0, -t * norm_sqr(xi)))
}

pub fn free_evolve(u: &Field, t: f64) -> Field {
    free_evolve_spectrum(&u.transform(), t).inverse_transform()
}

/// `u = u_l + u_nl` with `u_l(t) = e^{i (t - t0) Laplace} u(t0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub linear: Trajectory,
    pub nonlinear: Trajectory,
    pub origin_time: f64,
}

/// Splits a trajectory into its free part (the flow from `t0`) and the
/// nonlinear remainder. `t0` must be the first recorded time.
pub fn duhamel_split(traj: &Trajectory, t0: f64) -> Result<DecompositionResult> {
    let first = traj.first_time();
    if (first - t0).abs() > 1e-12 * first.abs().max(1.0) {
        return Err(Error::TimeOrigin {
            first,
            requested: t0,
        });
    }
    let u0 = &traj.states()[0];
    let s0 = u0.transform();
    let linear = traj.map(|t, _| {
        if t == first {
            Ok(u0.clone())
        } else {
            Ok(free_evolve_spectrum(&s0, t - first).inverse_transform())
        }
    })?;
    let nonlinear = Trajectory::new(
        traj.times().to_vec(),
        traj.states()
            .iter()
            .zip(linear.states())
            .map(|(u, l)| u.sub(l))
            .collect::<Result<Vec<_>>>()?,
    )?;
    Ok(DecompositionResult {
        linear,
        nonlinear,
        origin_time: first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nls::{evolve, SolverConfig};
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    #[test]
    fn nonlinear_part_vanishes_at_origin() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let u0 = Field::plane_wave(g, [2, 0, 0], Complex64::new(0.8, 0.0));
        let cfg = SolverConfig::new(g, 0.01, 0.5, 10).unwrap();
        let traj = evolve(&u0, &cfg).unwrap();
        let d = duhamel_split(&traj, 0.0).unwrap();
        assert!(d.nonlinear.states()[0]
            .values()
            .iter()
            .all(|z| *z == Complex64::new(0.0, 0.0)));
        assert!(duhamel_split(&traj, 0.1).is_err());
        // plane wave: |u_nl(t)| = |c| V^{1/2} |e^{-i |c|^2 t} - 1|
        for (t, w) in d.nonlinear.iter() {
            let expect =
                0.8 * (2.0 * PI).sqrt() * (Complex64::from_polar(1.0, -0.64 * t) - 1.0).norm();
            assert!((w.l2_norm_sqr().sqrt() - expect).abs() < 1e-12, "t = {t}");
        }
    }
}
