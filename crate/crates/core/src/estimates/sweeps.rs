//! Dyadic sweeps: smoothing of the nonlinear part, the pointwise energy gap,
//! almost conservation, and the free-evolution space-time ratio.

use rayon::prelude::*;

use super::report::{BoundReport, SweepReport};
use super::samplers::sample_rng;
use crate::error::{Error, Result};
use crate::exponents::Exponent;
use crate::multilinear::{modified_energy, pointwise_gap, ResonanceSpec};
use crate::nls::{duhamel_split, energy_i, evolve, free_evolve_spectrum, SolverConfig, Trajectory};
use crate::spectral::data::random_band;
use crate::spectral::{
    lebesgue_norm, spacetime_gradient_norm, spacetime_norm, AdmissiblePair, Field, Grid,
    MultiplierSpec,
};

/// Checks that `values` has at least four entries, each a power of two.
fn check_dyadic(what: &str, values: &[f64]) -> Result<()> {
    if values.len() < 4 {
        return Err(Error::InvalidConfig(format!(
            "{what} needs at least 4 dyadic values, got {}",
            values.len()
        )));
    }
    for &v in values {
        let k = v.log2();
        if !(v > 0.0 && v.is_finite() && (k - k.round()).abs() < 1e-12) {
            return Err(Error::InvalidConfig(format!(
                "{what} entry {v} is not dyadic"
            )));
        }
    }
    Ok(())
}

/// `||P_{>N_j} grad I u^nl||_{L_t^q L_x^r}` per `N_j`, with `u^nl` the
/// nonlinear Duhamel part taken from the first recorded time.
pub fn smoothing_profile(
    traj: &Trajectory,
    n: f64,
    s: f64,
    nj_list: &[f64],
    pair: AdmissiblePair,
) -> Result<SweepReport> {
    check_dyadic("N_j list", nj_list)?;
    if let Some(&bad) = nj_list.iter().find(|&&v| v > n) {
        return Err(Error::InvalidConfig(format!("N_j = {bad} exceeds N = {n}")));
    }
    let i = MultiplierSpec::i_operator(n, s)?;
    let nl = duhamel_split(traj, traj.first_time())?.nonlinear;
    let (q, r) = (pair.q().to_f64(), pair.r().to_f64());
    let values = nj_list
        .par_iter()
        .map(|&nj| spacetime_gradient_norm(&nl, &[MultiplierSpec::LpAbove { n: nj }, i], q, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::new(
        "N_j",
        format!("||P_>Nj grad I u_nl||_(L^{} L^{})", pair.q(), pair.r()),
        nj_list.to_vec(),
        values,
    ))
}

/// `|E(Iu_0) - E~(u_0)|` per `N`, with `theta_0 = N^{theta_exp}`.
pub fn pointwise_gap_sweep(
    u0: &Field,
    s: f64,
    n_list: &[f64],
    theta_exp: Exponent,
) -> Result<SweepReport> {
    check_dyadic("N list", n_list)?;
    let spectrum = u0.transform();
    let values = n_list
        .par_iter()
        .map(|&n| {
            Ok(pointwise_gap(&spectrum, &ResonanceSpec::with_exponent(n, s, theta_exp)?)?.abs())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::new(
        "N",
        "|E(Iu) - E~(u)|",
        n_list.to_vec(),
        values,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConservationSweep {
    /// `sup_t |E~(u(t)) - E~(u(t_0))|`.
    pub modified: SweepReport,
    /// `sup_t |E(Iu(t)) - E(Iu(t_0))|`.
    pub energy_i: SweepReport,
    pub trajectory_len: usize,
}

impl ConservationSweep {
    /// Strictly decreasing modified-energy increments whose slope is no larger
    /// than the slope of the `E(Iu)` increments.
    pub fn modified_no_worse(&self) -> bool {
        match (self.modified.slope(), self.energy_i.slope()) {
            (Some(a), Some(b)) => self.modified.strictly_decreasing() && a <= b,
            _ => false,
        }
    }
}

/// Evolves `u0` once and measures the increments of `E~` and `E(Iu)` over the
/// recorded states for each `N`.
pub fn conservation_sweep(
    u0: &Field,
    s: f64,
    n_list: &[f64],
    theta_exp: Exponent,
    cfg: &SolverConfig,
) -> Result<ConservationSweep> {
    check_dyadic("N list", n_list)?;
    let traj = evolve(u0, cfg)?;
    let spectra: Vec<_> = traj.states().par_iter().map(Field::transform).collect();
    let rows = n_list
        .par_iter()
        .map(|&n| {
            let spec = ResonanceSpec::with_exponent(n, s, theta_exp)?;
            let mut tilde = Vec::with_capacity(spectra.len());
            let mut ei = Vec::with_capacity(spectra.len());
            for (u, sp) in traj.states().iter().zip(&spectra) {
                tilde.push(modified_energy(sp, &spec)?);
                ei.push(energy_i(u, n, s)?);
            }
            let sup = |v: &[f64]| v.iter().map(|x| (x - v[0]).abs()).fold(0.0, f64::max);
            Ok((sup(&tilde), sup(&ei)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConservationSweep {
        modified: SweepReport::new(
            "N",
            "sup |E~(t) - E~(0)|",
            n_list.to_vec(),
            rows.iter().map(|r| r.0).collect(),
        ),
        energy_i: SweepReport::new(
            "N",
            "sup |E(Iu)(t) - E(Iu)(0)|",
            n_list.to_vec(),
            rows.iter().map(|r| r.1).collect(),
        ),
        trajectory_len: traj.len(),
    })
}

/// `||e^{it Laplace} u_0||_{L_t^q L_x^r([0, t_end])} / ||u_0||_{L^2}` over
/// random `u_0` with coefficients decaying like `(1 + |xi|)^{-1}`, the time
/// norm sampled at `n_times` equispaced instants.
pub fn strichartz_ratio(
    grid: Grid,
    pair: AdmissiblePair,
    t_end: f64,
    n_times: usize,
    n_samples: usize,
    seed: u64,
) -> Result<BoundReport> {
    if n_samples == 0 {
        return Err(Error::Empty("sample count".into()));
    }
    if n_times < 2 || !(t_end > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "need t_end > 0 and at least 2 instants, got {t_end}, {n_times}"
        )));
    }
    let (q, r) = (pair.q().to_f64(), pair.r().to_f64());
    let times: Vec<f64> = (0..n_times)
        .map(|k| t_end * k as f64 / (n_times - 1) as f64)
        .collect();
    let top = grid.dxi() * grid.max_retained() as f64 * (grid.dim() as f64).sqrt();
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let u0 = loop {
                let c = random_band(grid, 0.0, f64::INFINITY, 1.0, &mut rng);
                if c.l2_norm_sqr() > 0.0 {
                    break c;
                }
            };
            let states: Vec<Field> = times
                .iter()
                .map(|&t| free_evolve_spectrum(&u0, t).inverse_transform())
                .collect();
            let norm0 = lebesgue_norm(&states[0], 2.0)?;
            let traj = Trajectory::new(times.clone(), states)?;
            Ok((spacetime_norm(&traj, q, r)? / norm0, top))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::from_samples(
        format!("free evolution L^{} L^{}", pair.q(), pair.r()),
        &samples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::Lebesgue;
    use crate::nls::free_evolve;
    use crate::spectral::data::gaussian;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn dyadic_lists_are_checked() {
        assert!(check_dyadic("x", &[2.0, 4.0, 8.0]).is_err());
        assert!(check_dyadic("x", &[2.0, 4.0, 8.0, 12.0]).is_err());
        assert!(check_dyadic("x", &[0.5, 1.0, 2.0, 4.0]).is_ok());
    }

    #[test]
    fn free_trajectory_has_no_nonlinear_part() {
        let g = Grid::new(1, 32, 2.0 * PI).unwrap();
        let u0 = gaussian(g, 1.0, 0.7);
        let times: Vec<f64> = (0..6).map(|k| 0.1 * k as f64).collect();
        let states = times.iter().map(|&t| free_evolve(&u0, t)).collect();
        let traj = Trajectory::new(times, states).unwrap();
        let pair = AdmissiblePair::energy();
        let r = smoothing_profile(&traj, 8.0, 0.6, &[1.0, 2.0, 4.0, 8.0], pair).unwrap();
        assert!(r.values.iter().all(|&v| v < 1e-12), "{:?}", r.values);
        assert!(smoothing_profile(&traj, 4.0, 0.6, &[1.0, 2.0, 4.0, 8.0], pair).is_err());
    }

    #[test]
    fn band_limited_gap_is_exactly_zero() {
        let g = Grid::new(1, 32, 2.0 * PI).unwrap();
        let c = random_band(g, 0.0, 2.0, 0.0, &mut sample_rng(5, 0));
        let r = pointwise_gap_sweep(
            &c.inverse_transform(),
            0.6,
            &[2.0, 4.0, 8.0, 16.0],
            Exponent::new(-7, 8),
        )
        .unwrap();
        assert!(r.values.iter().all(|&v| v < 1e-13), "{:?}", r.values);
    }

    #[test]
    fn plane_wave_keeps_modified_energy() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let u0 = Field::plane_wave(g, [1, 0, 0], Complex64::new(0.5, 0.0));
        let cfg = SolverConfig::new(g, 1e-2, 0.5, 5).unwrap();
        let r = conservation_sweep(&u0, 0.6, &[2.0, 4.0, 8.0, 16.0], Exponent::new(-7, 8), &cfg)
            .unwrap();
        assert!(
            r.modified.values.iter().all(|&v| v < 1e-12),
            "{:?}",
            r.modified.values
        );
    }

    #[test]
    fn energy_pair_ratio_is_one() {
        let g = Grid::new(1, 32, 2.0 * PI).unwrap();
        let r = strichartz_ratio(g, AdmissiblePair::energy(), 0.5, 9, 20, 1).unwrap();
        assert!((r.sup_ratio - 1.0).abs() < 1e-12, "{}", r.sup_ratio);
        let p = AdmissiblePair::new(Lebesgue::integer(2).unwrap(), Lebesgue::integer(6).unwrap())
            .unwrap();
        let r = strichartz_ratio(g, p, 0.5, 9, 100, 1).unwrap();
        assert!(r.is_finite() && r.saturated, "{r}");
    }
}
