use super::lattice::{lambda2, lambda4_u, lambda6_extended, Lambda6Range};
use super::resonance::{
    increment_symbol_k, modified_sextic_symbol, sigma2_symbol, sigma4_symbol, sigma4_tilde_symbol,
    ResonanceSpec,
};
use crate::error::Result;
use crate::nls::{energy_of_spectrum, Trajectory};
use crate::reduce::pairwise_sum;
use crate::spectral::{apply_multiplier, MultiplierSpec, Spectrum};

/// `E~(u) = Lambda_2(sigma_2; u) + Lambda_4(sigma~_4; u)`.
pub fn modified_energy(spectrum: &Spectrum, spec: &ResonanceSpec) -> Result<f64> {
    Ok(lambda2(&sigma2_symbol(spec.n, spec.s), spectrum)?
        + lambda4_u(&sigma4_tilde_symbol(spec), spectrum)?)
}

fn energy_i_of(spectrum: &Spectrum, n: f64, s: f64) -> Result<f64> {
    Ok(energy_of_spectrum(&apply_multiplier(
        spectrum,
        &MultiplierSpec::i_operator(n, s)?,
    )?))
}

/// `|E(Iu) - E~(u)|`.
pub fn pointwise_gap(spectrum: &Spectrum, spec: &ResonanceSpec) -> Result<f64> {
    Ok((energy_i_of(spectrum, spec.n, spec.s)? - modified_energy(spectrum, spec)?).abs())
}

/// `|E(Iu) - Lambda_2(sigma_2; u) - Lambda_4(sigma_4; u)|`, zero up to rounding
/// for fields without Nyquist content.
pub fn energy_identity_gap(spectrum: &Spectrum, n: f64, s: f64) -> Result<f64> {
    let lhs = energy_i_of(spectrum, n, s)?;
    let rhs = lambda2(&sigma2_symbol(n, s), spectrum)? + lambda4_u(&sigma4_symbol(n, s), spectrum)?;
    Ok((lhs - rhs).abs())
}

/// Per recorded time: `E~(u(t))`, the quartic integrand
/// `Lambda_4([-2i X(sigma_2)]_sym - i sigma~_4 alpha_4; u)` and the sextic
/// integrand `Lambda_6(X(-4i sigma~_4); u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementSeries {
    pub times: Vec<f64>,
    pub modified_energy: Vec<f64>,
    pub quartic: Vec<f64>,
    pub sextic: Vec<f64>,
}

impl IncrementSeries {
    /// `E~(T) - E~(t_0) - int (quartic + sextic) dt`, the integral by the trapezoid rule.
    pub fn residual(&self) -> f64 {
        let n = self.times.len();
        let total: Vec<f64> = self
            .quartic
            .iter()
            .zip(&self.sextic)
            .map(|(a, b)| a + b)
            .collect();
        let panels: Vec<f64> = (1..n)
            .map(|i| 0.5 * (self.times[i] - self.times[i - 1]) * (total[i] + total[i - 1]))
            .collect();
        self.modified_energy[n - 1] - self.modified_energy[0] - pairwise_sum(&panels)
    }
}

/// Evaluates the integrands of the increment identity on every recorded
/// state. The sextic term uses the Galerkin-projected cubic, matching a
/// dealiased trajectory.
pub fn increment_integrands(traj: &Trajectory, spec: &ResonanceSpec) -> Result<IncrementSeries> {
    let quartic_symbol = increment_symbol_k(spec);
    let sextic_symbol = modified_sextic_symbol(spec);
    let mut out = IncrementSeries {
        times: traj.times().to_vec(),
        modified_energy: Vec::with_capacity(traj.len()),
        quartic: Vec::with_capacity(traj.len()),
        sextic: Vec::with_capacity(traj.len()),
    };
    for u in traj.states() {
        let s = u.transform().project_retained();
        out.modified_energy.push(modified_energy(&s, spec)?);
        out.quartic.push(lambda4_u(&quartic_symbol, &s)?);
        out.sextic.push(lambda6_extended(
            &sextic_symbol,
            &s,
            Lambda6Range::Retained,
        )?);
    }
    Ok(out)
}

/// `|E~(T) - E~(t_0) - int (quartic + sextic)|` over the whole trajectory.
pub fn increment_residual(traj: &Trajectory, spec: &ResonanceSpec) -> Result<f64> {
    Ok(increment_integrands(traj, spec)?.residual().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::data::random_band;
    use crate::spectral::Grid;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn identity_gap_on_broadband_field() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_band(g, 0.0, f64::INFINITY, 0.5, &mut rng);
        let e = energy_i_of(&s, 3.0, 0.6).unwrap();
        assert!(energy_identity_gap(&s, 3.0, 0.6).unwrap() < 1e-10 * (1.0 + e));
    }

    #[test]
    fn band_limited_field_has_no_gap() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_band(g, 0.0, 3.0, 0.0, &mut rng);
        let spec = ResonanceSpec::with_default_theta(4.0, 0.6).unwrap();
        let e = energy_i_of(&s, 4.0, 0.6).unwrap();
        assert!(pointwise_gap(&s, &spec).unwrap() <= 1e-14 * e);
        let z = Spectrum::zeros(g);
        assert_eq!(modified_energy(&z, &spec).unwrap(), 0.0);
    }
}
