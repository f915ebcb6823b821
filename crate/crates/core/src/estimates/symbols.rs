//! Sampled symbol bounds on `Sigma_4` and the diagonal multiplier checks.

use rayon::prelude::*;

use super::report::BoundReport;
use super::samplers::{geometry_tuple, high_low_tuple, mixture_tuple, sample_rng, Stratum};
use crate::error::{Error, Result};
use crate::multilinear::{
    cos_angle, sigma4, sigma4_tilde, weighted_alternating_sum, FrequencyTuple, ResonanceSpec,
};
use crate::spectral::data::random_band;
use crate::spectral::{
    apply_multiplier, i_symbol, lebesgue_norm, norm, DerivativeSign, Grid, MultiplierSpec,
};

const MIN_SAMPLES: usize = 1000;

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidConfig(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    Ok(())
}

/// `|sigma_4 - sigma~_4| theta_0 / min_j m_j^2`.
pub fn sigma4_gap_ratio(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<f64> {
    let gap = (sigma4(t, spec.n, spec.s)? - sigma4_tilde(t, spec)?.re).abs();
    let mmin = t
        .as_slice()
        .iter()
        .map(|x| spec.m(x))
        .fold(f64::INFINITY, f64::min);
    Ok(gap * spec.theta0 / (mmin * mmin))
}

/// `|S| / (m(N_1)^2 N_1 N_3 theta_0 + m(N_3)^2 N_3^2)` with `N_1 >= .. >= N_4`
/// the sorted magnitudes.
pub fn resonant_sum_ratio(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<f64> {
    let lhs = weighted_alternating_sum(t, spec)?.abs();
    let mut mags: Vec<f64> = t.as_slice().iter().map(norm).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let (n1, n3) = (mags[0], mags[2]);
    let m = |r: f64| i_symbol(r, spec.n, spec.s);
    let rhs = m(n1).powi(2) * n1 * n3 * spec.theta0 + m(n3).powi(2) * n3 * n3;
    if rhs == 0.0 {
        return Ok(if lhs == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(lhs / rhs)
}

/// `((|xi_1| - |xi_2|) / (|xi_1| theta_0), (|xi_3| - |xi_4|) / (|xi_1| theta_0))`.
pub fn geometry_ratios(t: &FrequencyTuple, theta0: f64) -> (f64, f64) {
    let x = t.as_slice();
    let n1 = norm(&x[0]);
    let d = n1 * theta0;
    ((n1 - norm(&x[1])) / d, (norm(&x[2]) - norm(&x[3])) / d)
}

/// Explicit per-tuple bound on both geometry ratios when `|xi_1| >= |xi_2|`
/// and `|xi_3| >= |xi_4|`: each difference of squares is at least
/// `|xi_12|` times the difference of norms, and they sum to
/// `2 |xi_12| |xi_14| cos`, so either ratio is at most
/// `2 |xi_14| |cos| / (|xi_1| theta_0)`.
pub fn geometry_tuple_bound(t: &FrequencyTuple, theta0: f64) -> Result<f64> {
    let c = cos_angle(t)?.abs();
    Ok(2.0 * norm(&t.xi14()) * c / (norm(&t.xi(1)) * theta0))
}

/// Sampled `|sigma_4 - sigma~_4|` bound over the three-stratum mixture.
pub fn check_lemma_5_4(spec: &ResonanceSpec, n_samples: usize, seed: u64) -> Result<BoundReport> {
    check_samples(n_samples)?;
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let t = mixture_tuple(&mut sample_rng(seed, i as u64), spec, Stratum::of_index(i));
            Ok((sigma4_gap_ratio(&t, spec)?, t.max_norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::from_samples("sigma4 - sigma4~", &samples))
}

/// Sampled resonant high-low bound on the weighted alternating sum.
pub fn check_lemma_5_9(spec: &ResonanceSpec, n_samples: usize, seed: u64) -> Result<BoundReport> {
    check_samples(n_samples)?;
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let t = high_low_tuple(&mut sample_rng(seed, i as u64), spec, i)?;
            Ok((resonant_sum_ratio(&t, spec)?, t.max_norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::from_samples("resonant high-low sum", &samples))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    /// `(|xi_1| - |xi_2|) / (|xi_1| theta_0)`.
    pub outer: BoundReport,
    /// `(|xi_3| - |xi_4|) / (|xi_1| theta_0)`.
    pub inner: BoundReport,
    /// Samples where a ratio exceeded its explicit per-tuple bound.
    pub bound_violations: usize,
}

impl GeometryReport {
    pub fn all_hold(&self) -> bool {
        self.outer.is_finite()
            && self.inner.is_finite()
            && self.outer.saturated
            && self.inner.saturated
            && self.bound_violations == 0
    }
}

/// Sampled norm-difference ratios on the resonant set with `N_1 ~ N_2`.
pub fn check_geometry_5_19(
    spec: &ResonanceSpec,
    n_samples: usize,
    seed: u64,
) -> Result<GeometryReport> {
    check_samples(n_samples)?;
    let rows = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let t = geometry_tuple(&mut sample_rng(seed, i as u64), spec, i)?;
            let (a, b) = geometry_ratios(&t, spec.theta0);
            let bound = geometry_tuple_bound(&t, spec.theta0)?;
            let slack = 1e-9 * (1.0 + bound);
            Ok((a, b, t.max_norm(), a > bound + slack || b > bound + slack))
        })
        .collect::<Result<Vec<_>>>()?;
    let outer: Vec<(f64, f64)> = rows.iter().map(|r| (r.0, r.2)).collect();
    let inner: Vec<(f64, f64)> = rows.iter().map(|r| (r.1, r.2)).collect();
    Ok(GeometryReport {
        outer: BoundReport::from_samples("(|xi1| - |xi2|) / (|xi1| theta0)", &outer),
        inner: BoundReport::from_samples("(|xi3| - |xi4|) / (|xi1| theta0)", &inner),
        bound_violations: rows.iter().filter(|r| r.3).count(),
    })
}

/// `||u||_p / (N^{-s} ||grad^s u||_p)` over random fields supported on `|xi| >= N`.
pub fn bernstein_ratio(
    grid: Grid,
    n: f64,
    s: f64,
    p: f64,
    n_samples: usize,
    seed: u64,
) -> Result<BoundReport> {
    if n_samples == 0 {
        return Err(Error::Empty("sample count".into()));
    }
    let deriv = MultiplierSpec::Derivative {
        order: s,
        sign: DerivativeSign::Positive,
    };
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let spec = random_band(grid, n, f64::INFINITY, 0.0, &mut sample_rng(seed, i as u64));
            if spec.l2_norm_sqr() == 0.0 {
                return Err(Error::Sampler(format!(
                    "no retained lattice frequency with |xi| >= {n}"
                )));
            }
            let num = lebesgue_norm(&spec.inverse_transform(), p)?;
            let den = n.powf(-s)
                * lebesgue_norm(&apply_multiplier(&spec, &deriv)?.inverse_transform(), p)?;
            Ok((num / den, n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::from_samples(
        format!("Bernstein p = {p}"),
        &samples,
    ))
}

/// `max |xi|^delta / (N^{delta-1} |xi| m_N(xi))` over retained lattice
/// frequencies with `|xi| >= N`.
pub fn derivative_symbol_check(grid: Grid, n: f64, s: f64, delta: f64) -> Result<f64> {
    let mut best: Option<f64> = None;
    for j in 0..grid.len() {
        if !grid.is_retained(&grid.wavevector(j)) {
            continue;
        }
        let r = norm(&grid.frequency(j));
        if r < n {
            continue;
        }
        let v = r.powf(delta) / (n.powf(delta - 1.0) * r * i_symbol(r, n, s));
        best = Some(best.map_or(v, |b: f64| b.max(v)));
    }
    best.ok_or_else(|| Error::Sampler(format!("no retained lattice frequency with |xi| >= {n}")))
}
