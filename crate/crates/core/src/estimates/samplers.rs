//! Seeded tuple samplers on `Sigma_4`.
//!
//! Sample `i` of a run with seed `s` draws from its own ChaCha stream, so the
//! result does not depend on how the samples are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::multilinear::{FrequencyTuple, ResonanceSpec};
use crate::spectral::{add, dot, neg, norm, scale, Freq};

const MAX_ATTEMPTS: usize = 10_000;

/// Independent generator for sample `index` of the run seeded by `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sampling regime of a symbol-bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    /// `xi_1, xi_2, xi_3` uniform in the ball of radius `8N`.
    Uniform,
    /// `|cos angle(xi_12, xi_14)|` log-uniform in `[theta_0/4, 4 theta_0]`.
    NearResonant,
    /// Two frequencies of size `[N, 16N]` nearly cancelling, two below `N/2`.
    HighLow,
}

impl Stratum {
    pub fn of_index(i: usize) -> Self {
        match i % 3 {
            0 => Stratum::Uniform,
            1 => Stratum::NearResonant,
            _ => Stratum::HighLow,
        }
    }
}

fn unit<R: Rng>(rng: &mut R) -> Freq {
    loop {
        let v: Freq = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = norm(&v);
        if n > 1e-8 {
            return scale(&v, 1.0 / n);
        }
    }
}

fn in_ball<R: Rng>(rng: &mut R, radius: f64) -> Freq {
    scale(&unit(rng), radius * rng.random::<f64>().cbrt())
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
}

/// A vector of length `len` whose cosine with `a` is `cos`.
fn at_angle<R: Rng>(rng: &mut R, a: &Freq, cos: f64, len: f64) -> Freq {
    let ah = scale(a, 1.0 / norm(a));
    let e = loop {
        let v = unit(rng);
        let w = add(&v, &scale(&ah, -dot(&v, &ah)));
        let n = norm(&w);
        if n > 1e-6 {
            break scale(&w, 1.0 / n);
        }
    };
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    scale(&add(&scale(&ah, cos), &scale(&e, sin)), len)
}

/// The quartet with `xi_1`, `xi_12 = a`, `xi_14 = b`; `xi_4 = b - xi_1` by closure.
fn from_pairs(x1: Freq, a: &Freq, b: &Freq) -> FrequencyTuple {
    let x2 = add(a, &neg(&x1));
    let x3 = add(&x1, &neg(&add(a, b)));
    FrequencyTuple::quartet(x1, x2, x3)
}

fn signed<R: Rng>(rng: &mut R, v: f64) -> f64 {
    if rng.random::<bool>() {
        v
    } else {
        -v
    }
}

/// One draw from the mixture used for the `sigma_4 - sigma~_4` bound.
pub(crate) fn mixture_tuple<R: Rng>(
    rng: &mut R,
    spec: &ResonanceSpec,
    stratum: Stratum,
) -> FrequencyTuple {
    let n = spec.n;
    match stratum {
        Stratum::Uniform => FrequencyTuple::quartet(
            in_ball(rng, 8.0 * n),
            in_ball(rng, 8.0 * n),
            in_ball(rng, 8.0 * n),
        ),
        Stratum::NearResonant => {
            let th = spec.theta0;
            let mag = log_uniform(rng, th / 4.0, (4.0 * th).min(1.0));
            let cos = signed(rng, mag);
            let a = scale(&unit(rng), log_uniform(rng, n / 8.0, 8.0 * n));
            let b = {
                let len = log_uniform(rng, n / 8.0, 8.0 * n);
                at_angle(rng, &a, cos, len)
            };
            from_pairs(in_ball(rng, 8.0 * n), &a, &b)
        }
        Stratum::HighLow => {
            let x1 = scale(&unit(rng), log_uniform(rng, n, 16.0 * n));
            let c = in_ball(rng, n / 2.0);
            let x3 = in_ball(rng, n / 2.0);
            FrequencyTuple::quartet(x1, add(&neg(&x1), &c), x3)
        }
    }
}

/// A resonant quartet with `|xi_1| ~ |xi_2| >= N` and `|xi_3|, |xi_4| <= N/8`.
///
/// Built from `w = xi_14` and small `xi_3, xi_4` with the angle between
/// `xi_12 = -(xi_3 + xi_4)` and `w` below `theta_0`. Every third draw pins
/// `|cos| = theta_0/2`.
pub(crate) fn high_low_tuple<R: Rng>(
    rng: &mut R,
    spec: &ResonanceSpec,
    index: usize,
) -> Result<FrequencyTuple> {
    let n = spec.n;
    for _ in 0..MAX_ATTEMPTS {
        let small = log_uniform(rng, n / 1024.0, n / 8.0);
        let x3 = in_ball(rng, small);
        let x4 = in_ball(rng, small);
        let a = neg(&add(&x3, &x4));
        if norm(&a) < 1e-9 * n {
            continue;
        }
        let cos = if index % 3 == 2 {
            signed(rng, spec.theta0 / 2.0)
        } else {
            spec.theta0 * (2.0 * rng.random::<f64>() - 1.0)
        };
        let w = {
            let len = log_uniform(rng, 2.0 * n, 8.0 * n);
            at_angle(rng, &a, cos, len)
        };
        let x1 = add(&w, &neg(&x4));
        let x2 = add(&neg(&w), &neg(&x3));
        return FrequencyTuple::new(vec![x1, x2, x3, x4]);
    }
    Err(Error::Sampler(format!(
        "no resonant high-low quartet found for N = {n}, theta_0 = {}",
        spec.theta0
    )))
}

/// Relabels by the slot permutations `(13)`, `(12)(34)`, `(14)(23)`, all of
/// which keep `|cos angle(xi_12, xi_14)|`, so that `xi_1` is largest.
fn largest_first(t: FrequencyTuple) -> FrequencyTuple {
    let x = t.as_slice();
    let j = (0..4)
        .max_by(|&a, &b| norm(&x[a]).total_cmp(&norm(&x[b])))
        .unwrap_or(0);
    let perm: [usize; 4] = match j {
        0 => [0, 1, 2, 3],
        1 => [1, 0, 3, 2],
        2 => [2, 1, 0, 3],
        _ => [3, 2, 1, 0],
    };
    t.permuted(&perm)
}

/// A resonant quartet with `|xi_1|` maximal, `|xi_2| >= |xi_1|/2` and
/// `|xi_3| >= |xi_4|`.
pub(crate) fn geometry_tuple<R: Rng>(
    rng: &mut R,
    spec: &ResonanceSpec,
    index: usize,
) -> Result<FrequencyTuple> {
    let n = spec.n;
    for _ in 0..MAX_ATTEMPTS {
        let a = scale(&unit(rng), log_uniform(rng, n / 64.0, 2.0 * n));
        let cos = if index % 3 == 2 {
            spec.theta0 / 2.0
        } else {
            spec.theta0 * (2.0 * rng.random::<f64>() - 1.0)
        };
        let b = {
            let len = log_uniform(rng, n / 64.0, 8.0 * n);
            at_angle(rng, &a, cos, len)
        };
        let x1 = scale(&unit(rng), log_uniform(rng, n, 8.0 * n));
        let t = largest_first(from_pairs(x1, &a, &b));
        let x = t.as_slice();
        if norm(&x[0]) > n && norm(&x[1]) >= norm(&x[0]) / 2.0 && norm(&x[2]) >= norm(&x[3]) {
            return Ok(t);
        }
    }
    Err(Error::Sampler(format!(
        "no resonant quartet with N1 ~ N2 found for N = {n}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{cos_angle, region, Region};

    fn spec() -> ResonanceSpec {
        ResonanceSpec::new(16.0, 0.6, 0.05).unwrap()
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = sample_rng(7, 3).random();
        let b: u64 = sample_rng(7, 3).random();
        let c: u64 = sample_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn near_resonant_stratum_hits_its_band() {
        let sp = spec();
        for i in 0..200 {
            let t = mixture_tuple(&mut sample_rng(1, i), &sp, Stratum::NearResonant);
            let c = cos_angle(&t).unwrap().abs();
            assert!(
                c >= sp.theta0 / 4.0 * 0.999 && c <= 4.0 * sp.theta0 * 1.001,
                "{c}"
            );
        }
    }

    #[test]
    fn resonant_samplers_stay_resonant() {
        let sp = spec();
        for i in 0..300 {
            let t = high_low_tuple(&mut sample_rng(2, i as u64), &sp, i).unwrap();
            assert_eq!(region(&t, &sp).unwrap(), Region::Resonant);
            let t = geometry_tuple(&mut sample_rng(3, i as u64), &sp, i).unwrap();
            assert_eq!(region(&t, &sp).unwrap(), Region::Resonant);
            let x = t.as_slice();
            assert!(x.iter().all(|v| norm(v) <= norm(&x[0])));
        }
    }

    #[test]
    fn relabelling_keeps_the_angle() {
        let sp = spec();
        for i in 0..100 {
            let t = mixture_tuple(&mut sample_rng(4, i), &sp, Stratum::Uniform);
            let r = largest_first(t.clone());
            assert!((cos_angle(&t).unwrap().abs() - cos_angle(&r).unwrap().abs()).abs() < 1e-9);
        }
    }
}
