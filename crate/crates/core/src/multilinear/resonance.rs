//! The resonance decomposition of `Sigma_4` and the symbols built on it.
//!
//! With `m_j = m_N(xi_j)` and `S = sum_j (-1)^{j-1} m_j^2 |xi_j|^2`:
//!
//! * `[-2i X(sigma_2)]_sym = (i/4) S` (direct symmetrization);
//! * `alpha_4 = 2 xi_12 . xi_14`, which equals `S` when every `m_j = 1`;
//! * `sigma~_4 = S / (4 alpha_4)` on `Omega_nr = Omega_1 u Omega_2`, 0 elsewhere,
//!   so `sigma~_4 = 1/4` on `Omega_1`;
//! * the quartic increment symbol `[-2i X(sigma_2)]_sym - i sigma~_4 alpha_4`
//!   then reduces to `(i/4) S 1_{Omega_res}`.
//!
//! The sign attached to `i sigma~_4 alpha_4` is the one produced by
//! differentiating along `i u_t + Laplace u = |u|^2 u`, for which
//! `d/dt [u_hat(xi_1) conj u_hat(-xi_2) ..] = -i alpha_4 [..]` on the free flow.

use num_complex::Complex64;

use super::symbol::{extend, symmetrize, SymbolK};
use super::tuple::FrequencyTuple;
use crate::error::{Error, Result};
use crate::exponents::Exponent;
use crate::spectral::{add, dot, i_symbol, norm, norm_sqr, Freq};

/// Parameters of the decomposition: `I_{N,s}` and the angle threshold `theta_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceSpec {
    pub n: f64,
    pub s: f64,
    pub theta0: f64,
}

impl ResonanceSpec {
    pub fn new(n: f64, s: f64, theta0: f64) -> Result<Self> {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidMultiplier(format!(
                "N must be positive, got {n}"
            )));
        }
        if !(s > 0.5 && s < 1.0) {
            return Err(Error::InvalidMultiplier(format!(
                "s must lie in (1/2, 1), got {s}"
            )));
        }
        if !(theta0 > 0.0 && theta0 < 1.0) {
            return Err(Error::InvalidMultiplier(format!(
                "theta_0 must lie in (0, 1), got {theta0}"
            )));
        }
        Ok(Self { n, s, theta0 })
    }

    /// `theta_0 = N^{e}`.
    pub fn with_exponent(n: f64, s: f64, e: Exponent) -> Result<Self> {
        Self::new(n, s, n.powf(e.to_f64()))
    }

    /// `theta_0 = N^{-7/8}`.
    pub fn with_default_theta(n: f64, s: f64) -> Result<Self> {
        Self::with_exponent(n, s, Exponent::new(-7, 8))
    }

    #[inline]
    pub fn m(&self, xi: &Freq) -> f64 {
        i_symbol(norm(xi), self.n, self.s)
    }
}

/// Which part of `Sigma_4` a quartet lies in. `Omega1` takes precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Omega1,
    Omega2,
    Resonant,
}

fn check4(t: &FrequencyTuple) -> Result<()> {
    if t.k() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: t.k(),
        });
    }
    Ok(())
}

#[inline]
fn alpha4_raw(xi: &[Freq]) -> f64 {
    2.0 * dot(&add(&xi[0], &xi[1]), &add(&xi[0], &xi[3]))
}

#[inline]
fn alternating_raw(xi: &[Freq]) -> f64 {
    norm_sqr(&xi[0]) - norm_sqr(&xi[1]) + norm_sqr(&xi[2]) - norm_sqr(&xi[3])
}

/// `S = sum (-1)^{j-1} m_j^2 |xi_j|^2`.
#[inline]
fn weighted_alternating_raw(xi: &[Freq], spec: &ResonanceSpec) -> f64 {
    let t = |x: &Freq| {
        let m = spec.m(x);
        m * m * norm_sqr(x)
    };
    t(&xi[0]) - t(&xi[1]) + t(&xi[2]) - t(&xi[3])
}

/// `cos` of the angle between `xi_12` and `xi_14`; 0 when either vanishes.
#[inline]
fn cos_raw(xi: &[Freq]) -> f64 {
    let a = add(&xi[0], &xi[1]);
    let b = add(&xi[0], &xi[3]);
    let (na, nb) = (norm(&a), norm(&b));
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot(&a, &b) / (na * nb)
    }
}

#[inline]
fn region_raw(xi: &[Freq], spec: &ResonanceSpec) -> Region {
    if xi.iter().all(|x| norm(x) <= spec.n) {
        Region::Omega1
    } else if cos_raw(xi).abs() >= spec.theta0 {
        Region::Omega2
    } else {
        Region::Resonant
    }
}

#[inline]
fn sigma4_tilde_raw(xi: &[Freq], spec: &ResonanceSpec) -> f64 {
    match region_raw(xi, spec) {
        Region::Omega1 => 0.25,
        Region::Omega2 => weighted_alternating_raw(xi, spec) / (4.0 * alpha4_raw(xi)),
        Region::Resonant => 0.0,
    }
}

#[inline]
fn increment_raw(xi: &[Freq], spec: &ResonanceSpec) -> Complex64 {
    match region_raw(xi, spec) {
        Region::Resonant => Complex64::new(0.0, 0.25 * weighted_alternating_raw(xi, spec)),
        _ => Complex64::new(0.0, 0.0),
    }
}

/// `alpha_4 = 2 xi_12 . xi_14`.
pub fn alpha4(t: &FrequencyTuple) -> Result<f64> {
    check4(t)?;
    Ok(alpha4_raw(t.as_slice()))
}

/// `|xi_1|^2 - |xi_2|^2 + |xi_3|^2 - |xi_4|^2`, equal to `alpha_4` on `Sigma_4`.
pub fn alternating_square_sum(t: &FrequencyTuple) -> Result<f64> {
    check4(t)?;
    Ok(alternating_raw(t.as_slice()))
}

/// `S = sum (-1)^{j-1} m_j^2 |xi_j|^2`.
pub fn weighted_alternating_sum(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<f64> {
    check4(t)?;
    Ok(weighted_alternating_raw(t.as_slice(), spec))
}

pub fn cos_angle(t: &FrequencyTuple) -> Result<f64> {
    check4(t)?;
    Ok(cos_raw(t.as_slice()))
}

pub fn region(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<Region> {
    check4(t)?;
    Ok(region_raw(t.as_slice(), spec))
}

pub fn resonant_indicator(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<u8> {
    Ok(u8::from(region(t, spec)? == Region::Resonant))
}

/// `sigma_2(xi) = |xi|^2 m(xi)^2 / 2`.
pub fn sigma2(xi: &Freq, n: f64, s: f64) -> f64 {
    let m = i_symbol(norm(xi), n, s);
    0.5 * m * m * norm_sqr(xi)
}

/// `sigma_4 = m_1 m_2 m_3 m_4 / 4`, the symbol of the quartic part of `E(Iu)`.
pub fn sigma4(t: &FrequencyTuple, n: f64, s: f64) -> Result<f64> {
    check4(t)?;
    Ok(0.25
        * t.as_slice()
            .iter()
            .map(|x| i_symbol(norm(x), n, s))
            .product::<f64>())
}

pub fn sigma4_tilde(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<Complex64> {
    check4(t)?;
    Ok(Complex64::new(sigma4_tilde_raw(t.as_slice(), spec), 0.0))
}

/// `(i/4) S 1_{Omega_res}`.
pub fn increment_symbol4(t: &FrequencyTuple, spec: &ResonanceSpec) -> Result<Complex64> {
    check4(t)?;
    Ok(increment_raw(t.as_slice(), spec))
}

/// `[-2i X(sigma_2)]_sym - i sigma~_4 alpha_4`, with the bracket evaluated by
/// literal group averaging.
pub fn increment_symbol4_left(spec: &ResonanceSpec) -> SymbolK {
    let sym = symmetrize(&x_sigma2_symbol(spec.n, spec.s).scaled(Complex64::new(0.0, -2.0)))
        .expect("arity 4 is even");
    let spec = *spec;
    SymbolK::new(4, "[-2iX(sigma2)]_sym - i sigma4~ alpha4", move |xi| {
        sym.eval(xi) - Complex64::new(0.0, sigma4_tilde_raw(xi, &spec) * alpha4_raw(xi))
    })
}

/// Both forms of the quartic increment symbol, `(left, right)`.
pub fn increment_symbol4_forms(
    t: &FrequencyTuple,
    spec: &ResonanceSpec,
) -> Result<(Complex64, Complex64)> {
    check4(t)?;
    Ok((
        increment_symbol4_left(spec).eval(t.as_slice()),
        increment_raw(t.as_slice(), spec),
    ))
}

pub fn sigma2_symbol(n: f64, s: f64) -> SymbolK {
    SymbolK::new(2, "sigma2", move |xi| {
        Complex64::new(sigma2(&xi[0], n, s), 0.0)
    })
}

/// `X(sigma_2)`, a four-symbol.
pub fn x_sigma2_symbol(n: f64, s: f64) -> SymbolK {
    extend(&sigma2_symbol(n, s))
}

pub fn sigma4_symbol(n: f64, s: f64) -> SymbolK {
    SymbolK::new(4, "sigma4", move |xi| {
        Complex64::new(
            0.25 * xi.iter().map(|x| i_symbol(norm(x), n, s)).product::<f64>(),
            0.0,
        )
    })
}

pub fn sigma4_tilde_symbol(spec: &ResonanceSpec) -> SymbolK {
    let spec = *spec;
    SymbolK::new(4, "sigma4~", move |xi| {
        Complex64::new(sigma4_tilde_raw(xi, &spec), 0.0)
    })
}

/// Right form of the quartic increment symbol as a [`SymbolK`].
pub fn increment_symbol_k(spec: &ResonanceSpec) -> SymbolK {
    let spec = *spec;
    SymbolK::new(4, "(i/4) S 1_res", move |xi| increment_raw(xi, &spec))
}

/// The four-symbol `M` with `Lambda_6(X(M))` the sextic increment term:
/// `M = -4 i sigma~_4`.
pub fn modified_sextic_symbol(spec: &ResonanceSpec) -> SymbolK {
    let spec = *spec;
    SymbolK::new(4, "-4i sigma4~", move |xi| {
        Complex64::new(0.0, -4.0 * sigma4_tilde_raw(xi, &spec))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> ResonanceSpec {
        ResonanceSpec::new(4.0, 0.6, 4f64.powf(-7.0 / 8.0)).unwrap()
    }

    #[test]
    fn hand_tuple() {
        let t = FrequencyTuple::new(vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(alpha4(&t).unwrap(), 0.0);
        assert_eq!(alternating_square_sum(&t).unwrap(), 0.0);
        assert_eq!(
            sigma4_tilde(&t, &spec()).unwrap(),
            Complex64::new(0.25, 0.0)
        );
    }

    #[test]
    fn plateau_quarter_and_resonant_zero() {
        let sp = spec();
        let t = FrequencyTuple::quartet([1.0, 2.0, 0.0], [-3.0, 0.5, 0.0], [0.5, -1.0, 1.0]);
        assert_eq!(region(&t, &sp).unwrap(), Region::Omega1);
        assert_eq!(sigma4_tilde(&t, &sp).unwrap().re, 0.25);
        // xi_12 orthogonal to xi_14 with a large mode
        let t = FrequencyTuple::quartet([10.0, 0.0, 0.0], [-10.0, 1.0, 0.0], [-10.0, 0.0, 0.0]);
        // xi_12 = (0,1,0); xi_4 = (10,-1,0); xi_14 = (20,-1,0): cos small but nonzero
        let c = cos_angle(&t).unwrap();
        assert!(c.abs() < sp.theta0, "{c}");
        assert_eq!(region(&t, &sp).unwrap(), Region::Resonant);
        assert_eq!(sigma4_tilde(&t, &sp).unwrap().re, 0.0);
        assert_eq!(resonant_indicator(&t, &sp).unwrap(), 1);
    }

    #[test]
    fn literal_symmetrization_of_x_sigma2() {
        // with m = 1 the bracket [2i X(sigma_2)]_sym is -(i/4)(|xi_1|^2 - |xi_2|^2 + |xi_3|^2 - |xi_4|^2)
        let big = ResonanceSpec::new(1e6, 0.6, 0.1).unwrap();
        let sym =
            symmetrize(&x_sigma2_symbol(big.n, big.s).scaled(Complex64::new(0.0, 2.0))).unwrap();
        let t = FrequencyTuple::quartet([1.0, 2.0, 0.5], [-3.0, 0.5, 0.0], [0.5, -1.0, 1.0]);
        let v = sym.evaluate(&t).unwrap();
        let expect = -0.25 * alternating_square_sum(&t).unwrap();
        assert!(v.re.abs() < 1e-14 && (v.im - expect).abs() < 1e-12, "{v}");
    }

    #[test]
    fn increment_forms_agree_in_each_region() {
        let sp = spec();
        let tuples = [
            FrequencyTuple::quartet([1.0, 0.0, 0.0], [2.0, 1.0, 0.0], [-1.0, 1.0, 0.0]),
            FrequencyTuple::quartet([9.0, 1.0, 0.0], [-2.0, 3.0, 0.0], [1.0, -5.0, 0.0]),
            FrequencyTuple::quartet([10.0, 0.0, 0.0], [-10.0, 1.0, 0.0], [-10.0, 0.0, 0.0]),
        ];
        for t in &tuples {
            let (l, r) = increment_symbol4_forms(t, &sp).unwrap();
            let scale = t.as_slice().iter().map(norm_sqr).sum::<f64>().max(1.0);
            assert!((l - r).norm() < 1e-12 * scale, "{t:?}: {l} vs {r}");
        }
    }

    #[test]
    fn default_theta() {
        let sp = ResonanceSpec::with_default_theta(16.0, 0.7).unwrap();
        assert!((sp.theta0 - 16f64.powf(-0.875)).abs() < 1e-15);
        assert!(ResonanceSpec::new(4.0, 0.5, 0.1).is_err());
    }
}
