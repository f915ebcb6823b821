//! Radial Fourier multipliers: the smoothing operator `I_N`, Littlewood–Paley
//! cutoffs and fractional derivatives.

use num_complex::Complex64;

use super::field::Spectrum;
use super::grid::{norm, Freq};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MultiplierSpec {
    /// `m_N`: 1 on `|xi| <= N`, `(N/|xi|)^{1-s}` beyond.
    IOperator { n: f64, s: f64 },
    /// `phi(xi/N)`.
    LpBelow { n: f64 },
    /// `1 - phi(xi/N)`.
    LpAbove { n: f64 },
    /// `phi(xi/N) - phi(2 xi/N)`.
    LpBand { n: f64 },
    /// `|xi|^{+order}` or `|xi|^{-order}`.
    Derivative { order: f64, sign: DerivativeSign },
}

/// The Littlewood–Paley bump: 1 on `[0, 1]`, 0 on `[2, inf)`, and
/// `1 - (10 t^3 - 15 t^4 + 6 t^5)` with `t = r - 1` in between, so the
/// profile is C^2 with vanishing first and second derivatives at both joins.
pub fn lp_bump(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let t = r - 1.0;
        1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
    }
}

/// The I-operator symbol as a function of `|xi|`.
///
/// On the transition shell `(N, 2N]` the power law is used already, which
/// keeps the symbol monotone and equal to the prescribed form outside it.
#[inline]
pub fn i_symbol(r: f64, n: f64, s: f64) -> f64 {
    if r <= n {
        1.0
    } else {
        (n / r).powf(1.0 - s)
    }
}

impl MultiplierSpec {
    pub fn i_operator(n: f64, s: f64) -> Result<Self> {
        let spec = MultiplierSpec::IOperator { n, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |n: f64, what: &str| {
            if n.is_finite() && n > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidMultiplier(format!(
                    "{what} needs N > 0, got {n}"
                )))
            }
        };
        match *self {
            MultiplierSpec::IOperator { n, s } => {
                positive(n, "I-operator")?;
                if !(s > 0.5 && s < 1.0) {
                    return Err(Error::InvalidMultiplier(format!(
                        "I-operator needs s in (1/2, 1), got {s}"
                    )));
                }
                Ok(())
            }
            MultiplierSpec::LpBelow { n } => positive(n, "LP-below"),
            MultiplierSpec::LpAbove { n } => positive(n, "LP-above"),
            MultiplierSpec::LpBand { n } => positive(n, "LP-band"),
            MultiplierSpec::Derivative { order, .. } => {
                if order.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidMultiplier(format!(
                        "derivative order must be finite, got {order}"
                    )))
                }
            }
        }
    }

    /// Symbol value at a frequency of magnitude `r`.
    pub fn evaluate_radial(&self, r: f64) -> Result<f64> {
        Ok(match *self {
            MultiplierSpec::IOperator { n, s } => i_symbol(r, n, s),
            MultiplierSpec::LpBelow { n } => lp_bump(r / n),
            MultiplierSpec::LpAbove { n } => 1.0 - lp_bump(r / n),
            MultiplierSpec::LpBand { n } => lp_bump(r / n) - lp_bump(2.0 * r / n),
            MultiplierSpec::Derivative { order, sign } => match sign {
                DerivativeSign::Positive => {
                    if order == 0.0 {
                        1.0
                    } else {
                        r.powf(order)
                    }
                }
                DerivativeSign::Negative => {
                    if r == 0.0 && order != 0.0 {
                        return Err(Error::Singular(format!("|xi|^-{order} at xi = 0")));
                    }
                    r.powf(-order)
                }
            },
        })
    }

    pub fn evaluate(&self, xi: &Freq) -> Result<f64> {
        self.evaluate_radial(norm(xi))
    }
}

pub fn apply_multiplier(spectrum: &Spectrum, spec: &MultiplierSpec) -> Result<Spectrum> {
    spec.validate()?;
    let mut out = spectrum.clone();
    let grid = *spectrum.grid();
    for (j, c) in out.coeffs_mut().iter_mut().enumerate() {
        let m = spec.evaluate(&grid.frequency(j))?;
        *c *= m;
    }
    Ok(out)
}

/// Applies the product of several multipliers. The symbol values are
/// multiplied together before touching the coefficient, so swapping two
/// multipliers gives bit-identical output.
pub fn apply_all(spectrum: &Spectrum, specs: &[MultiplierSpec]) -> Result<Spectrum> {
    for spec in specs {
        spec.validate()?;
    }
    let mut out = spectrum.clone();
    let grid = *spectrum.grid();
    for (j, c) in out.coeffs_mut().iter_mut().enumerate() {
        let xi = grid.frequency(j);
        let mut m = 1.0;
        for spec in specs {
            m *= spec.evaluate(&xi)?;
        }
        *c *= m;
    }
    Ok(out)
}

/// Component `axis` of the spectral gradient, `i xi_axis u_hat`.
pub fn gradient_component(spectrum: &Spectrum, axis: usize) -> Spectrum {
    spectrum.map_with_freq(|xi, c| c * Complex64::new(0.0, xi[axis]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Field, Grid};
    use std::f64::consts::PI;

    #[test]
    fn i_symbol_plateau_and_tail() {
        let i = MultiplierSpec::IOperator { n: 4.0, s: 0.5 };
        assert_eq!(i.evaluate_radial(2.0).unwrap(), 1.0);
        assert!((i.evaluate_radial(16.0).unwrap() - 0.5).abs() < 1e-15);
        // tail clause on |xi| > 2N
        for r in [8.5, 10.0, 40.0] {
            assert!((i.evaluate_radial(r).unwrap() - (4.0 / r).powf(0.5)).abs() < 1e-15);
        }
    }

    #[test]
    fn i_symbol_monotone_nonincreasing() {
        let mut prev = 1.0;
        for k in 0..400 {
            let m = i_symbol(k as f64 * 0.1, 4.0, 0.7);
            assert!(m <= prev && m > 0.0);
            prev = m;
        }
    }

    #[test]
    fn lp_band_vanishes_outside_support() {
        let n = 3.0;
        let band = MultiplierSpec::LpBand { n };
        assert_eq!(band.evaluate_radial(4.0 * n).unwrap(), 0.0);
        assert_eq!(band.evaluate_radial(0.25 * n).unwrap(), 0.0);
        assert!(band.evaluate_radial(0.75 * n).unwrap() > 0.0);
    }

    #[test]
    fn lp_bump_is_c2_at_the_joins() {
        let h = 1e-5;
        for r0 in [1.0, 2.0] {
            let d1 = (lp_bump(r0 + h) - lp_bump(r0 - h)) / (2.0 * h);
            let d2 = (lp_bump(r0 + h) - 2.0 * lp_bump(r0) + lp_bump(r0 - h)) / (h * h);
            assert!(d1.abs() < 1e-8, "d1 at {r0}: {d1}");
            assert!(d2.abs() < 1e-3, "d2 at {r0}: {d2}");
        }
    }

    #[test]
    fn negative_derivative_is_singular_at_zero() {
        let d = MultiplierSpec::Derivative {
            order: 0.5,
            sign: DerivativeSign::Negative,
        };
        assert!(d.evaluate(&[0.0; 3]).is_err());
        assert!((d.evaluate(&[4.0, 0.0, 0.0]).unwrap() - 0.5).abs() < 1e-15);
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        assert!(apply_multiplier(&Field::zeros(g).transform(), &d).is_err());
    }

    #[test]
    fn plateau_leaves_low_modes_unchanged() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let mut u = crate::spectral::Spectrum::zeros(g);
        for k in -4..=4i64 {
            let j = g.flat_of_wavevector(&[k, 0, 0]).unwrap();
            u.coeffs_mut()[j] = Complex64::new(1.0 + k as f64, 0.5);
        }
        let out = apply_multiplier(&u, &MultiplierSpec::IOperator { n: 4.0, s: 0.6 }).unwrap();
        assert_eq!(out, u);
    }

    #[test]
    fn disjoint_cutoffs_annihilate() {
        let g = Grid::new(2, 16, 2.0 * PI).unwrap();
        let u = Field::from_fn(g, |x| Complex64::new((x[0] * 3.0).sin() + x[1].cos(), x[0]))
            .transform();
        let n = 2.0;
        let low = apply_multiplier(&u, &MultiplierSpec::LpBelow { n }).unwrap();
        let both = apply_multiplier(&low, &MultiplierSpec::LpAbove { n: 2.0 * n }).unwrap();
        assert!(both.coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn multipliers_commute_bitwise() {
        let g = Grid::new(2, 8, 2.0 * PI).unwrap();
        let u = Field::from_fn(g, |x| Complex64::new(x[0].sin(), (2.0 * x[1]).cos())).transform();
        let a = MultiplierSpec::IOperator { n: 2.0, s: 0.7 };
        let b = MultiplierSpec::LpBand { n: 4.0 };
        let ab = apply_all(&u, &[a, b]).unwrap();
        let ba = apply_all(&u, &[b, a]).unwrap();
        assert_eq!(ab, ba);
    }
}
