//! Direct summation over the retained lattice.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::symbol::SymbolK;
use crate::error::Result;
use crate::reduce::pairwise_sum_complex;
use crate::spectral::{Freq, Grid, Spectrum, Wavevector};

/// The retained modes of a grid with their frequencies, plus an index table
/// for wavevector lookup.
#[derive(Debug, Clone)]
pub struct RetainedModes {
    grid: Grid,
    flats: Vec<usize>,
    waves: Vec<Wavevector>,
    freqs: Vec<Freq>,
    /// position in `flats` by flat index, `usize::MAX` when not retained
    slot: Vec<usize>,
}

impl RetainedModes {
    pub fn new(grid: Grid) -> Self {
        let mut flats = Vec::new();
        let mut waves = Vec::new();
        let mut freqs = Vec::new();
        let mut slot = vec![usize::MAX; grid.len()];
        for j in 0..grid.len() {
            let k = grid.wavevector(j);
            if grid.is_retained(&k) {
                slot[j] = flats.len();
                flats.push(j);
                waves.push(k);
                freqs.push(grid.frequency_of(&k));
            }
        }
        Self {
            grid,
            flats,
            waves,
            freqs,
            slot,
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn freq(&self, i: usize) -> Freq {
        self.freqs[i]
    }

    /// Position of a retained wavevector.
    #[inline]
    pub fn find(&self, k: &Wavevector) -> Option<usize> {
        if !self.grid.is_retained(k) {
            return None;
        }
        let flat = self.grid.flat_of_wavevector(k)?;
        let s = self.slot[flat];
        (s != usize::MAX).then_some(s)
    }

    /// `u_hat(xi)` on the retained modes.
    fn plain(&self, s: &Spectrum) -> Vec<Complex64> {
        self.flats.iter().map(|&j| s.coeffs()[j]).collect()
    }

    /// `conj(u_hat(-xi))` on the retained modes (the lattice is closed under negation).
    fn conjugated(&self, s: &Spectrum) -> Vec<Complex64> {
        self.waves
            .iter()
            .map(|k| {
                let neg = [-k[0], -k[1], -k[2]];
                s.coeffs()[self
                    .grid
                    .flat_of_wavevector(&neg)
                    .expect("retained set is symmetric")]
                .conj()
            })
            .collect()
    }
}

/// `(dxi)^{d(k-1)} (2 pi)^{-d(k-2)/2}`.
pub fn lambda_weight(grid: &Grid, k: usize) -> f64 {
    let d = grid.dim() as f64;
    grid.dxi().powf(d * (k as f64 - 1.0)) * (2.0 * PI).powf(-d * (k as f64 - 2.0) / 2.0)
}

fn same_grid(spectra: &[&Spectrum]) -> Result<Grid> {
    let g = *spectra[0].grid();
    for s in &spectra[1..] {
        g.ensure_same(s.grid())?;
    }
    Ok(g)
}

#[inline]
fn neg_sum(ks: &[&Wavevector]) -> Wavevector {
    let mut out = [0i64; 3];
    for k in ks {
        for a in 0..3 {
            out[a] -= k[a];
        }
    }
    out
}

/// `Lambda_2(M; u) = Re sum_xi M(xi, -xi) |u_hat(xi)|^2 dxi^d`.
pub fn lambda2(symbol: &SymbolK, spectrum: &Spectrum) -> Result<f64> {
    symbol.check_arity(2)?;
    let modes = RetainedModes::new(*spectrum.grid());
    let a = modes.plain(spectrum);
    // the partner slot holds conj(u_hat(-(-xi))) = conj(u_hat(xi))
    let terms: Vec<Complex64> = (0..modes.len())
        .map(|i| {
            let xi = modes.freq(i);
            symbol.eval(&[xi, [-xi[0], -xi[1], -xi[2]]]) * a[i].norm_sqr()
        })
        .collect();
    Ok(pairwise_sum_complex(&terms).re * lambda_weight(spectrum.grid(), 2))
}

/// `Lambda_4(M; u_1, u_2, u_3, u_4)` before taking the real part.
///
/// Factors whose magnitude is below `floor` are skipped; `floor = 0` drops
/// exact zeros only and so leaves the sum unchanged.
pub fn lambda4_with(symbol: &SymbolK, spectra: [&Spectrum; 4], floor: f64) -> Result<Complex64> {
    symbol.check_arity(4)?;
    let grid = same_grid(&spectra)?;
    let modes = RetainedModes::new(grid);
    let a1 = modes.plain(spectra[0]);
    let b2 = modes.conjugated(spectra[1]);
    let a3 = modes.plain(spectra[2]);
    let b4 = modes.conjugated(spectra[3]);
    let small = |z: &Complex64| z.norm() <= floor;
    let n = modes.len();
    let partials: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|i1| {
            let mut terms = Vec::new();
            if small(&a1[i1]) {
                return Complex64::new(0.0, 0.0);
            }
            for i2 in 0..n {
                if small(&b2[i2]) {
                    continue;
                }
                let f12 = a1[i1] * b2[i2];
                for i3 in 0..n {
                    if small(&a3[i3]) {
                        continue;
                    }
                    let k4 = neg_sum(&[&modes.waves[i1], &modes.waves[i2], &modes.waves[i3]]);
                    let Some(i4) = modes.find(&k4) else { continue };
                    if small(&b4[i4]) {
                        continue;
                    }
                    let xi = [
                        modes.freqs[i1],
                        modes.freqs[i2],
                        modes.freqs[i3],
                        modes.freqs[i4],
                    ];
                    terms.push(symbol.eval(&xi) * f12 * a3[i3] * b4[i4]);
                }
            }
            pairwise_sum_complex(&terms)
        })
        .collect();
    Ok(pairwise_sum_complex(&partials) * lambda_weight(&grid, 4))
}

pub fn lambda4_complex(symbol: &SymbolK, spectra: [&Spectrum; 4]) -> Result<Complex64> {
    lambda4_with(symbol, spectra, 0.0)
}

/// `Lambda_4(M; u_1, .., u_4)`.
pub fn lambda4(symbol: &SymbolK, spectra: [&Spectrum; 4]) -> Result<f64> {
    Ok(lambda4_complex(symbol, spectra)?.re)
}

/// Range of the merged frequency `eta = xi_1 + xi_2 + xi_3` in
/// [`lambda6_extended`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda6Range {
    /// Every `eta` reachable from retained `xi_1, xi_2, xi_3`; equals the
    /// six-fold sum over the retained lattice.
    Full,
    /// `eta` restricted to the retained lattice, i.e. `|u|^2 u` replaced by
    /// its Galerkin projection. This is the form that appears in the time
    /// derivative of a quartic functional along the truncated flow.
    Retained,
}

/// `Lambda_6(X(M); u)` for a four-symbol `M` through `w = |u|^2 u`:
/// the `xi_1, xi_2, xi_3` block collapses to `(2 pi)^d w_hat(eta)`, leaving a
/// sum over `eta, xi_4, xi_5, xi_6` of the cost of one `Lambda_4`.
pub fn lambda6_extended(symbol: &SymbolK, spectrum: &Spectrum, range: Lambda6Range) -> Result<f64> {
    symbol.check_arity(4)?;
    let grid = *spectrum.grid();
    let modes = RetainedModes::new(grid);
    let u = spectrum.project_retained();
    let b = modes.conjugated(&u);
    let a = modes.plain(&u);

    // eta list with w_hat values
    let (etas, w): (Vec<(Wavevector, Freq)>, Vec<Complex64>) = match range {
        Lambda6Range::Full => {
            let wide = u.cubic_on(3 * grid.modes())?;
            let wg = *wide.grid();
            (0..wg.len())
                .filter(|&j| wide.coeffs()[j] != Complex64::new(0.0, 0.0))
                .map(|j| {
                    let k = wg.wavevector(j);
                    ((k, wg.frequency_of(&k)), wide.coeffs()[j])
                })
                .unzip()
        }
        Lambda6Range::Retained => {
            let p = u.cubic_projected();
            (0..modes.len())
                .map(|i| ((modes.waves[i], modes.freqs[i]), p.coeffs()[modes.flats[i]]))
                .unzip()
        }
    };
    let n = modes.len();
    let partials: Vec<Complex64> = (0..etas.len())
        .into_par_iter()
        .map(|ie| {
            let (ke, xe) = &etas[ie];
            let mut terms = Vec::new();
            for i5 in 0..n {
                if a[i5] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i6 in 0..n {
                    let k4 = neg_sum(&[ke, &modes.waves[i5], &modes.waves[i6]]);
                    let Some(i4) = modes.find(&k4) else { continue };
                    let xi = [*xe, modes.freqs[i4], modes.freqs[i5], modes.freqs[i6]];
                    terms.push(symbol.eval(&xi) * w[ie] * b[i4] * a[i5] * b[i6]);
                }
            }
            pairwise_sum_complex(&terms)
        })
        .collect();
    let d = grid.dim() as i32;
    let weight = grid.dxi().powi(3 * d) * (2.0 * PI).powi(-d);
    Ok((pairwise_sum_complex(&partials) * weight).re)
}

/// `Lambda_4(M; u)` with all four slots equal to `u`.
pub(crate) fn lambda4_u(symbol: &SymbolK, s: &Spectrum) -> Result<f64> {
    lambda4(symbol, [s, s, s, s])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nls::{kinetic_energy, potential_energy};
    use crate::spectral::data::random_band;
    use crate::spectral::norm_sqr;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn calibration_against_energies() {
        for (dim, m, l) in [(1usize, 16usize, 5.0f64), (2, 8, 2.0 * PI)] {
            let g = Grid::new(dim, m, l).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let s = random_band(g, 0.0, f64::INFINITY, 1.0, &mut rng);
            let dir = SymbolK::new(2, "grad", |xi| Complex64::new(0.5 * norm_sqr(&xi[0]), 0.0));
            let l2 = lambda2(&dir, &s).unwrap();
            assert!((l2 - kinetic_energy(&s)).abs() < 1e-12 * l2);
            let quarter = SymbolK::constant(4, Complex64::new(0.25, 0.0));
            let l4 = lambda4_u(&quarter, &s).unwrap();
            let pot = potential_energy(&s);
            assert!((l4 - pot).abs() < 1e-11 * pot, "{l4} vs {pot}");
        }
    }

    #[test]
    fn zero_slot_gives_zero() {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_band(g, 0.0, f64::INFINITY, 0.0, &mut rng);
        let z = Spectrum::zeros(g);
        let m = SymbolK::constant(4, Complex64::new(1.0, 2.0));
        assert_eq!(lambda4(&m, [&s, &z, &s, &s]).unwrap(), 0.0);
        assert!(lambda4(
            &SymbolK::constant(2, Complex64::new(1.0, 0.0)),
            [&s, &s, &s, &s]
        )
        .is_err());
    }

    #[test]
    fn floor_truncation_only_drops_small_factors() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_band(g, 0.0, 4.0, 0.0, &mut rng);
        let m = SymbolK::new(4, "x", |xi| {
            Complex64::new(1.0 + xi[0][0] * xi[1][0], xi[2][0])
        });
        let exact = lambda4_with(&m, [&s, &s, &s, &s], 0.0).unwrap();
        let cut = lambda4_with(&m, [&s, &s, &s, &s], 1e-300).unwrap();
        assert_eq!(exact, cut);
    }
}
