#![allow(dead_code)]

use imethod_core::multilinear::{lambda_weight, SymbolK};
use imethod_core::spectral::{Grid, Spectrum, Wavevector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Retained wavevectors with their flat index.
pub fn retained(grid: &Grid) -> Vec<(Wavevector, usize)> {
    (0..grid.len())
        .map(|j| (grid.wavevector(j), j))
        .filter(|(k, _)| grid.is_retained(k))
        .collect()
}

fn minus(ks: &[Wavevector]) -> Wavevector {
    let mut out = [0; 3];
    for k in ks {
        for a in 0..3 {
            out[a] -= k[a];
        }
    }
    out
}

/// Slot `j` (zero-based) carries `u_hat(xi)` for even `j`, `conj u_hat(-xi)` for odd `j`.
fn factor(s: &Spectrum, k: &Wavevector, slot: usize) -> Complex64 {
    let g = s.grid();
    if slot.is_multiple_of(2) {
        s.coeffs()[g.flat_of_wavevector(k).unwrap()]
    } else {
        s.coeffs()[g.flat_of_wavevector(&[-k[0], -k[1], -k[2]]).unwrap()].conj()
    }
}

/// Direct `(k-1)`-fold lattice sum of `Lambda_k(M; u)` before the real part.
pub fn brute_lambda(symbol: &SymbolK, s: &Spectrum) -> Complex64 {
    let g = *s.grid();
    let k = symbol.arity();
    let modes = retained(&g);
    let mut idx = vec![0usize; k - 1];
    let mut total = Complex64::new(0.0, 0.0);
    'outer: loop {
        let mut ks: Vec<Wavevector> = idx.iter().map(|&i| modes[i].0).collect();
        let last = minus(&ks);
        if g.is_retained(&last) {
            ks.push(last);
            let xi: Vec<[f64; 3]> = ks.iter().map(|kv| g.frequency_of(kv)).collect();
            let mut term = symbol.eval(&xi);
            for (slot, kv) in ks.iter().enumerate() {
                term *= factor(s, kv, slot);
            }
            total += term;
        }
        for p in idx.iter_mut() {
            *p += 1;
            if *p < modes.len() {
                continue 'outer;
            }
            *p = 0;
        }
        break;
    }
    total * lambda_weight(&g, k)
}

/// Complex normal coefficients on the retained lattice times `(1 + |xi|)^{-decay}`.
pub fn random_spectrum<R: Rng>(grid: Grid, decay: f64, rng: &mut R) -> Spectrum {
    imethod_core::spectral::data::random_band(grid, 0.0, f64::INFINITY, decay, rng)
}

/// A random four-symbol built from even functions of the frequencies.
pub fn random_even_symbol4<R: Rng>(rng: &mut R) -> SymbolK {
    let c: Vec<Complex64> = (0..6)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    SymbolK::new(4, "random even", move |xi| {
        let d = |a: usize, b: usize| (0..3).map(|i| xi[a][i] * xi[b][i]).sum::<f64>();
        c[0] + c[1] * d(0, 0)
            + c[2] * d(0, 2)
            + c[3] * d(1, 3)
            + c[4] * d(0, 1).powi(2) / (1.0 + d(2, 2))
            + c[5] * (1.0 + d(3, 3)).sqrt()
    })
}

/// A random four-symbol with no parity.
pub fn random_symbol4<R: Rng>(rng: &mut R) -> SymbolK {
    let even = random_even_symbol4(rng);
    let c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    SymbolK::new(4, "random", move |xi| {
        even.eval(xi) + c * (xi[0][0] - 2.0 * xi[3][0])
    })
}
