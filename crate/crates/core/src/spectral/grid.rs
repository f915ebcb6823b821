use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A frequency (or position) vector. Components beyond the grid dimension are zero.
pub type Freq = [f64; 3];

/// Integer wavevector; components beyond the grid dimension are zero.
pub type Wavevector = [i64; 3];

/// Periodic sampling lattice on the box `[0, L)^dim` with `M` samples per axis.
///
/// Storage is row-major with the last axis contiguous. Physical sites are
/// `x_j = j L / M`; spectral entries use FFT order, so index `j` carries the
/// integer wavenumber `j` for `j < M/2` and `j - M` otherwise, i.e. the
/// frequency lattice is `{2 pi k / L : k in [-M/2, M/2)}` per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    modes: usize,
    box_length: f64,
}

impl Grid {
    pub fn new(dim: usize, modes: usize, box_length: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!(
                "dim must be 1, 2 or 3, got {dim}"
            )));
        }
        if modes < 4 || !modes.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "modes_per_dim must be even and >= 4, got {modes}"
            )));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "box_length must be positive and finite, got {box_length}"
            )));
        }
        Ok(Self {
            dim,
            modes,
            box_length,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    /// Number of lattice sites, `M^dim`.
    pub fn len(&self) -> usize {
        self.modes.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(L/M)^dim`.
    pub fn cell_volume(&self) -> f64 {
        (self.box_length / self.modes as f64).powi(self.dim as i32)
    }

    /// Box volume `L^dim`.
    pub fn volume(&self) -> f64 {
        self.box_length.powi(self.dim as i32)
    }

    /// Frequency spacing `2 pi / L`.
    pub fn dxi(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Frequency cell volume `(2 pi / L)^dim`.
    pub fn freq_cell_volume(&self) -> f64 {
        self.dxi().powi(self.dim as i32)
    }

    /// Same box, different resolution. Used for zero-padded products.
    pub fn with_modes(&self, modes: usize) -> Result<Self> {
        Self::new(self.dim, modes, self.box_length)
    }

    /// Largest wavenumber magnitude per axis that survives the symmetric
    /// truncation (the Nyquist plane `k = -M/2` is not retained).
    pub fn max_retained(&self) -> i64 {
        self.modes as i64 / 2 - 1
    }

    pub fn wavenumber(&self, index: usize) -> i64 {
        let m = self.modes as i64;
        let j = index as i64;
        if j < m / 2 {
            j
        } else {
            j - m
        }
    }

    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        let mut rest = flat;
        for axis in (0..self.dim).rev() {
            idx[axis] = rest % self.modes;
            rest /= self.modes;
        }
        idx
    }

    pub fn wavevector(&self, flat: usize) -> Wavevector {
        let idx = self.multi_index(flat);
        let mut k = [0i64; 3];
        for axis in 0..self.dim {
            k[axis] = self.wavenumber(idx[axis]);
        }
        k
    }

    pub fn frequency(&self, flat: usize) -> Freq {
        self.frequency_of(&self.wavevector(flat))
    }

    pub fn frequency_of(&self, k: &Wavevector) -> Freq {
        let dxi = self.dxi();
        let mut xi = [0.0; 3];
        for axis in 0..self.dim {
            xi[axis] = dxi * k[axis] as f64;
        }
        xi
    }

    /// Flat spectral index of an integer wavevector, if it lies in `[-M/2, M/2)^dim`.
    pub fn flat_of_wavevector(&self, k: &Wavevector) -> Option<usize> {
        let m = self.modes as i64;
        let mut flat = 0usize;
        for &ka in k.iter().take(self.dim) {
            if ka < -m / 2 || ka >= m / 2 {
                return None;
            }
            let j = if ka >= 0 { ka } else { ka + m };
            flat = flat * self.modes + j as usize;
        }
        Some(flat)
    }

    pub fn position(&self, flat: usize) -> Freq {
        let idx = self.multi_index(flat);
        let h = self.box_length / self.modes as f64;
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = idx[axis] as f64 * h;
        }
        x
    }

    /// True when every component satisfies `|k_a| <= M/2 - 1`.
    pub fn is_retained(&self, k: &Wavevector) -> bool {
        let kmax = self.max_retained();
        k.iter().take(self.dim).all(|ka| ka.abs() <= kmax)
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.dim == other.dim
            && self.modes == other.modes
            && self.box_length.to_bits() == other.box_length.to_bits()
    }

    pub fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

pub fn norm(v: &Freq) -> f64 {
    dot(v, v).sqrt()
}

pub fn norm_sqr(v: &Freq) -> f64 {
    dot(v, v)
}

pub fn dot(a: &Freq, b: &Freq) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn add(a: &Freq, b: &Freq) -> Freq {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn neg(a: &Freq) -> Freq {
    [-a[0], -a[1], -a[2]]
}

pub fn scale(a: &Freq, c: f64) -> Freq {
    [a[0] * c, a[1] * c, a[2] * c]
}
