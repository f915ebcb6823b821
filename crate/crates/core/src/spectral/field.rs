use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;

use super::fft::{fft_nd, Direction};
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::reduce::pairwise_sum;

/// Complex samples of a function on the physical lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
}

/// Fourier coefficients on the frequency lattice, FFT ordered.
///
/// Normalization is the discrete analogue of the unitary transform on the
/// whole space:
///
/// `u_hat(xi) = (2 pi)^{-d/2} (L/M)^d sum_x u(x) e^{-i xi.x}`,
/// `u(x) = (2 pi)^{-d/2} (2 pi/L)^d sum_xi u_hat(xi) e^{i xi.x}`,
///
/// so that `sum |u|^2 (L/M)^d = sum |u_hat|^2 (2 pi/L)^d` and the coefficients
/// of a trigonometric polynomial do not depend on the sampling resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

fn check_len(grid: &Grid, len: usize) -> Result<()> {
    if len != grid.len() {
        return Err(Error::GridMismatch(format!(
            "expected {} values for {:?}, got {len}",
            grid.len(),
            grid
        )));
    }
    Ok(())
}

impl Field {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        check_len(&grid, values.len())?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Samples `f` at every lattice site.
    pub fn from_fn(grid: Grid, mut f: impl FnMut(&[f64; 3]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|j| f(&grid.position(j))).collect();
        Self { grid, values }
    }

    /// `amplitude * e^{i xi0 . x}` with `xi0 = 2 pi k / L`.
    pub fn plane_wave(grid: Grid, k: [i64; 3], amplitude: Complex64) -> Self {
        let xi = grid.frequency_of(&k);
        Self::from_fn(grid, |x| {
            let phase = xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2];
            amplitude * Complex64::from_polar(1.0, phase)
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn transform(&self) -> Spectrum {
        let g = self.grid;
        let mut data = self.values.clone();
        fft_nd(&mut data, g.dim(), g.modes(), Direction::Forward);
        let c = g.cell_volume() * (2.0 * PI).powf(-(g.dim() as f64) / 2.0);
        data.iter_mut().for_each(|z| *z *= c);
        Spectrum {
            grid: g,
            coeffs: data,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `int |u|^2` by the lattice rule.
    pub fn l2_norm_sqr(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|z| z.norm_sqr()).collect();
        pairwise_sum(&sq) * self.grid.cell_volume()
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Field {
            grid: self.grid,
            values,
        })
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Field {
            grid: self.grid,
            values,
        })
    }

    pub fn scaled(&self, c: Complex64) -> Field {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|z| z * c).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Field) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Little-endian record: `dim`, `M` as u64, `L` as f64, then interleaved
    /// re/im f64 pairs in row-major lattice order.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        write_block(w, &self.grid, &self.values)
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let (grid, values) = read_block(r)?;
        Ok(Self { grid, values })
    }
}

impl Spectrum {
    pub fn new(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len(&grid, coeffs.len())?;
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn inverse_transform(&self) -> Field {
        let g = self.grid;
        let mut data = self.coeffs.clone();
        fft_nd(&mut data, g.dim(), g.modes(), Direction::Inverse);
        let c = g.freq_cell_volume() * (2.0 * PI).powf(-(g.dim() as f64) / 2.0);
        data.iter_mut().for_each(|z| *z *= c);
        Field {
            grid: g,
            values: data,
        }
    }

    /// `sum |u_hat|^2 (2 pi / L)^d`.
    pub fn l2_norm_sqr(&self) -> f64 {
        let sq: Vec<f64> = self.coeffs.iter().map(|z| z.norm_sqr()).collect();
        pairwise_sum(&sq) * self.grid.freq_cell_volume()
    }

    /// Coefficient-wise map with access to the frequency vector.
    pub fn map_with_freq(&self, mut f: impl FnMut(&[f64; 3], Complex64) -> Complex64) -> Spectrum {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| f(&self.grid.frequency(j), c))
            .collect();
        Spectrum {
            grid: self.grid,
            coeffs,
        }
    }

    /// Zeroes every mode outside `|k_a| <= M/2 - 1` (in particular the Nyquist planes).
    pub fn project_retained(&self) -> Spectrum {
        let mut out = self.clone();
        for (j, c) in out.coeffs.iter_mut().enumerate() {
            if !self.grid.is_retained(&self.grid.wavevector(j)) {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    /// Re-expresses the same trigonometric polynomial on a grid with `modes`
    /// samples per axis: zero padding when enlarging, truncation when shrinking.
    pub fn resample(&self, modes: usize) -> Result<Spectrum> {
        let target = self.grid.with_modes(modes)?;
        let mut out = Spectrum::zeros(target);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let k = self.grid.wavevector(j);
            if let Some(t) = target.flat_of_wavevector(&k) {
                out.coeffs[t] = c;
            }
        }
        Ok(out)
    }

    /// Coefficients of `|u|^2 u` computed on a grid with `modes` samples per
    /// axis. With `modes >= 2M` every product frequency of a retained-mode
    /// field is resolved up to the Nyquist plane, and aliased contributions
    /// miss the retained lattice of the original grid.
    pub fn cubic_on(&self, modes: usize) -> Result<Spectrum> {
        let mut u = self.resample(modes)?.inverse_transform();
        for z in u.values_mut() {
            *z *= z.norm_sqr();
        }
        Ok(u.transform())
    }

    /// Galerkin projection of `|u|^2 u` onto the retained lattice.
    pub fn cubic_projected(&self) -> Spectrum {
        let m = self.grid.modes();
        let full = self
            .cubic_on(2 * m)
            .expect("doubling a valid grid is valid");
        full.resample(m)
            .expect("original grid is valid")
            .project_retained()
    }

    /// `sum |u_hat|^2 w` pointwise in `xi`, times the frequency cell volume.
    pub fn weighted_norm_sqr(&self, mut weight: impl FnMut(&[f64; 3]) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| weight(&self.grid.frequency(j)) * c.norm_sqr())
            .collect();
        pairwise_sum(&terms) * self.grid.freq_cell_volume()
    }

    /// Upper bound for `sup |u|` from the coefficients alone.
    pub fn sup_bound(&self) -> f64 {
        let g = self.grid;
        let c = g.freq_cell_volume() * (2.0 * PI).powf(-(g.dim() as f64) / 2.0);
        self.coeffs.iter().map(|z| z.norm()).sum::<f64>() * c
    }

    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        write_block(w, &self.grid, &self.coeffs)
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let (grid, coeffs) = read_block(r)?;
        Ok(Self { grid, coeffs })
    }
}

fn write_block<W: Write>(w: &mut W, grid: &Grid, data: &[Complex64]) -> Result<()> {
    w.write_all(&(grid.dim() as u64).to_le_bytes())?;
    w.write_all(&(grid.modes() as u64).to_le_bytes())?;
    w.write_all(&grid.box_length().to_le_bytes())?;
    let mut buf = Vec::with_capacity(16 * data.len());
    for z in data {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_block<R: Read>(r: &mut R) -> Result<(Grid, Vec<Complex64>)> {
    let dim = read_u64(r)?;
    let modes = read_u64(r)?;
    let length = f64::from_bits(read_u64(r)?);
    if dim > 3 || modes > (1 << 20) {
        return Err(Error::Format(format!(
            "implausible header dim={dim} modes={modes}"
        )));
    }
    let grid = Grid::new(dim as usize, modes as usize, length)
        .map_err(|e| Error::Format(e.to_string()))?;
    let mut bytes = vec![0u8; 16 * grid.len()];
    r.read_exact(&mut bytes)?;
    let data = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            Complex64::new(re, im)
        })
        .collect();
    Ok((grid, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(grid: Grid, seed: u64) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Field::from_fn(grid, |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    #[test]
    fn zero_field_has_zero_spectrum() {
        let g = Grid::new(2, 8, 1.0).unwrap();
        let s = Field::zeros(g).transform();
        assert!(s.coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn plane_wave_is_a_single_mode() {
        let g = Grid::new(2, 8, 2.0 * PI).unwrap();
        let u = Field::plane_wave(g, [2, -3, 0], Complex64::new(0.5, 0.25));
        let s = u.transform();
        let target = g.flat_of_wavevector(&[2, -3, 0]).unwrap();
        for (j, c) in s.coeffs().iter().enumerate() {
            if j == target {
                assert!(c.norm() > 1e-3);
            } else {
                assert!(c.norm() < 1e-13, "leak at {j}: {c}");
            }
        }
    }

    #[test]
    fn round_trip_is_identity() {
        for dim in 1..=3 {
            let g = Grid::new(dim, 8, 3.7).unwrap();
            let u = random_field(g, 7 + dim as u64);
            let back = u.transform().inverse_transform();
            assert!(back.max_abs_diff(&u).unwrap() < 1e-12 * u.sup_norm());
        }
    }

    #[test]
    fn plancherel_holds() {
        let g = Grid::new(2, 16, 5.0).unwrap();
        let u = random_field(g, 3);
        let lhs = u.l2_norm_sqr();
        let rhs = u.transform().l2_norm_sqr();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }

    #[test]
    fn resample_preserves_the_function() {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        let u = Field::plane_wave(g, [3, 0, 0], Complex64::new(1.0, 0.0));
        let up = u.transform().resample(16).unwrap().inverse_transform();
        let direct = Field::plane_wave(*up.grid(), [3, 0, 0], Complex64::new(1.0, 0.0));
        assert!(up.max_abs_diff(&direct).unwrap() < 1e-13);
    }

    #[test]
    fn binary_round_trip_and_layout() {
        let g = Grid::new(2, 4, 1.5).unwrap();
        let u = random_field(g, 11);
        let mut bytes = Vec::new();
        u.write_binary(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 24 + 16 * 16);
        assert_eq!(&bytes[..8], &2u64.to_le_bytes());
        assert_eq!(&bytes[8..16], &4u64.to_le_bytes());
        assert_eq!(&bytes[16..24], &1.5f64.to_le_bytes());
        assert_eq!(&bytes[24..32], &u.values()[0].re.to_le_bytes());
        let back = Field::read_binary(&mut bytes.as_slice()).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn truncated_binary_is_an_error() {
        let g = Grid::new(1, 4, 1.0).unwrap();
        let mut bytes = Vec::new();
        Field::zeros(g).write_binary(&mut bytes).unwrap();
        bytes.truncate(bytes.len() - 3);
        assert!(Field::read_binary(&mut bytes.as_slice()).is_err());
    }
}
