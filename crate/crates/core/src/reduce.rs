//! Deterministic summation.
//!
//! Every reduction whose result is compared across runs or thread counts goes
//! through these helpers, so the association order never depends on how work
//! was partitioned.

use num_complex::Complex64;

const BLOCK: usize = 32;

/// Pairwise (cascade) summation with a fixed split point.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

/// Neumaier-compensated accumulator for long sequential inner loops.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplex {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplex {
    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 499_500.0);
    }

    #[test]
    fn compensated_recovers_small_terms() {
        let mut acc = CompensatedSum::default();
        acc.add(1.0e16);
        for _ in 0..1000 {
            acc.add(1.0);
        }
        acc.add(-1.0e16);
        assert_eq!(acc.value(), 1000.0);
    }

    #[test]
    fn empty_sums_are_zero() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum_complex(&[]), Complex64::new(0.0, 0.0));
    }
}
