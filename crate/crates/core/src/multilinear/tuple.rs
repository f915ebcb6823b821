use crate::error::{Error, Result};
use crate::spectral::{add, norm, Freq};

/// A point of `Sigma_k`, `k` even.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTuple {
    xi: Vec<Freq>,
}

impl FrequencyTuple {
    /// Checks `k in {2, 4, 6}` and `|sum xi_j| <= 1e-12 max(1, max |xi_j|)`.
    pub fn new(xi: Vec<Freq>) -> Result<Self> {
        let k = xi.len();
        if !matches!(k, 2 | 4 | 6) {
            return Err(Error::Arity {
                expected: 4,
                got: k,
            });
        }
        let total = xi.iter().fold([0.0; 3], |a, x| add(&a, x));
        let scale = xi.iter().map(norm).fold(1.0, f64::max);
        let off = norm(&total);
        if off > 1e-12 * scale {
            return Err(Error::OffHyperplane(off));
        }
        Ok(Self { xi })
    }

    /// Builds a quartet from `xi_1, xi_2, xi_3`, setting `xi_4 = -(xi_1 + xi_2 + xi_3)`.
    pub fn quartet(x1: Freq, x2: Freq, x3: Freq) -> Self {
        let s = add(&add(&x1, &x2), &x3);
        Self {
            xi: vec![x1, x2, x3, [-s[0], -s[1], -s[2]]],
        }
    }

    pub fn k(&self) -> usize {
        self.xi.len()
    }

    pub fn as_slice(&self) -> &[Freq] {
        &self.xi
    }

    /// `xi_j`, one-based as in the usual notation.
    pub fn xi(&self, j: usize) -> Freq {
        self.xi[j - 1]
    }

    /// `xi_{ab} = xi_a + xi_b` (one-based).
    pub fn pair(&self, a: usize, b: usize) -> Freq {
        add(&self.xi[a - 1], &self.xi[b - 1])
    }

    pub fn xi12(&self) -> Freq {
        self.pair(1, 2)
    }

    pub fn xi14(&self) -> Freq {
        self.pair(1, 4)
    }

    pub fn xi123(&self) -> Freq {
        add(&self.pair(1, 2), &self.xi[2])
    }

    /// Slot `j` of the result holds `xi_{perm[j]}` (zero-based).
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            xi: perm.iter().map(|&p| self.xi[p]).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.xi.iter().map(norm).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_membership() {
        let t = FrequencyTuple::new(vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(t.xi12(), [1.0, 1.0, 0.0]);
        assert_eq!(t.xi14(), [1.0, -1.0, 0.0]);
        assert_eq!(t.xi123(), [0.0, 1.0, 0.0]);
        assert!(FrequencyTuple::new(vec![[1.0, 0.0, 0.0]; 4]).is_err());
        assert!(FrequencyTuple::new(vec![[0.0; 3]; 3]).is_err());
    }
}
