use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponents::{rat, Lebesgue};

/// A Strichartz pair `(q, r)` in three space dimensions: `2/q = 3(1/2 - 1/r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    q: Lebesgue,
    r: Lebesgue,
}

/// Exact rational test of the admissibility relation (with `q >= 2`).
pub fn is_admissible(q: Lebesgue, r: Lebesgue) -> bool {
    q.recip() <= rat(1, 2) && q.recip() * 2 == (rat(1, 2) - r.recip()) * 3
}

impl AdmissiblePair {
    pub fn new(q: Lebesgue, r: Lebesgue) -> Result<Self> {
        if !is_admissible(q, r) {
            return Err(Error::NotAdmissible {
                q: q.to_string(),
                r: r.to_string(),
            });
        }
        Ok(Self { q, r })
    }

    /// The energy pair `(inf, 2)`.
    pub fn energy() -> Self {
        Self {
            q: Lebesgue::INFINITY,
            r: Lebesgue::integer(2).expect("2 >= 1"),
        }
    }

    pub fn q(&self) -> Lebesgue {
        self.q
    }

    pub fn r(&self) -> Lebesgue {
        self.r
    }

    pub fn is_energy(&self) -> bool {
        self.q.recip().is_zero()
    }

    /// `{(inf, 2), (2, 6), (4, 3), (8, 12/5)}`.
    pub fn default_family() -> Vec<AdmissiblePair> {
        let l = |n, d| Lebesgue::ratio(n, d).expect("valid exponent");
        vec![
            Self::energy(),
            Self {
                q: l(2, 1),
                r: l(6, 1),
            },
            Self {
                q: l(4, 1),
                r: l(3, 1),
            },
            Self {
                q: l(8, 1),
                r: l(12, 5),
            },
        ]
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.r)
    }
}
