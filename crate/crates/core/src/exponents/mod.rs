//! Exact rational bookkeeping for powers of `N`, `lambda` and `theta_0`.
//!
//! Nothing in here touches floating point except the `to_f64` conveniences
//! used for display.

mod budget;
mod interpolation;
mod scaling;

pub use budget::{
    theorem51_budget, Budget, BudgetEntry, Monomial, Slack, Tag, TagSummary, BUDGET_TABLE,
};
pub use interpolation::{
    interpolation_solve, pair_between, r_of_theta, smoothing_exponent, theta_of_q, weight_for_q,
    InterpolationSolution, InterpolationTarget,
};
pub use scaling::{
    gwp_threshold, lambda_exponent, pointwise_gap_exponent, section6_consistency, ConsistencyItem,
    Section6Report,
};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// A rational power, e.g. the `-9/8` in `N^{-9/8}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Rational);

impl Exponent {
    pub fn new(n: i64, d: i64) -> Self {
        Exponent(Rational::new(n, d))
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `a`, `a/b` with integer `a`, `b`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidExponent(format!("cannot read {text:?} as a rational"));
        let text = text.trim();
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Exponent(Rational::new(n, d)))
    }
}

impl From<Rational> for Exponent {
    fn from(r: Rational) -> Self {
        Exponent(r)
    }
}

/// A Lebesgue exponent in `[1, inf]`, stored through its reciprocal so that
/// `inf` is just `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lebesgue {
    recip: Rational,
}

impl Lebesgue {
    pub const INFINITY: Lebesgue = Lebesgue {
        recip: Rational::new_raw(0, 1),
    };

    pub fn integer(p: i64) -> Result<Self> {
        Self::ratio(p, 1)
    }

    pub fn ratio(n: i64, d: i64) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidExponent(format!(
                "{n}/{d} is not a Lebesgue exponent"
            )));
        }
        let p = Rational::new(n, d);
        if p < Rational::one() {
            return Err(Error::InvalidExponent(format!("{p} < 1")));
        }
        Ok(Lebesgue { recip: p.recip() })
    }

    pub fn from_recip(recip: Rational) -> Result<Self> {
        if recip.is_negative() || recip > Rational::one() {
            return Err(Error::InvalidExponent(format!(
                "reciprocal {recip} outside [0, 1]"
            )));
        }
        Ok(Lebesgue { recip })
    }

    pub fn recip(&self) -> Rational {
        self.recip
    }

    pub fn is_infinite(&self) -> bool {
        self.recip.is_zero()
    }

    pub fn value(&self) -> Option<Rational> {
        if self.is_infinite() {
            None
        } else {
            Some(self.recip.recip())
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.value() {
            None => f64::INFINITY,
            Some(p) => *p.numer() as f64 / *p.denom() as f64,
        }
    }
}

impl FromStr for Lebesgue {
    type Err = Error;

    /// Accepts `inf` or a rational `p >= 1`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Lebesgue::INFINITY);
        }
        let p: Exponent = t.parse()?;
        Lebesgue::ratio(*p.0.numer(), *p.0.denom())
    }
}

impl fmt::Display for Lebesgue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => write!(f, "inf"),
            Some(p) => write!(f, "{}", Exponent(p)),
        }
    }
}
