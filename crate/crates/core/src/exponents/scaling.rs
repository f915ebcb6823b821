//! Exponent arithmetic of the global argument: the scaling parameter
//! `lambda ~ N^{(1-s)/(s-1/2)}`, the subinterval count and the regularity
//! threshold.

use num_traits::{One, Zero};

use super::{rat, Exponent, Rational};
use crate::error::{Error, Result};

/// Power of `N` in `lambda ~ N^{(1-s)/(s-1/2)}`.
pub fn lambda_exponent(s: Rational) -> Result<Exponent> {
    let denom = s - rat(1, 2);
    if denom.is_zero() {
        return Err(Error::InvalidExponent(
            "s = 1/2 is a pole of (1-s)/(s-1/2)".into(),
        ));
    }
    if denom < Rational::zero() {
        return Err(Error::InvalidExponent(format!("s = {s} must exceed 1/2")));
    }
    Ok(Exponent((Rational::one() - s) / denom))
}

/// Smallest `s` with `(1-s)/(s-1/2) * c <= p`, i.e. `s >= (c + p/2) / (c + p)`.
fn threshold_for(per_interval: Rational, n_power: Rational) -> Rational {
    (per_interval + n_power / 2) / (per_interval + n_power)
}

/// Regularity threshold from `lambda^{24/25} <= N^2`.
pub fn gwp_threshold() -> Exponent {
    Exponent(threshold_for(per_interval_budget(), rat(2, 1)))
}

/// Decay power of the fixed-time gap `|E(Iu) - E~(u)| <~ N^{-1+} theta_0^{-1}`.
pub fn pointwise_gap_exponent(theta0_exp: Exponent) -> Exponent {
    Exponent(rat(-1, 1) - theta0_exp.0)
}

/// `4 * 3/8 - 27/50`: the `L^4_{t,x}` budget `lambda^{3/2}` spread over
/// `lambda^{27/50}` subintervals.
fn per_interval_budget() -> Rational {
    rat(4, 1) * rat(3, 8) - rat(27, 50)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyItem {
    pub name: &'static str,
    pub value: Exponent,
    pub expected: Exponent,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section6Report {
    pub items: Vec<ConsistencyItem>,
    /// What the arithmetic does not cover.
    pub gaps: Vec<&'static str>,
}

impl Section6Report {
    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }
}

pub fn section6_consistency() -> Section6Report {
    let mut items = Vec::new();
    let mut push = |name, value: Rational, expected: Rational| {
        items.push(ConsistencyItem {
            name,
            value: Exponent(value),
            expected: Exponent(expected),
            holds: value == expected,
        })
    };
    push("4*(3/8) - 27/50", per_interval_budget(), rat(24, 25));
    let s_star = gwp_threshold().0;
    push("threshold s*", s_star, rat(49, 74));
    let lam = lambda_exponent(s_star).map(|e| e.0).unwrap_or_default();
    push("lambda exponent at s*", lam, rat(50, 24));
    push(
        "(24/25) * lambda exponent at s*  (vs N^2)",
        rat(24, 25) * lam,
        rat(2, 1),
    );
    push(
        "(12/25) * lambda exponent at s*  (vs N^1)",
        rat(12, 25) * lam,
        rat(1, 1),
    );
    Section6Report {
        items,
        gaps: vec![
            "the lambda^{27/50} subinterval count is taken as given; the chained inequality producing it is not displayed",
            "the scaling normalization behind lambda^{3/8} and lambda^{1/4} is not re-derived",
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_49_over_74() {
        assert_eq!(gwp_threshold(), Exponent::new(49, 74));
    }

    #[test]
    fn per_interval_budget_is_24_over_25() {
        assert_eq!(per_interval_budget(), rat(24, 25));
        assert_eq!(rat(3, 2) - rat(27, 50), rat(24, 25));
    }

    #[test]
    fn pole_at_one_half() {
        assert!(lambda_exponent(rat(1, 2)).is_err());
        assert!(lambda_exponent(rat(1, 3)).is_err());
        assert_eq!(lambda_exponent(rat(3, 4)).unwrap(), Exponent::new(1, 1));
    }

    #[test]
    fn threshold_is_sharp() {
        let lam = |s| lambda_exponent(s).unwrap().0 * rat(24, 25);
        assert_eq!(lam(rat(49, 74)), rat(2, 1));
        assert!(lam(rat(50, 74)) < rat(2, 1));
        assert!(lam(rat(48, 74)) > rat(2, 1));
    }

    #[test]
    fn gap_exponent() {
        assert_eq!(
            pointwise_gap_exponent(Exponent::new(-7, 8)),
            Exponent::new(-1, 8)
        );
    }

    #[test]
    fn consistency_report_holds() {
        let rep = section6_consistency();
        assert!(rep.all_hold(), "{rep:?}");
        assert!(!rep.gaps.is_empty());
    }
}
