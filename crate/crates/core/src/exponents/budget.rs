//! Monomial budget of the almost-conservation estimate.

use std::fmt;

use num_traits::Zero;

use super::{rat, Exponent, Rational};

/// Which `M(J, u, q)` factor multiplies a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    One,
    /// `M(J, u, 2)`
    M2,
    /// `M(J, u, 1)`
    M1,
}

impl Tag {
    pub const ALL: [Tag; 3] = [Tag::One, Tag::M2, Tag::M1];

    /// Power of `N` absorbed by the slot in `max{1, M2/N^{1-}, M1/N^{2-}}`.
    pub fn slot_shift(&self) -> Rational {
        match self {
            Tag::One => rat(0, 1),
            Tag::M2 => rat(1, 1),
            Tag::M1 => rat(2, 1),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::One => write!(f, "1"),
            Tag::M2 => write!(f, "M2"),
            Tag::M1 => write!(f, "M1"),
        }
    }
}

/// Epsilon loss attached to a power, carried symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slack {
    Exact,
    /// `N^{a+}`
    Plus,
    /// `N^{a-}`
    Minus,
}

impl Slack {
    /// Whether `N^{a self} <= N^{b}` for large `N`. A `Plus` loss needs `a < b` strictly.
    pub fn power_le(self, a: Rational, b: Rational) -> bool {
        match self {
            Slack::Plus => a < b,
            _ => a <= b,
        }
    }

    fn join(self, other: Slack) -> Slack {
        match (self, other) {
            (Slack::Plus, _) | (_, Slack::Plus) => Slack::Plus,
            (Slack::Exact, s) | (s, Slack::Exact) => s,
            (Slack::Minus, Slack::Minus) => Slack::Minus,
        }
    }
}

/// `tag * theta_0^{theta_power} * N^{n_power}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub tag: Tag,
    pub theta_power: Rational,
    pub n_power: Rational,
    pub slack: Slack,
    pub source: &'static str,
}

impl Monomial {
    pub fn exponent_at(&self, theta0_exp: Rational) -> Rational {
        self.n_power + self.theta_power * theta0_exp
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.theta_power.is_zero() {
            parts.push(format!("theta0^{}", Exponent(self.theta_power)));
        }
        if self.tag != Tag::One {
            parts.push(self.tag.to_string());
        }
        let eps = match self.slack {
            Slack::Plus => "+",
            Slack::Minus => "-",
            Slack::Exact => "",
        };
        parts.push(format!("N^{}{}", Exponent(self.n_power), eps));
        write!(f, "{}", parts.join("*"))
    }
}

const fn r(n: i64, d: i64) -> Rational {
    Rational::new_raw(n, d)
}

/// The monomials of the sextilinear bound and the quadrilinear max-list,
/// transcribed once. `N^{a-}` in a denominator is stored as `N^{-a+}`.
pub const BUDGET_TABLE: [Monomial; 9] = [
    // sextilinear: theta0^{-1} N^{-2+} max{1, M2/N^{1-}, M1/N^{2-}}
    Monomial {
        tag: Tag::One,
        theta_power: r(-1, 1),
        n_power: r(-2, 1),
        slack: Slack::Plus,
        source: "sextic slot 1",
    },
    Monomial {
        tag: Tag::M2,
        theta_power: r(-1, 1),
        n_power: r(-3, 1),
        slack: Slack::Plus,
        source: "sextic slot M2",
    },
    Monomial {
        tag: Tag::M1,
        theta_power: r(-1, 1),
        n_power: r(-4, 1),
        slack: Slack::Plus,
        source: "sextic slot M1",
    },
    // quadrilinear max-list
    Monomial {
        tag: Tag::One,
        theta_power: r(1, 1),
        n_power: r(-1, 2),
        slack: Slack::Plus,
        source: "quartic theta0/N^{1/2-}",
    },
    Monomial {
        tag: Tag::One,
        theta_power: r(0, 1),
        n_power: r(-3, 2),
        slack: Slack::Plus,
        source: "quartic N^{-3/2+}",
    },
    Monomial {
        tag: Tag::M2,
        theta_power: r(0, 1),
        n_power: r(-5, 2),
        slack: Slack::Plus,
        source: "quartic M2/N^{5/2-}",
    },
    Monomial {
        tag: Tag::M1,
        theta_power: r(0, 1),
        n_power: r(-13, 4),
        slack: Slack::Plus,
        source: "quartic M1/N^{13/4-}",
    },
    Monomial {
        tag: Tag::M2,
        theta_power: r(1, 1),
        n_power: r(-7, 4),
        slack: Slack::Plus,
        source: "quartic theta0 M2/N^{7/4-}",
    },
    Monomial {
        tag: Tag::M1,
        theta_power: r(1, 1),
        n_power: r(-9, 4),
        slack: Slack::Plus,
        source: "quartic theta0 M1/N^{9/4-}",
    },
];

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetEntry {
    pub monomial: Monomial,
    pub exponent: Exponent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TagSummary {
    pub tag: Tag,
    /// Dominant power of `N` among monomials with this tag.
    pub exponent: Exponent,
    pub slack: Slack,
    pub binding: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Budget {
    pub theta0_exp: Exponent,
    pub entries: Vec<BudgetEntry>,
    pub tags: Vec<TagSummary>,
}

impl Budget {
    pub fn evaluate(theta0_exp: Rational, table: &[Monomial]) -> Budget {
        let entries: Vec<BudgetEntry> = table
            .iter()
            .map(|m| BudgetEntry {
                monomial: *m,
                exponent: Exponent(m.exponent_at(theta0_exp)),
            })
            .collect();
        let tags = Tag::ALL
            .iter()
            .filter_map(|&tag| {
                let of_tag: Vec<&BudgetEntry> =
                    entries.iter().filter(|e| e.monomial.tag == tag).collect();
                let top = of_tag.iter().map(|e| e.exponent).max()?;
                let binding: Vec<Monomial> = of_tag
                    .iter()
                    .filter(|e| e.exponent == top)
                    .map(|e| e.monomial)
                    .collect();
                let slack = binding.iter().fold(Slack::Exact, |s, m| s.join(m.slack));
                Some(TagSummary {
                    tag,
                    exponent: top,
                    slack,
                    binding,
                })
            })
            .collect();
        Budget {
            theta0_exp: Exponent(theta0_exp),
            entries,
            tags,
        }
    }

    pub fn tag(&self, tag: Tag) -> Option<&TagSummary> {
        self.tags.iter().find(|t| t.tag == tag)
    }

    pub fn tag_exponent(&self, tag: Tag) -> Option<Exponent> {
        self.tag(tag).map(|t| t.exponent)
    }

    /// Leading power `a` in the form `N^{a} max{1, M2/N, M1/N^2}` that
    /// dominates every monomial.
    pub fn overall_exponent(&self) -> Exponent {
        self.tags
            .iter()
            .map(|t| Exponent(t.exponent.0 + t.tag.slot_shift()))
            .max()
            .expect("non-empty budget")
    }

    /// Monomials that attain [`Budget::overall_exponent`].
    pub fn overall_binding(&self) -> Vec<Monomial> {
        let top = self.overall_exponent();
        self.tags
            .iter()
            .filter(|t| Exponent(t.exponent.0 + t.tag.slot_shift()) == top)
            .flat_map(|t| t.binding.iter().copied())
            .collect()
    }
}

/// Substitutes `theta_0 = N^{theta0_exp}` into the tabulated monomials.
pub fn theorem51_budget(theta0_exp: Exponent) -> Budget {
    Budget::evaluate(theta0_exp.0, &BUDGET_TABLE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_theta_gives_nine_eighths() {
        let b = theorem51_budget(Exponent::new(-7, 8));
        assert_eq!(b.tag_exponent(Tag::One), Some(Exponent::new(-9, 8)));
        assert_eq!(b.tag_exponent(Tag::M2), Some(Exponent::new(-17, 8)));
        assert_eq!(b.tag_exponent(Tag::M1), Some(Exponent::new(-25, 8)));
        assert_eq!(b.overall_exponent(), Exponent::new(-9, 8));

        let one = b.tag(Tag::One).unwrap();
        assert_eq!(one.binding.len(), 1);
        assert_eq!(one.binding[0].source, "sextic slot 1");
        let m2 = b.tag(Tag::M2).unwrap();
        assert_eq!(m2.binding.len(), 1);
        assert_eq!(m2.binding[0].source, "sextic slot M2");
        let m1 = b.tag(Tag::M1).unwrap();
        let sources: Vec<_> = m1.binding.iter().map(|m| m.source).collect();
        assert_eq!(
            sources,
            vec!["sextic slot M1", "quartic theta0 M1/N^{9/4-}"]
        );
        assert_eq!(one.slack, Slack::Plus);
    }

    #[test]
    fn theta_one_is_dominated_by_the_quadrilinear_term() {
        let b = theorem51_budget(Exponent::new(0, 1));
        assert_eq!(b.tag_exponent(Tag::One), Some(Exponent::new(-1, 2)));
        assert_eq!(
            b.tag(Tag::One).unwrap().binding[0].source,
            "quartic theta0/N^{1/2-}"
        );
    }

    #[test]
    fn seven_eighths_balances_the_overall_bound() {
        let at = |n: i64| theorem51_budget(Exponent::new(n, 800)).overall_exponent();
        let centre = at(-700);
        assert!(at(-701) > centre);
        assert!(at(-699) > centre);
    }

    #[test]
    fn max_is_order_independent() {
        let mut rev = BUDGET_TABLE;
        rev.reverse();
        let a = Budget::evaluate(rat(-7, 8), &BUDGET_TABLE);
        let b = Budget::evaluate(rat(-7, 8), &rev);
        for tag in Tag::ALL {
            assert_eq!(a.tag_exponent(tag), b.tag_exponent(tag));
        }
        assert_eq!(a.overall_exponent(), b.overall_exponent());
    }

    #[test]
    fn plus_slack_is_strict() {
        assert!(!Slack::Plus.power_le(rat(-1, 1), rat(-1, 1)));
        assert!(Slack::Plus.power_le(rat(-2, 1), rat(-1, 1)));
        assert!(Slack::Exact.power_le(rat(-1, 1), rat(-1, 1)));
    }

    #[test]
    fn monomial_display() {
        assert_eq!(BUDGET_TABLE[0].to_string(), "theta0^-1*N^-2+");
        assert_eq!(BUDGET_TABLE[8].to_string(), "theta0^1*M1*N^-9/4+");
    }
}
