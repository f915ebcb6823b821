use num_traits::{One, Zero};

use super::{rat, Exponent, Lebesgue, Rational};
use crate::error::{Error, Result};

/// `theta` in `1/q = 1/4 - theta/4`: the position of `L_t^q` between the
/// `L_t^4 L_x^3` and `L_t^inf L_x^2` endpoints.
pub fn theta_of_q(q: Lebesgue) -> Result<Exponent> {
    let theta = Rational::one() - q.recip() * 4;
    if theta < Rational::zero() || theta > Rational::one() {
        return Err(Error::InvalidExponent(format!(
            "q = {q} puts theta = {theta} outside [0, 1] (need q >= 4)"
        )));
    }
    Ok(Exponent(theta))
}

/// `1/r = 1/3 + theta/6`.
pub fn r_of_theta(theta: Exponent) -> Result<Lebesgue> {
    Lebesgue::from_recip(rat(1, 3) + theta.0 / 6)
}

/// Decay exponent `-3/4 - theta/4` of the high-frequency nonlinear part.
pub fn smoothing_exponent(theta: Exponent) -> Exponent {
    Exponent(rat(-3, 4) - theta.0 / 4)
}

/// Exponent pair with reciprocals `weight/first + (1 - weight)/second`.
pub fn pair_between(
    first: (Lebesgue, Lebesgue),
    second: (Lebesgue, Lebesgue),
    weight: Rational,
) -> Result<(Lebesgue, Lebesgue)> {
    if weight < Rational::zero() || weight > Rational::one() {
        return Err(Error::InvalidExponent(format!(
            "interpolation weight {weight} outside [0, 1]"
        )));
    }
    let mix =
        |a: Lebesgue, b: Lebesgue| weight * a.recip() + (Rational::one() - weight) * b.recip();
    Ok((
        Lebesgue::from_recip(mix(first.0, second.0))?,
        Lebesgue::from_recip(mix(first.1, second.1))?,
    ))
}

/// The weight on `first` whose time exponent equals `q`.
pub fn weight_for_q(first: Lebesgue, second: Lebesgue, q: Lebesgue) -> Result<Rational> {
    let denom = first.recip() - second.recip();
    if denom.is_zero() {
        return Err(Error::InvalidExponent(
            "endpoints share the same time exponent".into(),
        ));
    }
    let w = (q.recip() - second.recip()) / denom;
    if w < Rational::zero() || w > Rational::one() {
        return Err(Error::InvalidExponent(format!(
            "q = {q} is not between the endpoints (weight {w})"
        )));
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterpolationTarget {
    ThetaOfQ(Lebesgue),
    PairBetween {
        first: (Lebesgue, Lebesgue),
        second: (Lebesgue, Lebesgue),
        weight: Rational,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterpolationSolution {
    Theta {
        theta: Exponent,
        r: Lebesgue,
        decay: Exponent,
    },
    Pair {
        q: Lebesgue,
        r: Lebesgue,
    },
}

pub fn interpolation_solve(target: InterpolationTarget) -> Result<InterpolationSolution> {
    match target {
        InterpolationTarget::ThetaOfQ(q) => {
            let theta = theta_of_q(q)?;
            Ok(InterpolationSolution::Theta {
                theta,
                r: r_of_theta(theta)?,
                decay: smoothing_exponent(theta),
            })
        }
        InterpolationTarget::PairBetween {
            first,
            second,
            weight,
        } => {
            let (q, r) = pair_between(first, second, weight)?;
            Ok(InterpolationSolution::Pair { q, r })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::is_admissible;

    fn l(p: i64) -> Lebesgue {
        Lebesgue::integer(p).unwrap()
    }

    #[test]
    fn endpoint_thetas() {
        assert_eq!(theta_of_q(l(4)).unwrap(), Exponent::new(0, 1));
        assert_eq!(
            smoothing_exponent(theta_of_q(l(4)).unwrap()),
            Exponent::new(-3, 4)
        );
        assert_eq!(theta_of_q(Lebesgue::INFINITY).unwrap(), Exponent::new(1, 1));
        assert_eq!(
            smoothing_exponent(Exponent::new(1, 1)),
            Exponent::new(-1, 1)
        );
        assert_eq!(r_of_theta(Exponent::new(0, 1)).unwrap(), l(3));
        assert_eq!(r_of_theta(Exponent::new(1, 1)).unwrap(), l(2));
    }

    #[test]
    fn q_below_four_is_out_of_range() {
        assert!(theta_of_q(l(2)).is_err());
    }

    #[test]
    fn midpoint_of_energy_and_endpoint_pairs() {
        let (q, r) = pair_between((Lebesgue::INFINITY, l(2)), (l(2), l(6)), rat(1, 2)).unwrap();
        assert_eq!((q, r), (l(4), l(3)));
        assert_eq!(
            weight_for_q(Lebesgue::INFINITY, l(2), l(4)).unwrap(),
            rat(1, 2)
        );
    }

    #[test]
    fn theta_family_stays_admissible() {
        for k in 0..=10 {
            let theta = Exponent(rat(k, 10));
            let q = Lebesgue::from_recip(rat(1, 4) - theta.0 / 4).unwrap();
            let r = r_of_theta(theta).unwrap();
            assert!(is_admissible(q, r), "theta = {theta}");
        }
    }

    #[test]
    fn low_frequency_interpolation_family() {
        // (inf, 6) and (4, 4) mixed with weight a give ((1-a)/4, (3-a)/12)
        for k in 0..=8 {
            let a = rat(k, 8);
            let (q, r) = pair_between((Lebesgue::INFINITY, l(6)), (l(4), l(4)), a).unwrap();
            assert_eq!(q.recip(), (Rational::one() - a) / 4);
            assert_eq!(r.recip(), (rat(3, 1) - a) / 12);
            // (4/(1+a), 6/(2-a)) is admissible
            let q2 = Lebesgue::from_recip((Rational::one() + a) / 4).unwrap();
            let r2 = Lebesgue::from_recip((rat(2, 1) - a) / 6).unwrap();
            assert!(is_admissible(q2, r2));
        }
    }

    #[test]
    fn solve_dispatch() {
        match interpolation_solve(InterpolationTarget::ThetaOfQ(l(8))).unwrap() {
            InterpolationSolution::Theta { theta, r, decay } => {
                assert_eq!(theta, Exponent::new(1, 2));
                assert_eq!(r, Lebesgue::ratio(12, 5).unwrap());
                assert_eq!(decay, Exponent::new(-7, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(interpolation_solve(InterpolationTarget::PairBetween {
            first: (Lebesgue::INFINITY, l(2)),
            second: (l(2), l(6)),
            weight: rat(3, 2),
        })
        .is_err());
    }
}
