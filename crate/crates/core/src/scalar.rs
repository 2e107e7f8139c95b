//! Numeric traits shared by the payoff and Markov-chain code.
//!
//! The combinatorial parts of the crate never touch numbers. Everything that
//! does (transition masses, payoffs, tolerances) is written against [`Scalar`]
//! so the same code runs over exact rationals and machine floats.

use std::fmt::{Debug, Display};

use num_rational::{BigRational, Rational64};
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// A signed ordered field element: `f32`, `f64`, `Rational64` or `BigRational`.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
    /// Exact-or-rounded conversion from a small rational.
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).expect("numerator fits") / Self::from_i64(denom).expect("denominator fits")
    }

    fn from_rational64(r: &Rational64) -> Self {
        Self::from_ratio(*r.numer(), *r.denom())
    }

    /// Lossy view used by the floating-point iteration.
    fn to_float<F: Float + FromPrimitive>(&self) -> F {
        F::from_f64(self.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for Rational64 {}
impl Scalar for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(numer.into(), denom.into())
    }
}

/// Parses `n` or `n/d` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational64> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (text.parse::<i64>().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    Some(Rational64::new(n, d))
}

/// Prints a rational as `n` when integral, `n/d` otherwise.
pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_big_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn big(r: &Rational64) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for text in ["0", "3", "-2", "1/2", "-16/3"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(format_rational(&r), text);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn scalar_from_ratio_agrees_across_types() {
        let exact = BigRational::from_ratio(1, 10);
        assert_eq!(format_big_rational(&exact), "1/10");
        let approx: f64 = f64::from_ratio(1, 10);
        assert!((approx - 0.1).abs() < 1e-15);
        let back: f64 = exact.to_float();
        assert!((back - approx).abs() < 1e-15);
    }
}
