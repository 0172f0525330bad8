//! Scalar abstraction for the exact root-system arithmetic.
//!
//! Everything in the primary computation path runs over [`Q`] (arbitrary
//! precision rationals). The geometry code is written against [`Scalar`] so it
//! can also be instantiated over `Rational64` for quick experiments.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the primary computation path.
pub type Q = BigRational;

/// Field-like number type usable for weights and pairings.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static {
    /// `num / den` in this scalar type.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits scalar") / Self::from_i64(den).expect("integer fits scalar")
    }

    /// Exact conversion to a big rational, when the value is representable.
    fn to_big_rational(&self) -> Option<BigRational>;

    fn from_big_rational(value: &BigRational) -> Option<Self>;
}

impl Scalar for BigRational {
    fn to_big_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_big_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }
}

impl Scalar for Ratio<i64> {
    fn to_big_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom())))
    }

    fn from_big_rational(value: &BigRational) -> Option<Self> {
        Some(Ratio::new(value.numer().to_i64()?, value.denom().to_i64()?))
    }
}

impl Scalar for Ratio<i128> {
    fn to_big_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom())))
    }

    fn from_big_rational(value: &BigRational) -> Option<Self> {
        Some(Ratio::new(value.numer().to_i128()?, value.denom().to_i128()?))
    }
}

/// Returns the value as an integer if it has denominator one.
pub fn as_integer(value: &BigRational) -> Option<BigInt> {
    value.is_integer().then(|| value.numer().clone())
}

/// `true` when the rational has denominator one.
pub fn is_integral<T: Scalar>(value: &T) -> bool {
    value.to_big_rational().map(|q| q.is_integer()).unwrap_or(false)
}

/// Renders a rational as `n` or `n/d`.
pub fn render_q(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `n` or `n/d`.
pub fn parse_q(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str_radix(n.trim(), 10).ok()?;
            let d = BigInt::from_str_radix(d.trim(), 10).ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str_radix(text, 10).ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn ratio_and_render() {
        let half = BigRational::ratio(1, 2);
        assert_eq!(render_q(&half), "1/2");
        assert_eq!(render_q(&Q::from_integer((-3).into())), "-3");
        assert_eq!(parse_q("-6/4"), Some(BigRational::ratio(-3, 2)));
        assert_eq!(parse_q("x"), None);
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn small_rational_roundtrip() {
        let x = Rational64::ratio(7, 3);
        let b = x.to_big_rational().unwrap();
        assert_eq!(Rational64::from_big_rational(&b), Some(x));
        assert!(!is_integral(&x));
        assert!(is_integral(&Rational64::ratio(6, 3)));
    }
}
