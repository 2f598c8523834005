//! Exact rational scalars used for weights, thresholds and incentives.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Canonical rational number: `gcd(|num|, den) = 1` and `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative denominator")]
    NegativeDenominator,
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `max(self, 0)`.
    pub fn clamp_nonneg(self) -> Self {
        if self.is_negative() {
            Rational::ZERO
        } else {
            self
        }
    }

    /// Multiplies by `scale`, returning the integer numerator when the
    /// product is integral and fits in `i64`.
    pub(crate) fn scaled_to_integer(&self, scale: i64) -> Option<i64> {
        let den = self.denom();
        if scale % den != 0 {
            return None;
        }
        self.numer().checked_mul(scale / den)
    }
}

/// Least common multiple of the denominators, or `None` on overflow.
pub(crate) fn common_denominator<'a, I>(values: I) -> Option<i64>
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut acc: i64 = 1;
    for v in values {
        let d = v.denom();
        let g = acc.gcd(&d);
        acc = (acc / g).checked_mul(d)?;
    }
    Some(acc)
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Accepts `int` or `int/int`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let parse_int = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| RationalParseError::BadInteger(t.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den == 0 {
                    return Err(RationalParseError::ZeroDenominator);
                }
                if den < 0 {
                    return Err(RationalParseError::NegativeDenominator);
                }
                Ok(Rational::new(num, den))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |a, b| a + *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_integer(3));
        assert_eq!("6/4".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!("-1/2".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert_eq!(
            "3/0".parse::<Rational>(),
            Err(RationalParseError::ZeroDenominator)
        );
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn display_is_exact() {
        assert_eq!(Rational::new(3, 2).to_string(), "3/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        assert_eq!(Rational::new(0, 7).to_string(), "0");
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(-10, -4);
        assert_eq!((r.numer(), r.denom()), (5, 2));
        assert_eq!(Rational::new(2, 4), Rational::new(1, 2));
    }

    #[test]
    fn common_denominator_of_mixed_values() {
        let v = [Rational::new(1, 2), Rational::new(2, 3), Rational::from(5)];
        assert_eq!(common_denominator(v.iter()), Some(6));
        assert_eq!(Rational::new(2, 3).scaled_to_integer(6), Some(4));
        assert_eq!(Rational::new(2, 3).scaled_to_integer(4), None);
    }

    proptest! {
        #[test]
        fn display_parse_identity(n in -1000i64..1000, d in 1i64..50) {
            let r = Rational::new(n, d);
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
            prop_assert!(r.denom() > 0);
            prop_assert_eq!(num_integer::gcd(r.numer().abs(), r.denom()), if r.numer() == 0 { r.denom() } else { 1 });
        }
    }
}
