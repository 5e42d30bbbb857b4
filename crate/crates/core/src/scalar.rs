//! Exact scalar abstraction.
//!
//! Every probability in the crate is a value of some [`Scalar`]: an exact
//! ordered field. The blanket implementation covers `num_rational::Ratio<I>`
//! for any signed integer type `I`, so `BigRational` (arbitrary precision),
//! `Ratio<i64>` and `Ratio<i128>` all work. Floating point types are
//! deliberately not `Scalar`s: they are not `Ord` and their sums are not exact.
//!
//! Fixed-width ratios overflow (and panic in debug builds) once numerators or
//! denominators leave the range of `I`; dyadic masses such as `2^-64` need
//! `BigRational` or `Ratio<i128>`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};

/// An exact ordered field used for probability masses.
pub trait Scalar:
    Clone + Debug + Ord + Hash + Num + Signed + Sum + Send + Sync + 'static
{
    /// The scalar equal to the count `n`.
    fn from_count(n: u64) -> Self;

    /// Parses `"a/b"` or `"a"`; the denominator must be strictly positive.
    fn parse_exact(s: &str) -> Result<Self>;

    /// Renders as `numerator/denominator` in lowest terms, always with the
    /// slash (`0/1`, `1/1`, `-1/2`).
    fn to_fraction_string(&self) -> String;

    /// `2^-n`.
    fn dyadic(n: u64) -> Self {
        let mut base = Self::from_count(2);
        let mut denom = Self::one();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                denom = denom * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        Self::one() / denom
    }

    fn is_probability(&self) -> bool {
        !self.is_negative() && *self <= Self::one()
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + FromStr + Send + Sync + 'static,
{
    fn from_count(n: u64) -> Self {
        let int = I::from_u64(n).expect("count does not fit the scalar's integer type");
        Ratio::from_integer(int)
    }

    fn parse_exact(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseRational {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let (numer, denom) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        if numer.is_empty() {
            return Err(fail("missing numerator"));
        }
        let numer = I::from_str(numer).map_err(|_| fail("numerator is not an integer"))?;
        let denom = match denom {
            None => I::one(),
            Some(d) => {
                if d.starts_with('-') || d.starts_with('+') {
                    return Err(fail("denominator must be a positive integer"));
                }
                let d = I::from_str(d).map_err(|_| fail("denominator is not an integer"))?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                d
            }
        };
        Ok(Ratio::new(numer, denom))
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// Builds the lowest-terms rational `n/d` with a positive denominator.
pub fn normalize_rational<I>(n: I, d: I) -> Result<Ratio<I>>
where
    I: Integer + Signed + Clone,
{
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Ratio::new(n, d))
}

/// Exact sum of a sequence of scalars.
pub fn exact_sum<'a, T: Scalar, It: IntoIterator<Item = &'a T>>(values: It) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> Rational {
        normalize_rational(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn normalize_reduces_and_fixes_sign() {
        assert_eq!(big(2, 4).to_fraction_string(), "1/2");
        assert_eq!(big(3, -6).to_fraction_string(), "-1/2");
        assert_eq!(big(0, 7).to_fraction_string(), "0/1");
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        let err = normalize_rational(BigInt::from(1), BigInt::from(0)).unwrap_err();
        assert_eq!(err, Error::ZeroDenominator);
        assert_eq!(err.to_string(), "zero denominator");
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(Rational::parse_exact("6/8").unwrap(), big(3, 4));
        assert_eq!(Rational::parse_exact(" -2 ").unwrap(), big(-2, 1));
        assert_eq!(Rational::parse_exact("0").unwrap(), big(0, 1));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(Rational::parse_exact("1/0").unwrap_err(), Error::ZeroDenominator);
        assert!(Rational::parse_exact("1/-3").is_err());
        assert!(Rational::parse_exact("0.5").is_err());
        assert!(Rational::parse_exact("/3").is_err());
        assert!(Rational::parse_exact("").is_err());
    }

    #[test]
    fn dyadic_values() {
        assert_eq!(Rational::dyadic(0), big(1, 1));
        assert_eq!(Rational::dyadic(11), big(1, 2048));
        assert_eq!(Ratio::<i128>::dyadic(64).denom(), &(1i128 << 64));
    }

    #[test]
    fn fixed_width_scalars_share_the_contract() {
        let x = Ratio::<i64>::parse_exact("10/4").unwrap();
        assert_eq!(x.to_fraction_string(), "5/2");
        assert_eq!(Ratio::<i64>::from_count(3), Ratio::new(3, 1));
    }

    proptest! {
        #[test]
        fn add_then_subtract_round_trips(
            an in -1000i64..1000, ad in 1i64..1000,
            bn in -1000i64..1000, bd in 1i64..1000,
        ) {
            let a = big(an, ad);
            let b = big(bn, bd);
            prop_assert_eq!((a.clone() + b.clone()) - b, a);
        }

        #[test]
        fn render_parse_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = big(n, d);
            prop_assert_eq!(Rational::parse_exact(&x.to_fraction_string()).unwrap(), x);
        }
    }
}
