//! Exact scalars.
//!
//! Every algorithm in the crate is generic over [`Scalar`], a commutative ring
//! with exact equality and a partial inverse. Two instantiations exist:
//! [`Rational`] (arbitrary-precision fractions, a field) and [`QSeries`]
//! (power series in `q` truncated at a fixed order, where only series with a
//! nonzero constant term are invertible).

mod rational;
mod sample;
mod series;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use rational::{format_rational, parse_rational, rat, Rational};
pub use sample::{trial_rng, sample_rational, TrialRng, DEFAULT_BOUND, RETRY_BUDGET};
pub use series::{QSeries, Precision};

/// Ring contract shared by all exact scalar types.
///
/// No operation rounds. Division is only defined for units, and a failed
/// inversion is reported through [`Scalar::try_inv`] rather than panicking.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse, or an error when `self` is not a unit.
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    /// Integer power; negative exponents require `self` to be a unit.
    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * sq.clone();
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }

    fn one_minus(&self) -> Self {
        Self::one() - self.clone()
    }
}

impl Scalar for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::Pole("division by zero".into()))
        } else {
            Ok(self.recip())
        }
    }
}

/// `(-1)^e` as a scalar.
pub fn sign<S: Scalar>(e: i64) -> S {
    if e.rem_euclid(2) == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Product of an iterator of scalars (empty product is one).
pub fn product<S: Scalar, I: IntoIterator<Item = S>>(items: I) -> S {
    items.into_iter().fold(S::one(), |acc, x| acc * x)
}

/// Fallible product, short-circuiting on the first error.
pub fn try_product<S: Scalar, I: IntoIterator<Item = Result<S>>>(items: I) -> Result<S> {
    let mut acc = S::one();
    for x in items {
        acc = acc * x?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_powers() {
        let x = rat(2, 3).unwrap();
        assert_eq!(x.powi(3).unwrap(), rat(8, 27).unwrap());
        assert_eq!(x.powi(-2).unwrap(), rat(9, 4).unwrap());
        assert_eq!(x.powi(0).unwrap(), Rational::one());
        assert!(matches!(Rational::zero().powi(-1), Err(Error::Pole(_))));
    }

    #[test]
    fn signs() {
        assert_eq!(sign::<Rational>(3), -Rational::one());
        assert_eq!(sign::<Rational>(-2), Rational::one());
    }
}
