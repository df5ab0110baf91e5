//! Exact scalar fields the algebra is generic over.
//!
//! Every identity checked by this crate is a polynomial identity, so equality
//! must be exact. Floating-point types are not `Scalar`s.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

/// An exact field of characteristic zero containing the rationals.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    /// Lossless conversion to an arbitrary-precision rational.
    fn to_big_rational(&self) -> BigRational;

    /// `None` when the value does not fit the target representation.
    fn from_big_rational(q: &BigRational) -> Option<Self>;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        Some(Ratio::new(q.numer().to_i64()?, q.denom().to_i64()?))
    }
}
