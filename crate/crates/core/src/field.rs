//! Minimal field abstraction shared by the exact linear algebra and the
//! power-series code.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Exact arithmetic over a field of characteristic zero.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_int(value: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Returns the integer value of `r` if it is a nonnegative integer.
pub(crate) fn as_nonneg_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() && !r.is_negative() {
        Some(r.to_integer())
    } else {
        None
    }
}
