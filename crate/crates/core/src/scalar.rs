//! Coefficient traits shared by polynomials, series and the q-deformed
//! primitives.
//!
//! Everything in this crate is written against [`Scalar`] (a commutative ring
//! with identity) or [`FieldScalar`] (a field). The exact types used in
//! production are [`Rational`](crate::Rational), [`QPoly`](crate::QPoly) and
//! [`QRationalFunction`](crate::QRationalFunction); machine floats satisfy the
//! same bounds and are handy for quick numeric experiments.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with identity.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self^exp` by repeated squaring.
    fn pow_u(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// The image of the integer `n` under the unique ring map from Z.
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let mut unit = Self::one();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + unit.clone();
            }
            m >>= 1;
            if m > 0 {
                unit = unit.clone() + unit;
            }
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A field: a [`Scalar`] with exact division by nonzero elements.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> FieldScalar for T where T: Scalar + Div<Output = T> {}
