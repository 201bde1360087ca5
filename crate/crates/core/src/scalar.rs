//! Scalar fields the dense linear algebra is generic over.
//!
//! Kernels are real-valued, but a determinant `det(I + zA)` may be wanted for
//! complex `z`, and the series oracles are checked in exact rational
//! arithmetic. [`Scalar`] is the minimal surface the factorizations need.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A field element usable as a matrix entry.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Absolute value, in `f64`. Used for pivot selection and norms.
    fn modulus(&self) -> f64;
    /// Real part, in `f64`.
    fn re(&self) -> f64;
    /// Complex conjugate; the identity for real fields.
    fn conj(&self) -> Self;
    /// Embedding of a real number into the field.
    fn from_f64(x: f64) -> Self;
    /// `Some(x)` when the value has no imaginary part.
    fn as_real(&self) -> Option<f64>;
    fn is_finite(&self) -> bool;
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn modulus(&self) -> f64 {
                self.abs() as f64
            }
            #[inline]
            fn re(&self) -> f64 {
                *self as f64
            }
            #[inline]
            fn conj(&self) -> Self {
                *self
            }
            #[inline]
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn as_real(&self) -> Option<f64> {
                Some(*self as f64)
            }
            #[inline]
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
        }

        impl Scalar for Complex<$t> {
            #[inline]
            fn modulus(&self) -> f64 {
                self.norm() as f64
            }
            #[inline]
            fn re(&self) -> f64 {
                self.re as f64
            }
            #[inline]
            fn conj(&self) -> Self {
                Complex::conj(self)
            }
            #[inline]
            fn from_f64(x: f64) -> Self {
                Complex::new(x as $t, 0.0)
            }
            #[inline]
            fn as_real(&self) -> Option<f64> {
                (self.im == 0.0).then_some(self.re as f64)
            }
            #[inline]
            fn is_finite(&self) -> bool {
                self.re.is_finite() && self.im.is_finite()
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for BigRational {
    fn modulus(&self) -> f64 {
        self.re().abs()
    }
    fn re(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    /// Exact conversion of the binary value of `x`.
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
    }
    fn as_real(&self) -> Option<f64> {
        Some(Scalar::re(self))
    }
    fn is_finite(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_real_detection() {
        assert_eq!(Complex::new(2.0f64, 0.0).as_real(), Some(2.0));
        assert_eq!(Complex::new(2.0f64, 1e-300).as_real(), None);
    }

    #[test]
    fn rational_embedding_is_exact() {
        let q = BigRational::from_f64(0.375);
        assert_eq!(q, BigRational::new(3.into(), 8.into()));
        assert_eq!(Scalar::re(&q), 0.375);
    }
}
