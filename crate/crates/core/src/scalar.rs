//! Coefficient traits.
//!
//! [`Coeff`] is what a noncommutative polynomial needs from its coefficient
//! ring: a commutative ring containing the integers, with exact division by
//! nonzero integers. [`Scalar`] narrows that to the fields the parameter
//! polynomials are built over (exact rationals, or `f32`/`f64` for quick
//! floating-point experiments).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Coefficient ring of an [`NcPoly`](crate::NcPoly).
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_int(v: i64) -> Self;

    /// Exact division by a nonzero integer.
    fn div_int(&self, d: i64) -> Self;

    fn add_ref(&mut self, other: &Self);

    fn mul_ref(&self, other: &Self) -> Self;

    fn scale_int(&self, k: i64) -> Self {
        match k {
            0 => Self::zero(),
            1 => self.clone(),
            -1 => -self.clone(),
            _ => self.mul_ref(&Self::from_int(k)),
        }
    }
}

/// A field of scalars: coefficients of a [`CPoly`](crate::CPoly).
pub trait Scalar: Coeff + Num + FromPrimitive {
    /// Parses `"p/q"` or `"p"`.
    fn parse_ratio(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?),
            None => (s.parse::<i64>().ok()?, 1),
        };
        if den == 0 {
            return None;
        }
        Some(Self::from_int(num).div_int(den))
    }
}

impl Coeff for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self / BigInt::from(d)
    }

    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale_int(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }
}

impl Scalar for BigRational {}

macro_rules! impl_float_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn div_int(&self, d: i64) -> Self {
                self / d as $t
            }

            fn add_ref(&mut self, other: &Self) {
                *self += *other;
            }

            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
        }

        impl Scalar for $t {}
    };
}

impl_float_coeff!(f32);
impl_float_coeff!(f64);

/// Rational coefficient as a `"num/den"` string (`"num"` when integral).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
