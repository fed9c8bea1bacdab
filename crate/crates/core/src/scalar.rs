//! Coefficient types for the cohomology kernels.
//!
//! Everything in [`crate::equivariant_classes`] and [`crate::localization`] is
//! generic over [`Scalar`]. The crate-root aliases pin the exact rational
//! instantiation, which is the only one whose localization sums cancel exactly;
//! the floating point impls exist for quick numerical cross-checks.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

/// Field-like coefficient type.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + fmt::Debug + fmt::Display {
    fn from_int(v: i64) -> Self;

    /// `true` when arithmetic is exact, so equality tests are meaningful.
    fn is_exact() -> bool;
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn is_exact() -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_int_agrees_across_types() {
        assert_eq!(BigRational::from_int(-7).to_string(), "-7");
        assert_eq!(f64::from_int(3), 3.0);
        assert_eq!(f32::from_int(-2), -2.0);
        assert!(BigRational::is_exact());
        assert!(!f64::is_exact());
    }
}
