//! Exact scalar domains for the brute-force searches.
//!
//! The searches only add, subtract and compare. When every input shares a
//! small common denominator they run on scaled `i128` values; otherwise
//! they run on [`Rational`] directly. Both are exact.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

pub(crate) trait Scalar: Clone + Ord {
    fn zero_value() -> Self;

    fn add_assign(&mut self, other: &Self);

    fn sub_assign(&mut self, other: &Self);

    /// The inputs mapped into this domain under one common positive scale,
    /// or `None` if it cannot hold them together with every sum of their
    /// absolute values.
    fn convert(values: &[Rational]) -> Option<Vec<Self>>;
}

impl Scalar for i128 {
    fn zero_value() -> Self {
        0
    }

    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }

    fn sub_assign(&mut self, other: &Self) {
        *self -= *other;
    }

    fn convert(values: &[Rational]) -> Option<Vec<Self>> {
        let mut denom = BigInt::one();
        for v in values {
            denom = denom.lcm(v.denom());
        }
        let common = Rational::from_integer(denom);
        let bound = BigInt::from(i128::MAX >> 4);
        let mut total = BigInt::zero();
        let mut out = Vec::with_capacity(values.len());
        for v in values {
            let scaled = v * &common;
            if !scaled.is_integer() {
                return None;
            }
            let n = scaled.to_integer();
            total += n.abs();
            if total > bound {
                return None;
            }
            out.push(n.to_i128()?);
        }
        Some(out)
    }
}

impl Scalar for Rational {
    fn zero_value() -> Self {
        Zero::zero()
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }

    fn convert(values: &[Rational]) -> Option<Vec<Self>> {
        Some(values.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;

    #[test]
    fn integer_scaling_preserves_order() {
        let values = vec![ratio(1, 3), ratio(1, 2), ratio(6, 13), int(0)];
        let scaled = i128::convert(&values).unwrap();
        assert_eq!(scaled, vec![26, 39, 36, 0]);
    }

    #[test]
    fn huge_values_fall_back() {
        let big = Rational::from_integer(BigInt::from(i128::MAX));
        assert!(i128::convert(core::slice::from_ref(&big)).is_none());
        assert_eq!(Rational::convert(core::slice::from_ref(&big)).unwrap(), vec![big]);
    }
}
