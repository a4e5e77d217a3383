use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

/// Exponent pair `(m1, m2)` of a monomial `z1^m1 z2^m2`.
///
/// The derived ordering is lexicographic on `(m1, m2)`, which is the
/// canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpPair {
    pub m1: BigUint,
    pub m2: BigUint,
}

impl ExpPair {
    pub fn new(m1: impl Into<BigUint>, m2: impl Into<BigUint>) -> Self {
        ExpPair {
            m1: m1.into(),
            m2: m2.into(),
        }
    }

    pub fn zero() -> Self {
        ExpPair {
            m1: BigUint::zero(),
            m2: BigUint::zero(),
        }
    }

    /// Coordinatewise `self ≥ other`.
    pub fn dominates(&self, other: &ExpPair) -> bool {
        self.m1 >= other.m1 && self.m2 >= other.m2
    }

    /// `self - other`, or `None` unless `self` dominates `other`.
    pub fn checked_sub(&self, other: &ExpPair) -> Option<ExpPair> {
        self.dominates(other).then(|| ExpPair {
            m1: &self.m1 - &other.m1,
            m2: &self.m2 - &other.m2,
        })
    }

    /// `(m1 mod n, m2 mod n)`.
    pub fn reduce_mod(&self, n: u64) -> (u64, u64) {
        let r = |x: &BigUint| {
            let d = x % n;
            d.iter_u64_digits().next().unwrap_or(0)
        };
        (r(&self.m1), r(&self.m2))
    }
}

impl fmt::Display for ExpPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m1, self.m2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn lexicographic_order() {
        let a = ExpPair::new(1u32, 9u32);
        let b = ExpPair::new(2u32, 0u32);
        let c = ExpPair::new(2u32, 1u32);
        assert!(a < b && b < c);
    }

    #[test]
    fn reduction_of_huge_exponent() {
        let e = ExpPair::new(
            BigUint::from(3u32).pow(100),
            BigUint::from(2u32).pow(4096) + 5u32,
        );
        assert_eq!(e.reduce_mod(8), (1, 5));
    }
}
