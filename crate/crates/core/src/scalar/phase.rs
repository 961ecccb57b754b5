use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A rational number taken modulo 1, stored in `[0, 1)`.
///
/// Encodes a root of unity `exp(2 pi i t)` by its exponent so that phase
/// comparisons are exact rational comparisons.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase(BigRational);

impl RationalPhase {
    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        RationalPhase(value - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        RationalPhase(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn add(&self, other: &RationalPhase) -> RationalPhase {
        Self::new(&self.0 + &other.0)
    }

    /// Order of the root of unity `exp(2 pi i t)`.
    pub fn root_order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn reduced_into_unit_interval() {
        assert_eq!(RationalPhase::from_ratio(5, 4), RationalPhase::from_ratio(1, 4));
        assert_eq!(RationalPhase::from_ratio(-1, 3), RationalPhase::from_ratio(2, 3));
        assert!(RationalPhase::from_ratio(7, 7).is_zero());
        let t = RationalPhase::from_ratio(-17, 6);
        assert!(t.value() >= &BigRational::zero() && t.value() < &BigRational::one());
        assert_eq!(t.denom().gcd(t.numer()), BigInt::one());
    }
}
