use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{EuclideanDomain, Field};

impl EuclideanDomain for BigRational {
    fn norm(&self) -> BigUint {
        if self.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        }
    }

    fn div_rem_euclid(&self, divisor: &Self) -> Option<(Self, Self)> {
        if divisor.is_zero() {
            return None;
        }
        Some((self / divisor, BigRational::zero()))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn canonical_unit(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

impl Field for BigRational {}
