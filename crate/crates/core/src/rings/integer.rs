use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{EuclideanDomain, FrameRing, RingElem, RingId};
use crate::error::{Error, Result};

impl EuclideanDomain for BigInt {
    fn norm(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn div_rem_euclid(&self, divisor: &Self) -> Option<(Self, Self)> {
        if divisor.is_zero() {
            return None;
        }
        Some(Integer::div_rem(self, divisor))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.magnitude().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn canonical_unit(&self) -> Option<Self> {
        match self.sign() {
            Sign::NoSign => None,
            Sign::Plus => Some(BigInt::one()),
            Sign::Minus => Some(-BigInt::one()),
        }
    }

    fn canonical(&self) -> Self {
        self.abs()
    }
}

impl FrameRing for BigInt {
    fn ring_id() -> RingId {
        RingId::Integers
    }

    fn units() -> Vec<Self> {
        vec![BigInt::one(), -BigInt::one()]
    }

    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }

    fn from_pair(a: i64, _b: i64) -> Self {
        BigInt::from(a)
    }

    fn to_elem(&self) -> RingElem {
        RingElem::new(RingId::Integers, self.clone(), 0)
    }

    fn from_elem(elem: &RingElem) -> Result<Self> {
        if elem.ring != RingId::Integers {
            return Err(Error::MixedRings(elem.ring.to_string(), "Z".into()));
        }
        if !elem.b.is_zero() {
            return Err(Error::Invalid("integer with nonzero b coordinate".into()));
        }
        Ok(elem.a.clone())
    }

    fn elements_up_to_norm(bound: u64) -> Vec<Self> {
        let b = bound.to_i64().unwrap_or(i64::MAX);
        (-b..=b).map(BigInt::from).collect()
    }
}
