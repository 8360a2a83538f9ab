use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{EuclideanDomain, Field, FiniteField, FrameRing, RingElem, RingId};
use crate::error::{Error, Result};

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class modulo the prime `P`, stored reduced in `[0, P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(value: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn multiplicative_order(self) -> u64 {
        let mut x = self;
        let mut k = 1;
        while !x.is_one() {
            x = x * self;
            k += 1;
        }
        k
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 * o.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> EuclideanDomain for Fp<P> {
    fn norm(&self) -> BigUint {
        if self.0 == 0 {
            BigUint::zero()
        } else {
            BigUint::one()
        }
    }

    fn div_rem_euclid(&self, divisor: &Self) -> Option<(Self, Self)> {
        let inv = divisor.unit_inverse()?;
        Some((*self * inv, Self::zero()))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn canonical_unit(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

impl<const P: u64> Field for Fp<P> {}

impl<const P: u64> FiniteField for Fp<P> {
    fn order() -> u64 {
        P
    }

    fn elements() -> Vec<Self> {
        (0..P).map(Fp::new).collect()
    }

    fn primitive_element() -> Self {
        (1..P)
            .map(Fp::new)
            .find(|x| x.multiplicative_order() == P - 1)
            .expect("prime fields have primitive roots")
    }
}

impl<const P: u64> FrameRing for Fp<P> {
    fn ring_id() -> RingId {
        RingId::PrimeField(P)
    }

    fn units() -> Vec<Self> {
        (1..P).map(Fp::new).collect()
    }

    fn from_i64(value: i64) -> Self {
        Fp::new(value.rem_euclid(P as i64) as u64)
    }

    fn from_pair(a: i64, _b: i64) -> Self {
        Self::from_i64(a)
    }

    fn to_elem(&self) -> RingElem {
        RingElem::new(RingId::PrimeField(P), self.0, 0)
    }

    fn from_elem(elem: &RingElem) -> Result<Self> {
        if elem.ring != RingId::PrimeField(P) {
            return Err(Error::MixedRings(elem.ring.to_string(), format!("F{P}")));
        }
        let r = elem.a.mod_floor(&BigInt::from(P));
        Ok(Fp::new(r.to_u64().expect("reduced residue fits")))
    }

    fn elements_up_to_norm(_bound: u64) -> Vec<Self> {
        <Self as FiniteField>::elements()
    }

    fn is_finite() -> bool {
        true
    }
}
