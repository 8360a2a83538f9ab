use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{EuclideanDomain, FrameRing, RingElem, RingId};
use crate::error::{Error, Result};

/// `re + im·i` in ℤ\[i\].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    fn norm_int(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Nearest integer to `num/den` for `den > 0`, ties rounded down.
pub(crate) fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for Gaussian {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for Gaussian {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(1, 0)
    }
}

impl EuclideanDomain for Gaussian {
    fn norm(&self) -> BigUint {
        self.norm_int().to_biguint().expect("norm is nonnegative")
    }

    fn div_rem_euclid(&self, divisor: &Self) -> Option<(Self, Self)> {
        if divisor.is_zero() {
            return None;
        }
        let n = divisor.norm_int();
        let num = self.clone() * divisor.conj();
        let q = Gaussian::new(round_div(&num.re, &n), round_div(&num.im, &n));
        let r = self.clone() - q.clone() * divisor.clone();
        Some((q, r))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.norm_int().is_one() {
            Some(self.conj())
        } else {
            None
        }
    }

    /// Canonical domain: `re > 0`, `im >= 0` (argument in `[0, π/2)`).
    fn canonical_unit(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::units().into_iter().find(|u| {
            let p = u.clone() * self.clone();
            p.re.is_positive() && !p.im.is_negative()
        })
    }
}

impl FrameRing for Gaussian {
    fn ring_id() -> RingId {
        RingId::Gaussian
    }

    fn units() -> Vec<Self> {
        vec![
            Gaussian::new(1, 0),
            Gaussian::new(-1, 0),
            Gaussian::new(0, 1),
            Gaussian::new(0, -1),
        ]
    }

    fn from_i64(value: i64) -> Self {
        Gaussian::new(value, 0)
    }

    fn from_pair(a: i64, b: i64) -> Self {
        Gaussian::new(a, b)
    }

    fn to_elem(&self) -> RingElem {
        RingElem::new(RingId::Gaussian, self.re.clone(), self.im.clone())
    }

    fn from_elem(elem: &RingElem) -> Result<Self> {
        if elem.ring != RingId::Gaussian {
            return Err(Error::MixedRings(elem.ring.to_string(), "Z[i]".into()));
        }
        Ok(Gaussian::new(elem.a.clone(), elem.b.clone()))
    }

    fn elements_up_to_norm(bound: u64) -> Vec<Self> {
        let r = (bound as f64).sqrt().floor() as i64 + 1;
        let mut out = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                if ((a * a + b * b) as u64) <= bound {
                    out.push(Gaussian::new(a, b));
                }
            }
        }
        out
    }
}
