use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::gaussian::round_div;
use super::{EuclideanDomain, FrameRing, RingElem, RingId};
use crate::error::{Error, Result};

/// `a + b·ω` in ℤ\[ω\], with `ω² = -1 - ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eisenstein {
    pub a: BigInt,
    pub b: BigInt,
}

impl Eisenstein {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Eisenstein {
            a: a.into(),
            b: b.into(),
        }
    }

    /// Complex conjugate: `conj(a + bω) = (a - b) - bω`.
    pub fn conj(&self) -> Self {
        Eisenstein::new(&self.a - &self.b, -self.b.clone())
    }

    fn norm_int(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}w", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}-{}w", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Eisenstein::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Eisenstein::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = (ac - bd) + (ad + bc - bd)ω
        let bd = &self.b * &o.b;
        Eisenstein::new(
            &self.a * &o.a - &bd,
            &self.a * &o.b + &self.b * &o.a - bd,
        )
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein::new(-self.a, -self.b)
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::new(1, 0)
    }
}

impl EuclideanDomain for Eisenstein {
    fn norm(&self) -> BigUint {
        self.norm_int().to_biguint().expect("norm is nonnegative")
    }

    fn div_rem_euclid(&self, divisor: &Self) -> Option<(Self, Self)> {
        if divisor.is_zero() {
            return None;
        }
        let n = divisor.norm_int();
        let num = self.clone() * divisor.conj();
        let q = Eisenstein::new(round_div(&num.a, &n), round_div(&num.b, &n));
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

    /// Canonical domain: argument in `[0, π/3)`, i.e. `b >= 0` and `a > b`.
    fn canonical_unit(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::units().into_iter().find(|u| {
            let p = u.clone() * self.clone();
            !p.b.is_negative() && p.a > p.b
        })
    }
}

impl FrameRing for Eisenstein {
    fn ring_id() -> RingId {
        RingId::Eisenstein
    }

    fn units() -> Vec<Self> {
        vec![
            Eisenstein::new(1, 0),
            Eisenstein::new(-1, 0),
            Eisenstein::new(0, 1),
            Eisenstein::new(0, -1),
            Eisenstein::new(1, 1),
            Eisenstein::new(-1, -1),
        ]
    }

    fn from_i64(value: i64) -> Self {
        Eisenstein::new(value, 0)
    }

    fn from_pair(a: i64, b: i64) -> Self {
        Eisenstein::new(a, b)
    }

    fn to_elem(&self) -> RingElem {
        RingElem::new(RingId::Eisenstein, self.a.clone(), self.b.clone())
    }

    fn from_elem(elem: &RingElem) -> Result<Self> {
        if elem.ring != RingId::Eisenstein {
            return Err(Error::MixedRings(elem.ring.to_string(), "Z[w]".into()));
        }
        Ok(Eisenstein::new(elem.a.clone(), elem.b.clone()))
    }

    fn elements_up_to_norm(bound: u64) -> Vec<Self> {
        // a² - ab + b² >= max(a², b²)·3/4
        let r = ((bound as f64) * 4.0 / 3.0).sqrt().floor() as i64 + 1;
        let mut out = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                if ((a * a - a * b + b * b) as u64) <= bound {
                    out.push(Eisenstein::new(a, b));
                }
            }
        }
        out
    }
}
