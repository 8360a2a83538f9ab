//! Exact arithmetic for the supported Euclidean domains.
//!
//! Every scalar type implements [`EuclideanDomain`]; the four rings that can
//! carry partial frames (ℤ, ℤ\[i\], ℤ\[ω\] and the prime fields) additionally
//! implement [`FrameRing`], which knows its unit group and how to convert to
//! and from the type-erased [`RingElem`].

mod eisenstein;
mod gaussian;
mod integer;
mod prime_field;
mod rational;

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use eisenstein::Eisenstein;
pub use gaussian::Gaussian;
pub use prime_field::Fp;

/// Largest prime accepted for `PrimeField(p)`.
pub const MAX_PRIME: u64 = 13;

/// Primes with a compiled field type.
pub const SUPPORTED_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub trait EuclideanDomain:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Euclidean norm: `|a|` on ℤ, `a²+b²` on ℤ\[i\], `a²-ab+b²` on ℤ\[ω\], 0/1 on fields.
    fn norm(&self) -> BigUint;

    /// `(q, r)` with `self = q·divisor + r` and `norm(r) < norm(divisor)`.
    fn div_rem_euclid(&self, divisor: &Self) -> Option<(Self, Self)>;

    fn unit_inverse(&self) -> Option<Self>;

    /// The unit `u` putting `u·self` into the canonical fundamental domain.
    fn canonical_unit(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    fn divides(&self, other: &Self) -> bool {
        if other.is_zero() {
            return true;
        }
        match other.div_rem_euclid(self) {
            Some((_, r)) => r.is_zero(),
            None => false,
        }
    }

    /// `self` scaled into its canonical form.
    fn canonical(&self) -> Self {
        match self.canonical_unit() {
            Some(u) => u * self.clone(),
            None => self.clone(),
        }
    }
}

/// A ring over which lines, partial frames and the frame complexes are built.
pub trait FrameRing: EuclideanDomain {
    fn ring_id() -> RingId;

    /// The complete (finite) unit group in a fixed order.
    fn units() -> Vec<Self>;

    fn from_i64(value: i64) -> Self;

    /// `a` for ℤ, `a+bi`, `a+bω`, `a mod p`.
    fn from_pair(a: i64, b: i64) -> Self;

    fn to_elem(&self) -> RingElem;

    fn from_elem(elem: &RingElem) -> Result<Self>;

    /// Every element of norm at most `bound`; for finite rings every element.
    fn elements_up_to_norm(bound: u64) -> Vec<Self>;

    fn is_finite() -> bool {
        false
    }
}

pub trait Field: EuclideanDomain {
    fn inv(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

pub trait FiniteField: Field {
    fn order() -> u64;
    fn elements() -> Vec<Self>;
    fn primitive_element() -> Self;
}

/// Canonicalized greatest common divisor; `None` when both inputs are zero.
pub fn gcd<R: EuclideanDomain>(a: &R, b: &R) -> Option<R> {
    if a.is_zero() && b.is_zero() {
        return None;
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem_euclid(&y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    Some(x.canonical())
}

/// Gcd of a whole vector, `None` for the zero vector.
pub fn gcd_all<R: EuclideanDomain>(values: &[R]) -> Option<R> {
    let mut acc = R::zero();
    for v in values {
        if !v.is_zero() {
            acc = gcd(&acc, v).expect("nonzero");
        }
    }
    if acc.is_zero() {
        None
    } else {
        Some(acc)
    }
}

pub(crate) fn norm_u64(n: &BigUint) -> u64 {
    use num_traits::ToPrimitive;
    n.to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingId {
    Integers,
    Gaussian,
    Eisenstein,
    PrimeField(u64),
}

impl RingId {
    pub fn prime_field(p: u64) -> Result<Self> {
        if SUPPORTED_PRIMES.contains(&p) {
            Ok(RingId::PrimeField(p))
        } else {
            Err(Error::UnsupportedRing(format!(
                "F{p}: prime fields require a prime p <= {MAX_PRIME}"
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingId::PrimeField(_))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingId::PrimeField(p) => RingId::prime_field(*p).map(|_| ()),
            _ => Ok(()),
        }
    }
}

impl Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Integers => write!(f, "Z"),
            RingId::Gaussian => write!(f, "Z[i]"),
            RingId::Eisenstein => write!(f, "Z[w]"),
            RingId::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" | "integers" => Ok(RingId::Integers),
            "Z[i]" | "zi" | "gaussian" => Ok(RingId::Gaussian),
            "Z[w]" | "zw" | "eisenstein" => Ok(RingId::Eisenstein),
            _ => {
                let digits = s
                    .strip_prefix('F')
                    .or_else(|| s.strip_prefix('f'))
                    .ok_or_else(|| Error::UnsupportedRing(s.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::UnsupportedRing(s.to_string()))?;
                RingId::prime_field(p)
            }
        }
    }
}

impl Serialize for RingId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Z,
    /// ℤ with 2 inverted.
    ZHalf,
    Q,
    Fp(u64),
}

impl CoeffRing {
    pub fn is_field(&self) -> bool {
        matches!(self, CoeffRing::Q | CoeffRing::Fp(_))
    }
}

impl Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Z => write!(f, "Z"),
            CoeffRing::ZHalf => write!(f, "Z[1/2]"),
            CoeffRing::Q => write!(f, "Q"),
            CoeffRing::Fp(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(CoeffRing::Z),
            "Z[1/2]" | "ZHalf" | "zhalf" => Ok(CoeffRing::ZHalf),
            "Q" | "q" => Ok(CoeffRing::Q),
            _ => match s.parse::<RingId>()? {
                RingId::PrimeField(p) => Ok(CoeffRing::Fp(p)),
                _ => Err(Error::UnsupportedRing(s.to_string())),
            },
        }
    }
}

impl Serialize for CoeffRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoeffRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Type-erased ring element: `a` for ℤ, `a+bi`, `a+bω`, `a mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub ring: RingId,
    pub a: BigInt,
    pub b: BigInt,
}

impl RingElem {
    pub fn new(ring: RingId, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        RingElem {
            ring,
            a: a.into(),
            b: b.into(),
        }
    }

    fn same_ring(&self, other: &RingElem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }
}

impl Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring {
            RingId::Integers | RingId::PrimeField(_) => write!(f, "{}", self.a),
            RingId::Gaussian => write!(f, "{}+{}i", self.a, self.b),
            RingId::Eisenstein => write!(f, "{}+{}w", self.a, self.b),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RingElemRepr {
    ring: RingId,
    a: String,
    b: String,
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingElemRepr {
            ring: self.ring,
            a: self.a.to_string(),
            b: self.b.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RingElemRepr::deserialize(d)?;
        let a = repr.a.parse::<BigInt>().map_err(D::Error::custom)?;
        let b = repr.b.parse::<BigInt>().map_err(D::Error::custom)?;
        Ok(RingElem::new(repr.ring, a, b))
    }
}

/// Runs `$body` with `$R` bound to the concrete scalar type of a [`RingId`].
/// The body must evaluate to a `Result`.
#[macro_export]
macro_rules! with_frame_ring {
    ($id:expr, $R:ident => $body:expr) => {{
        match $id {
            $crate::rings::RingId::Integers => {
                type $R = $crate::Z;
                $body
            }
            $crate::rings::RingId::Gaussian => {
                type $R = $crate::ZI;
                $body
            }
            $crate::rings::RingId::Eisenstein => {
                type $R = $crate::ZW;
                $body
            }
            $crate::rings::RingId::PrimeField(2) => {
                type $R = $crate::F2;
                $body
            }
            $crate::rings::RingId::PrimeField(3) => {
                type $R = $crate::F3;
                $body
            }
            $crate::rings::RingId::PrimeField(5) => {
                type $R = $crate::F5;
                $body
            }
            $crate::rings::RingId::PrimeField(7) => {
                type $R = $crate::F7;
                $body
            }
            $crate::rings::RingId::PrimeField(11) => {
                type $R = $crate::F11;
                $body
            }
            $crate::rings::RingId::PrimeField(13) => {
                type $R = $crate::F13;
                $body
            }
            other => Err($crate::Error::UnsupportedRing(other.to_string())),
        }
    }};
}

/// Like [`with_frame_ring!`] but only for prime fields.
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr) => {{
        match $p {
            2 => {
                type $F = $crate::F2;
                $body
            }
            3 => {
                type $F = $crate::F3;
                $body
            }
            5 => {
                type $F = $crate::F5;
                $body
            }
            7 => {
                type $F = $crate::F7;
                $body
            }
            11 => {
                type $F = $crate::F11;
                $body
            }
            13 => {
                type $F = $crate::F13;
                $body
            }
            other => Err($crate::Error::UnsupportedRing(format!("F{other}"))),
        }
    }};
}

pub fn euclid_div(a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem)> {
    a.same_ring(b)?;
    with_frame_ring!(a.ring, R => {
        let x = R::from_elem(a)?;
        let y = R::from_elem(b)?;
        let (q, r) = x.div_rem_euclid(&y).ok_or(Error::DivisionByZero)?;
        Ok((q.to_elem(), r.to_elem()))
    })
}

pub fn units(ring: RingId) -> Result<Vec<RingElem>> {
    with_frame_ring!(ring, R => Ok(R::units().iter().map(|u| u.to_elem()).collect()))
}

pub fn ring_gcd(a: &RingElem, b: &RingElem) -> Result<RingElem> {
    a.same_ring(b)?;
    with_frame_ring!(a.ring, R => {
        let x = R::from_elem(a)?;
        let y = R::from_elem(b)?;
        gcd(&x, &y).map(|g| g.to_elem()).ok_or(Error::ZeroInput)
    })
}

pub fn canonical_unit(a: &RingElem) -> Result<RingElem> {
    with_frame_ring!(a.ring, R => {
        let x = R::from_elem(a)?;
        x.canonical_unit().map(|u| u.to_elem()).ok_or(Error::ZeroInput)
    })
}

pub fn norm(a: &RingElem) -> Result<BigUint> {
    with_frame_ring!(a.ring, R => Ok(R::from_elem(a)?.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64) -> RingElem {
        RingElem::new(RingId::Integers, a, 0)
    }

    #[test]
    fn euclid_div_integers() {
        let (q, r) = euclid_div(&z(7), &z(3)).unwrap();
        assert_eq!((q, r), (z(2), z(1)));
        let (q, r) = euclid_div(&z(-11), &z(1)).unwrap();
        assert_eq!((q, r), (z(-11), z(0)));
    }

    #[test]
    fn euclid_div_errors() {
        assert_eq!(euclid_div(&z(7), &z(0)), Err(Error::DivisionByZero));
        let g = RingElem::new(RingId::Gaussian, 1, 1);
        assert!(matches!(euclid_div(&z(7), &g), Err(Error::MixedRings(_, _))));
        assert_eq!(ring_gcd(&z(0), &z(0)), Err(Error::ZeroInput));
        assert_eq!(canonical_unit(&z(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn gaussian_division_nearest_quotient() {
        // Oracle: the four lattice points around (3+2i)/(1+i) = 5/2 - i/2.
        let a = RingElem::new(RingId::Gaussian, 3, 2);
        let b = RingElem::new(RingId::Gaussian, 1, 1);
        let (q, r) = euclid_div(&a, &b).unwrap();
        let candidates = [(2, 0), (3, 0), (2, -1), (3, -1)];
        let qg = Gaussian::from_elem(&q).unwrap();
        assert!(candidates
            .iter()
            .any(|&(x, y)| qg == Gaussian::from_pair(x, y)));
        assert!(norm(&r).unwrap() < BigUint::from(2u32));
    }

    #[test]
    fn unit_groups() {
        assert_eq!(units(RingId::Integers).unwrap(), vec![z(1), z(-1)]);
        let g = units(RingId::Gaussian).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(|u| norm(u).unwrap() == BigUint::one()));
        assert_eq!(units(RingId::Eisenstein).unwrap().len(), 6);
        let f3 = units(RingId::PrimeField(3)).unwrap();
        assert_eq!(
            f3,
            vec![
                RingElem::new(RingId::PrimeField(3), 1, 0),
                RingElem::new(RingId::PrimeField(3), 2, 0)
            ]
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(ring_gcd(&z(6), &z(4)).unwrap(), z(2));
        assert_eq!(ring_gcd(&z(-1), &z(17)).unwrap(), z(1));
        // 2 = -i(1+i)^2, so gcd(1+i, 2) = 1+i, already canonical.
        let g = ring_gcd(
            &RingElem::new(RingId::Gaussian, 1, 1),
            &RingElem::new(RingId::Gaussian, 2, 0),
        )
        .unwrap();
        assert_eq!(g, RingElem::new(RingId::Gaussian, 1, 1));
    }

    #[test]
    fn canonical_unit_examples() {
        assert_eq!(canonical_unit(&z(-5)).unwrap(), z(-1));
        let i = RingElem::new(RingId::Gaussian, 0, 1);
        assert_eq!(
            canonical_unit(&i).unwrap(),
            RingElem::new(RingId::Gaussian, 0, -1)
        );
        for ring in [RingId::Integers, RingId::Gaussian, RingId::Eisenstein, RingId::PrimeField(7)] {
            for u in units(ring).unwrap() {
                let cu = canonical_unit(&u).unwrap();
                with_frame_ring!(ring, R => {
                    let prod = R::from_elem(&cu).unwrap() * R::from_elem(&u).unwrap();
                    assert!(prod.is_one());
                    Ok::<(), Error>(())
                })
                .unwrap();
            }
        }
    }

    #[test]
    fn ring_ids_parse_and_validate() {
        assert_eq!("F13".parse::<RingId>().unwrap(), RingId::PrimeField(13));
        assert!("F4".parse::<RingId>().is_err());
        assert!("F17".parse::<RingId>().is_err());
        assert_eq!("Z[w]".parse::<RingId>().unwrap(), RingId::Eisenstein);
        assert_eq!("ZHalf".parse::<CoeffRing>().unwrap(), CoeffRing::ZHalf);
        assert!(RingId::PrimeField(9).validate().is_err());
    }

    #[test]
    fn ring_elem_json_shape() {
        let e = RingElem::new(RingId::Eisenstein, -3, 12345678901234567890u64);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"ring":"Z[w]","a":"-3","b":"12345678901234567890"}"#);
        let back: RingElem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
