//! Exact computations with partial-frame complexes, Tits buildings,
//! E₁-splitting posets and Steinberg-module coinvariants.
//!
//! The algebra is generic over a scalar type implementing
//! [`rings::EuclideanDomain`]; the concrete rings are exported here as type
//! aliases. Type-erased entry points (taking a [`RingId`]) dispatch onto the
//! concrete types with [`with_frame_ring!`].

pub mod acceptance;
pub mod actions;
pub mod complexes;
pub mod enumeration;
pub mod error;
pub mod homology;
pub mod identities;
pub mod linalg;
pub mod report;
pub mod rings;

pub use error::{Error, Result};
pub use rings::{CoeffRing, RingElem, RingId};

/// ℤ.
pub type Z = num_bigint::BigInt;
/// ℚ.
pub type Q = num_rational::BigRational;
/// Gaussian integers ℤ\[i\].
pub type ZI = rings::Gaussian;
/// Eisenstein integers ℤ\[ω\].
pub type ZW = rings::Eisenstein;
pub type F2 = rings::Fp<2>;
pub type F3 = rings::Fp<3>;
pub type F5 = rings::Fp<5>;
pub type F7 = rings::Fp<7>;
pub type F11 = rings::Fp<11>;
pub type F13 = rings::Fp<13>;
