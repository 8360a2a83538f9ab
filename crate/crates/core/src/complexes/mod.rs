//! Simplicial complexes and posets: partial-frame complexes, their augmented
//! versions, Tits buildings and splitting posets.

mod frame;
mod poset;
mod simplicial;

pub use frame::{build_b, build_b_on, build_ba, AdditiveKind, AdditiveWitness, FrameComplex};
pub use poset::{
    build_relative_tits, build_splitting_poset, build_tits, check_monotone, face_poset, fiber_le, Poset, MAX_POSET_ELEMENTS,
    SplittingConstraints,
};
pub use simplicial::{SimplicialComplex, MAX_VERTICES};
