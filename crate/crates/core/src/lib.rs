//! Bessel functions fixed by the Siegel congruence subgroup for
//! Iwahori-spherical representations of GSp(4): representation catalog,
//! tower computations, residue-level coset checks and zeta identities.

pub mod case;
pub mod catalog;
pub mod coset;
pub mod engine;
pub mod specialize;
pub mod zeta;

pub use case::LCase;
pub use catalog::{BesselCharacter, RepType};
pub use specialize::Specialization;
