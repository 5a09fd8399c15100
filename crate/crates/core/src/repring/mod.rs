//! Representation rings, primitive idempotents and the cyclic-subgroup decomposition.

pub mod chartable;
pub mod cyclic;
pub mod ring;
pub mod vistoli;

pub use chartable::{character_table, CharacterTable};
