//! Exact arithmetic: cyclotomic fields, `Z[1/n]`, and integer lattices.

pub mod cyclotomic;
pub mod field;
pub mod intmat;
pub mod lattice;
pub mod localized;
pub mod modp;
pub mod numtheory;

pub use cyclotomic::Cyclotomic;
pub use intmat::{smith_normal_form, IntMatrix, Smith};
pub use lattice::{invariant_sublattice, is_iso_over_localization, LatticeMap};
pub use localized::LocalizedScalar;
