//! Exact-arithmetic workbench for decompositions of orbifold invariants.
//!
//! The crate computes, with exact arithmetic only:
//!
//! * primitive idempotents of cyclic representation rings and the
//!   decomposition `R(G)[1/n] ≅ ⊕_σ R̃(σ)^{N(σ)}[1/n]` over conjugacy classes of
//!   cyclic subgroups ([`repring`]);
//! * equivariant `K₀` of finite G-sets and its fixed-point decomposition,
//!   inertia form and double-coset identities ([`gset`]);
//! * skew and twisted group algebras, graded centers, `HH₀` and block counts
//!   under base change ([`skew`]);
//! * a seeded corpus and verification harness ([`harness`]).

pub mod arith;
pub mod cli;
pub mod error;
pub mod group;
pub mod gset;
pub mod harness;
pub mod repring;
pub mod skew;

pub use error::{Error, Result};
