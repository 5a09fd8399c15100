//! Skew group algebras, twisted group algebras, graded centers and `HH_0`.

pub mod algebra;
pub mod azumaya;
pub mod blocks;
pub mod cocycle;

pub use algebra::{FinDimAlgebra, Hh0};
pub use azumaya::{
    equivariant_azumaya, skew_group_algebra, twisted_hh0_decomposition, verify_strongly_graded, AzumayaModel,
    GradedCenterReport, ProjectiveAction, TwistedHh0Report,
};
pub use blocks::{radical, simple_block_count, twisted_block_count, BlockReport};
pub use cocycle::{alpha_regular_classes, h2_representatives, twisted_group_algebra, CocycleTable, H2};
