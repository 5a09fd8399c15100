//! Res ∘ Ind on primitive summands acts as [N(σ):σ].

use std::sync::Arc;

use orbicalc::group::{catalog, cyclic_subgroup_classes};
use orbicalc::gset::mackey_check;

fn main() -> orbicalc::Result<()> {
    for name in ["S3", "D4", "S4"] {
        let g = Arc::new(catalog(name)?);
        for c in cyclic_subgroup_classes(&g) {
            let r = mackey_check(&g, &c.rep)?;
            println!(
                "{name} σ = {:?}: |σ| {}, index {}, {} double cosets, scalar {}, routes agree {}",
                r.sigma,
                r.order,
                r.index,
                r.terms.len(),
                r.scalar_holds,
                r.routes_agree
            );
        }
    }
    Ok(())
}
