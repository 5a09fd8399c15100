//! HH0 of twisted group algebras against α-regular classes.

use std::sync::Arc;

use orbicalc::group::catalog;
use orbicalc::skew::{alpha_regular_classes, h2_representatives, twisted_group_algebra};

fn main() -> orbicalc::Result<()> {
    for name in ["C2xC2", "Q8", "D4"] {
        let g = Arc::new(catalog(name)?);
        let h2 = h2_representatives(g.clone(), g.exponent() as u64)?;
        println!("{name}: H^2(G, μ_{}) ≅ {:?}", h2.root_order, h2.invariants);
        for (i, alpha) in h2.representatives.iter().enumerate() {
            let hh = twisted_group_algebra(alpha).hh0().dimension();
            println!("  #{i}: dim HH0 {hh}, α-regular classes {:?}", alpha_regular_classes(alpha));
        }
    }
    Ok(())
}
