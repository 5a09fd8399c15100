//! Decomposition of R(G)[1/|G|] over cyclic subgroup classes, both modes.

use std::sync::Arc;

use orbicalc::group::catalog;
use orbicalc::repring::vistoli::{vistoli_decompose, Mode};

fn main() -> orbicalc::Result<()> {
    for name in ["S3", "C4", "Q8", "S4", "A4"] {
        let g = Arc::new(catalog(name)?);
        for mode in [Mode::Split, Mode::Rational] {
            let d = vistoli_decompose(&g, mode)?;
            println!(
                "{name:3} {mode:?}: ranks {:?}, snf {:?}, passes {}",
                d.ranks(),
                d.certificate.diagonal,
                d.passes()
            );
        }
    }
    Ok(())
}
