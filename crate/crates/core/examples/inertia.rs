//! Inertia form: stabilizer classes versus orbits of fixed pairs.

use std::sync::Arc;

use orbicalc::group::catalog;
use orbicalc::gset::inertia_decompose;
use orbicalc::harness::generate_gsets;

fn main() -> orbicalc::Result<()> {
    for name in ["S3", "Q8", "A4"] {
        let g = Arc::new(catalog(name)?);
        for x in generate_gsets(g, 3, 1)? {
            let d = inertia_decompose(&x)?;
            println!(
                "{name}: |X| = {:2}, K0 rank {:2}, class form {:2}, inertia orbits {:2}, holds {}",
                x.size(),
                d.k0_rank,
                d.class_form_dim(),
                d.invariant_form_dim(),
                d.holds()
            );
        }
    }
    Ok(())
}
