//! Fixed-point decomposition of equivariant K0 for a few G-sets of D4.

use std::sync::Arc;

use orbicalc::group::{catalog, Subgroup};
use orbicalc::gset::{orbifold_decompose, GSet};
use orbicalc::harness::generate_gsets;
use orbicalc::repring::vistoli::Mode;

fn main() -> orbicalc::Result<()> {
    let g = Arc::new(catalog("D4")?);
    let h = Subgroup::cyclic(&g, 1);
    let mut sets = vec![GSet::point(g.clone()), GSet::coset_space(g.clone(), &h), GSet::regular(g.clone())];
    sets.extend(generate_gsets(g, 2, 7)?);
    for x in &sets {
        for mode in [Mode::Split, Mode::Rational] {
            let d = orbifold_decompose(x, mode)?;
            println!(
                "|X| = {:2}, {} orbits, {mode:?}: K0 rank {}, summands {:?}, invertible {}",
                x.size(),
                x.num_orbits(),
                d.k0.rank(),
                d.ranks(),
                d.certificate.invertible
            );
        }
    }
    Ok(())
}
