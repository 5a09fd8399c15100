//! Block counts of (twisted) group algebras under cyclotomic base change.

use std::sync::Arc;

use orbicalc::group::catalog;
use orbicalc::skew::cocycle::CocycleTable;
use orbicalc::skew::{h2_representatives, simple_block_count, twisted_block_count, FinDimAlgebra};

fn main() -> orbicalc::Result<()> {
    for name in ["C3", "C5", "S3", "Q8"] {
        let g = Arc::new(catalog(name)?);
        let r = twisted_block_count(&CocycleTable::trivial(g.clone()), 1, g.exponent() as u64)?;
        println!("Q[{name}]: blocks {} -> {} over Q -> Q(ζ_{}), injective {}", r.blocks.0, r.blocks.1, r.fields.1, r.injective);
    }
    let k = Arc::new(catalog("C2xC2")?);
    for alpha in h2_representatives(k, 2)?.representatives {
        let r = twisted_block_count(&alpha, 2, 4)?;
        println!("twisted C2xC2 {:?}: blocks {:?}, injective {}", alpha.to_json().table, r.blocks, r.injective);
    }
    let ut = simple_block_count(&FinDimAlgebra::upper_triangular(2), 1, 4)?;
    println!("upper triangular 2x2: radical {}, blocks {:?}", ut.radical_dim, ut.blocks);
    Ok(())
}
