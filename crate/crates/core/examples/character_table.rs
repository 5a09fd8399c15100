//! Character table of a catalog group: `cargo run --example character_table -- S4`

use orbicalc::group::catalog;
use orbicalc::repring::character_table;

fn main() -> orbicalc::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "S4".into());
    let g = catalog(&name)?;
    let t = character_table(&g)?;
    println!("{name}: order {}, {} classes, conductor {}", g.order(), t.num_classes(), t.conductor());
    println!("class sizes {:?}", t.class_sizes());
    for (i, row) in t.values().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("χ{i}: {}", cells.join("  "));
    }
    println!("orthogonality {}", t.verify());
    Ok(())
}
