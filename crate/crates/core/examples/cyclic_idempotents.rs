//! Primitive idempotent of R(C_m) and its checks.

use orbicalc::repring::cyclic::{character_iso, e_prim, maximality_check, restrict};

fn main() -> orbicalc::Result<()> {
    for m in [1usize, 2, 4, 6, 12] {
        let e = e_prim(m);
        let coeffs: Vec<String> = e.iter().map(|q| q.to_string()).collect();
        let vanishes = (1..m).filter(|d| m % d == 0).all(|d| restrict(&e, d).iter().all(num_traits::Zero::is_zero));
        let iso = character_iso(m, m as u64)?;
        println!(
            "m = {m:2}: e = [{}]\n        restriction vanishes {vanishes}, maximal {}, diagram {}",
            coeffs.join(", "),
            maximality_check(m).holds,
            iso.holds()
        );
    }
    Ok(())
}
