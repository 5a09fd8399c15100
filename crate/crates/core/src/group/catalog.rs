use super::FiniteGroup;
use crate::error::{Error, Result};

/// Table of `H × K` with `(h, k) ↦ h·|K| + k`.
pub fn direct_product(h: &FiniteGroup, k: &FiniteGroup) -> FiniteGroup {
    let (a, b) = (h.order(), k.order());
    let table: Vec<Vec<usize>> = (0..a * b)
        .map(|x| (0..a * b).map(|y| h.mul(x / b, y / b) * b + k.mul(x % b, y % b)).collect())
        .collect();
    FiniteGroup::from_table(&table).expect("product of groups")
}

fn cyclic(m: usize) -> FiniteGroup {
    let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    FiniteGroup::from_table(&table).expect("cyclic table")
}

fn dihedral(k: usize) -> FiniteGroup {
    let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    let refl: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
    FiniteGroup::from_permutations(k, &[rot, refl]).expect("dihedral")
}

fn quaternion() -> FiniteGroup {
    // elements ±1, ±i, ±j, ±k encoded as sign·unit with units 1,i,j,k = 0..3
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    // index = 2·unit + sign
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (neg, u) = unit_mul(x / 2, y / 2);
                    let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
                    2 * u + sign
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&table).expect("quaternion table")
}

/// Names of catalog groups of order at most `max_order`, in a fixed order.
pub fn catalog_names(max_order: usize) -> Vec<String> {
    let mut names: Vec<(usize, String)> = (1..=24).map(|m| (m, format!("C{m}"))).collect();
    for (n, name) in [(4, "C2xC2"), (8, "C2xC4"), (8, "D4"), (12, "D6"), (8, "Q8"), (12, "A4"), (6, "S3"), (24, "S4")] {
        names.push((n, name.to_string()));
    }
    names.into_iter().filter(|(n, _)| *n <= max_order).map(|(_, s)| s).collect()
}

pub fn catalog(name: &str) -> Result<FiniteGroup> {
    let g = match name {
        "C2xC2" => direct_product(&cyclic(2), &cyclic(2)),
        "C2xC4" => direct_product(&cyclic(2), &cyclic(4)),
        "D4" => dihedral(4),
        "D6" => dihedral(6),
        "Q8" => quaternion(),
        "S3" => FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]])?,
        "A4" => FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?,
        "S4" => FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])?,
        _ => match name.strip_prefix('C').and_then(|m| m.parse::<usize>().ok()) {
            Some(m) if (1..=24).contains(&m) => cyclic(m),
            _ => return Err(Error::InvalidArgument(format!("unknown catalog group {name:?}"))),
        },
    };
    Ok(g.with_name(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let expected = [("C2xC2", 4, 2), ("C2xC4", 8, 4), ("D4", 8, 4), ("D6", 12, 6), ("Q8", 8, 4), ("A4", 12, 6), ("S3", 6, 6), ("S4", 24, 12), ("C24", 24, 24), ("C1", 1, 1)];
        for (name, order, exp) in expected {
            let g = catalog(name).unwrap();
            assert_eq!((g.order(), g.exponent()), (order, exp), "{name}");
        }
        assert!(catalog("C25").is_err());
        assert!(catalog("Z7").is_err());
        assert_eq!(catalog_names(24).len(), 32);
        assert_eq!(catalog_names(4), vec!["C1", "C2", "C3", "C4", "C2xC2"]);
        assert!(!catalog("Q8").unwrap().is_abelian());
        assert!(catalog("C2xC4").unwrap().is_abelian());
    }
}
