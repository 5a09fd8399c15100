//! Finite groups given by multiplication tables.

mod catalog;
mod conj;
mod json;
mod subgroup;

use std::collections::HashMap;
use std::fmt;

pub use catalog::{catalog, catalog_names, direct_product};
pub use conj::{
    centralizer, conjugacy_classes, cyclic_subgroup_classes, double_cosets, generators_of, normalizer,
    normalizer_action, ConjStructure, CyclicClass, DoubleCoset, NormalizerAction,
};
pub use json::GroupJson;
pub use subgroup::Subgroup;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 2048;

/// A finite group on `0..order` with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    name: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "FiniteGroup({n}, order {})", self.order),
            None => write!(f, "FiniteGroup(order {})", self.order),
        }
    }
}

impl FiniteGroup {
    /// Validates a Cayley table whose row/column 0 is the identity.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_table_capped(table, DEFAULT_ORDER_CAP)
    }

    pub fn from_table_capped(table: &[Vec<usize>], cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > cap {
            return Err(Error::OrderOverflow { order: n, cap });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} in row {i} out of range")));
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::InvalidGroup(format!("index 0 is not an identity at element {x}")));
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                seen_row[table[i][j]] = true;
                seen_col[table[j][i]] = true;
            }
            if seen_row.iter().any(|s| !s) || seen_col.iter().any(|s| !s) {
                return Err(Error::InvalidGroup(format!("row or column {i} is not a permutation")));
            }
        }
        let mul: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let m = |a: usize, b: usize| mul[a * n + b] as usize;
        // Light's test: associativity only needs to hold with a generator in the middle.
        for g in generating_set(n, &m) {
            for x in 0..n {
                let xg = m(x, g);
                for y in 0..n {
                    if m(xg, y) != m(x, m(g, y)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({x}, {g}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_valid(n, mul))
    }

    fn from_valid(n: usize, mul: Vec<u32>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut elem_order = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        FiniteGroup { order: n, mul, inv, elem_order, name: None }
    }

    /// Closure of permutations of `0..degree` under composition, breadth first
    /// from the identity. `(g·h)(x) = g(h(x))`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!("generator {k} has length {}, degree {degree}", g.len())));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup(format!("generator {k} is not a bijection")));
                }
                seen[x] = true;
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() == cap {
                        return Err(Error::OrderOverflow { order: cap + 1, cap });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        Ok(Self::from_valid(n, mul))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order[a] as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    pub fn exponent(&self) -> usize {
        self.elem_order.iter().fold(1u64, |acc, &o| crate::arith::numtheory::lcm(acc, o as u64)) as usize
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn raw_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0])
    }

    /// A generating set chosen greedily by index.
    pub fn generators(&self) -> Vec<usize> {
        generating_set(self.order, &|a, b| self.mul(a, b))
    }
}

fn generating_set(n: usize, m: &dyn Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0];
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        // closure of members ∪ {g} under right multiplication by generators
        let mut queue = members.clone();
        if !inside[g] {
            inside[g] = true;
            queue.push(g);
            members.push(g);
        }
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &s in &gens {
                let y = m(x, s);
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_from_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 2]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 1, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(&t).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(ref s) if s.contains("associative")));
    }

    #[test]
    fn build_from_permutations() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let v4 = FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        assert!(FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).is_err());
        let s6 = FiniteGroup::from_permutations_capped(6, &[vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]], 100);
        assert_eq!(s6.unwrap_err(), Error::OrderOverflow { order: 101, cap: 100 });
    }
}
