use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        Subgroup { elements }
    }

    /// Checks closure and returns the subgroup with sorted elements.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        if let Some(&x) = elements.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotSubgroup(format!("element {x} out of range")));
        }
        let mut member = vec![false; g.order()];
        for &x in &elements {
            member[x] = true;
        }
        for &a in &elements {
            if !member[g.inv(a)] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elements {
                if !member[g.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Subgroup { elements: list }
    }

    pub fn cyclic(g: &FiniteGroup, t: usize) -> Self {
        Self::generated(g, &[t])
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&h| group.conj(g, h)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    /// Least-index element whose order equals the subgroup order, if any.
    pub fn cyclic_generator(&self, g: &FiniteGroup) -> Option<usize> {
        let n = self.order();
        self.elements.iter().copied().find(|&x| g.element_order(x) == n)
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.cyclic_generator(g).is_some()
    }

    /// The multiplication table of the subgroup in its own indexing (position in
    /// the sorted list, with identity first).
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| self.position(g.mul(a, b)).expect("closed")).collect())
            .collect();
        FiniteGroup::from_table(&table).expect("subgroup table is a group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn subgroup_checks() {
        let g = catalog("S3").unwrap();
        let whole = Subgroup::generated(&g, &[1, 2]);
        assert_eq!(whole.order(), 6);
        let c = Subgroup::cyclic(&g, 1);
        assert!(c.is_cyclic(&g));
        assert!(!whole.is_cyclic(&g));
        assert_eq!(c.as_group(&g).order(), c.order());
        assert!(Subgroup::new(&g, vec![1]).is_err());
    }
}
