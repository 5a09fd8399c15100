use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A conjugacy class of cyclic subgroups: the representative and its orbit,
/// each member `m` paired with a witness `w` such that `w · rep · w⁻¹ = m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicClass {
    pub rep: Subgroup,
    pub orbit: Vec<(Subgroup, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjStructure {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub cyclic_classes: Vec<CyclicClass>,
}

impl ConjStructure {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }
}

/// Element classes ordered by least member, plus conjugacy classes of cyclic subgroups.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjStructure {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut cls: Vec<usize> = Vec::new();
        for h in 0..n {
            let y = g.conj(h, x);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                cls.push(y);
            }
        }
        cls.sort_unstable();
        classes.push(cls);
    }
    ConjStructure { classes, class_of, cyclic_classes: cyclic_subgroup_classes(g) }
}

/// One class per conjugacy class of cyclic subgroups, each represented by its
/// lexicographically least element list; sorted by (order, elements).
pub fn cyclic_subgroup_classes(g: &FiniteGroup) -> Vec<CyclicClass> {
    let mut all: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    for x in 0..g.order() {
        all.insert(Subgroup::cyclic(g, x).elements().to_vec(), ());
    }
    let mut done: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for elems in all.keys() {
        if done.contains_key(elems) {
            continue;
        }
        let start = Subgroup::from_sorted(elems.clone());
        let mut orbit: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for w in 0..g.order() {
            let c = start.conjugate(g, w);
            orbit.entry(c.elements().to_vec()).or_insert(w);
        }
        // lexicographically least member as representative, witnesses rebased on it
        let rep_elems = orbit.keys().next().unwrap().clone();
        let rep = Subgroup::from_sorted(rep_elems.clone());
        let w0 = orbit[&rep_elems];
        let w0_inv = g.inv(w0);
        let members = orbit
            .iter()
            .map(|(e, &w)| (Subgroup::from_sorted(e.clone()), g.mul(w, w0_inv)))
            .collect::<Vec<_>>();
        for (m, _) in &members {
            done.insert(m.elements().to_vec(), ());
        }
        out.push(CyclicClass { rep, orbit: members });
    }
    out.sort_by(|a, b| (a.rep.order(), a.rep.elements()).cmp(&(b.rep.order(), b.rep.elements())));
    out
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let elems = (0..g.order()).filter(|&u| h.elements().iter().all(|&x| h.contains(g.conj(u, x)))).collect();
    Subgroup::from_sorted(elems)
}

pub fn centralizer(g: &FiniteGroup, x: usize) -> Subgroup {
    Subgroup::from_sorted((0..g.order()).filter(|&h| g.mul(h, x) == g.mul(x, h)).collect())
}

/// The normalizer of a cyclic subgroup with its action `u t u⁻¹ = t^{a(u)}` on
/// the fixed generator `t` (least-index element of full order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerAction {
    pub normalizer: Subgroup,
    pub generator: usize,
    /// `a(u)` for each element of `normalizer`, in the same order; values in `(Z/m)^×`.
    pub powers: Vec<u64>,
}

impl NormalizerAction {
    pub fn power_of(&self, u: usize) -> Option<u64> {
        self.normalizer.position(u).map(|i| self.powers[i])
    }

    /// Distinct automorphisms in the image, sorted.
    pub fn image(&self) -> Vec<u64> {
        let mut v = self.powers.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn normalizer_action(g: &FiniteGroup, sigma: &Subgroup) -> Result<NormalizerAction> {
    let t = sigma.cyclic_generator(g).ok_or(Error::NotCyclic)?;
    let m = sigma.order();
    let n = normalizer(g, sigma);
    let mut exp_of = vec![usize::MAX; g.order()];
    let mut x = 0;
    for k in 0..m {
        exp_of[x] = k;
        x = g.mul(x, t);
    }
    let powers = n
        .elements()
        .iter()
        .map(|&u| {
            let k = exp_of[g.conj(u, t)];
            if m == 1 { 1 } else { k as u64 }
        })
        .collect();
    Ok(NormalizerAction { normalizer: n, generator: t, powers })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub rep: usize,
    pub elements: Vec<usize>,
    /// `σ ∩ τ σ τ⁻¹` for the representative `τ`.
    pub intersection: Subgroup,
}

/// Double cosets `σ τ σ`, each represented by its least element.
pub fn double_cosets(g: &FiniteGroup, sigma: &Subgroup) -> Vec<DoubleCoset> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for tau in 0..g.order() {
        if seen[tau] {
            continue;
        }
        let mut elems = Vec::new();
        for &a in sigma.elements() {
            for &b in sigma.elements() {
                let y = g.mul(g.mul(a, tau), b);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
        }
        elems.sort_unstable();
        let intersection = sigma.intersect(&sigma.conjugate(g, tau));
        out.push(DoubleCoset { rep: tau, elements: elems, intersection });
    }
    out
}

/// `gen(σ)`: the elements of order `|σ|`; `{e}` for the trivial group.
pub fn generators_of(g: &FiniteGroup, sigma: &Subgroup) -> Result<Vec<usize>> {
    let m = sigma.order();
    let gens: Vec<usize> = sigma.elements().iter().copied().filter(|&x| g.element_order(x) == m).collect();
    if gens.is_empty() {
        return Err(Error::NotCyclic);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::euler_phi;
    use crate::group::{catalog, catalog_names};

    #[test]
    fn class_counts() {
        let s3 = catalog("S3").unwrap();
        let c = conjugacy_classes(&s3);
        let sizes: Vec<usize> = c.classes.iter().map(|x| x.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(conjugacy_classes(&catalog("C4").unwrap()).num_classes(), 4);
        assert_eq!(conjugacy_classes(&catalog("Q8").unwrap()).num_classes(), 5);
    }

    #[test]
    fn cyclic_classes_counts() {
        let orders = |name: &str| -> Vec<usize> {
            cyclic_subgroup_classes(&catalog(name).unwrap()).iter().map(|c| c.rep.order()).collect()
        };
        assert_eq!(orders("S3"), vec![1, 2, 3]);
        assert_eq!(orders("S4"), vec![1, 2, 2, 3, 4]);
        assert_eq!(orders("Q8"), vec![1, 2, 4, 4, 4]);
    }

    #[test]
    fn witnesses_and_partition() {
        for name in catalog_names(24) {
            let g = catalog(&name).unwrap();
            let mut total = 0;
            for cls in cyclic_subgroup_classes(&g) {
                for (m, w) in &cls.orbit {
                    assert_eq!(&cls.rep.conjugate(&g, *w), m);
                    total += generators_of(&g, m).unwrap().len();
                    assert_eq!(generators_of(&g, m).unwrap().len() as u64, euler_phi(m.order() as u64));
                    // conjugate normalizers via the same witness
                    assert_eq!(normalizer(&g, &cls.rep).conjugate(&g, *w), normalizer(&g, m));
                }
            }
            assert_eq!(total, g.order(), "{name}");
            for cls in cyclic_subgroup_classes(&g) {
                let dc = double_cosets(&g, &cls.rep);
                assert_eq!(dc.iter().map(|d| d.elements.len()).sum::<usize>(), g.order());
                let act = normalizer_action(&g, &cls.rep).unwrap();
                let m = cls.rep.order() as u64;
                for (i, &u) in act.normalizer.elements().iter().enumerate() {
                    for (j, &v) in act.normalizer.elements().iter().enumerate() {
                        let uv = g.mul(u, v);
                        let expected = if m == 1 { 1 } else { act.powers[i] * act.powers[j] % m };
                        assert_eq!(act.power_of(uv).unwrap(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn normalizer_examples() {
        let s3 = catalog("S3").unwrap();
        let c3 = cyclic_subgroup_classes(&s3).pop().unwrap().rep;
        let act = normalizer_action(&s3, &c3).unwrap();
        assert_eq!(act.normalizer.order(), 6);
        assert_eq!(act.image(), vec![1, 2]);
        let s4 = catalog("S4").unwrap();
        let c4 = cyclic_subgroup_classes(&s4).pop().unwrap().rep;
        assert_eq!(c4.order(), 4);
        let act = normalizer_action(&s4, &c4).unwrap();
        assert_eq!(act.normalizer.order(), 8);
        assert_eq!(act.image(), vec![1, 3]);
        let c6 = catalog("C6").unwrap();
        for cls in cyclic_subgroup_classes(&c6) {
            assert_eq!(normalizer_action(&c6, &cls.rep).unwrap().image(), vec![1]);
        }
    }

    #[test]
    fn centralizers_and_double_cosets() {
        let s3 = catalog("S3").unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(centralizer(&s3, t).order(), 2);
        assert_eq!(centralizer(&s3, 0).order(), 6);
        let q8 = catalog("Q8").unwrap();
        let minus_one = (0..8).find(|&x| q8.element_order(x) == 2).unwrap();
        assert_eq!(centralizer(&q8, minus_one).order(), 8);
        let sigma = Subgroup::cyclic(&s3, t);
        let dc = double_cosets(&s3, &sigma);
        assert_eq!(dc.len(), 2);
        assert_eq!(dc[0].rep, 0);
        let mut inter: Vec<usize> = dc.iter().map(|d| d.intersection.order()).collect();
        inter.sort();
        assert_eq!(inter, vec![1, 2]);
        let c3 = cyclic_subgroup_classes(&s3).pop().unwrap().rep;
        let dc = double_cosets(&s3, &c3);
        assert_eq!(dc.len(), 2);
        assert!(dc.iter().all(|d| d.intersection == c3));
        assert_eq!(double_cosets(&s3, &s3.whole()).len(), 1);
        assert_eq!(generators_of(&s3, &s3.trivial()).unwrap(), vec![0]);
        assert_eq!(generators_of(&s3, &s3.whole()), Err(Error::NotCyclic));
    }
}
