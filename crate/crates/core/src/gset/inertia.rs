//! Split form over the inertia set: `K_0([X/G])_l ≅ ⊕_{g ∈ G/∼} l^{X^g, C(g)} ≅ (⊕_{g ∈ G} l^{X^g})^G`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::{coset_reps, GSet};
use crate::error::Result;
use crate::group::{centralizer, conjugacy_classes};
use crate::repring::chartable::{character_table, CharacterTable};

/// The `C(g)`-orbits of `X^g` for one class representative `g`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassTerm {
    pub g: usize,
    pub centralizer_order: usize,
    pub orbits: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InertiaDecomposition {
    pub class_form: Vec<ClassTerm>,
    /// G-orbits of `{(g, x) : gx = x}`, each sorted, ordered by least pair.
    pub inertia_orbits: Vec<Vec<(usize, usize)>>,
    /// Image of the `i`-th class-form basis vector (in class-term order) as an inertia orbit.
    pub iso: Vec<usize>,
    pub k0_rank: usize,
    /// Per X-orbit, stabilizer classes correspond bijectively to the inertia orbits above it.
    pub character_bijection: bool,
    pub tables_invertible: bool,
}

impl InertiaDecomposition {
    pub fn class_form_dim(&self) -> usize {
        self.class_form.iter().map(|c| c.orbits.len()).sum()
    }

    pub fn invariant_form_dim(&self) -> usize {
        self.inertia_orbits.len()
    }

    pub fn iso_is_bijective(&self) -> bool {
        let mut hit = vec![false; self.inertia_orbits.len()];
        for &j in &self.iso {
            if j >= hit.len() || std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        hit.iter().all(|&b| b)
    }

    pub fn holds(&self) -> bool {
        self.k0_rank == self.class_form_dim()
            && self.class_form_dim() == self.invariant_form_dim()
            && self.iso_is_bijective()
            && self.character_bijection
            && self.tables_invertible
    }
}

fn table_verified(t: &CharacterTable) -> bool {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, bool>>> = OnceLock::new();
    let key = t.group().raw_table().to_vec();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return v;
    }
    let v = t.verify();
    cache.lock().unwrap().insert(key, v);
    v
}

fn orbits_of(points: &[usize], group: &[usize], act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &p in points {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit: Vec<usize> = group.iter().map(|&h| act(h, p)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        seen.extend(orbit.iter().copied());
        out.push(orbit);
    }
    out
}

pub fn inertia_decompose(x: &GSet) -> Result<InertiaDecomposition> {
    let g = x.group();
    let n = g.order();
    let size = x.size();
    let all: Vec<usize> = g.elements().collect();
    let enc = |a: usize, p: usize| a * size + p;
    let inertia: Vec<usize> = (0..n).flat_map(|a| (0..size).filter(move |&p| x.act(a, p) == p).map(move |p| enc(a, p))).collect();
    let conj_act = |h: usize, v: usize| enc(g.conj(h, v / size), x.act(h, v % size));
    let raw_orbits = orbits_of(&inertia, &all, conj_act);
    let mut orbit_of = HashMap::new();
    for (i, o) in raw_orbits.iter().enumerate() {
        for &v in o {
            orbit_of.insert(v, i);
        }
    }
    let inertia_orbits = raw_orbits.iter().map(|o| o.iter().map(|&v| (v / size, v % size)).collect()).collect();

    let cs = conjugacy_classes(g);
    let mut class_form = Vec::new();
    let mut iso = Vec::new();
    for c in 0..cs.num_classes() {
        let a = cs.class_rep(c);
        let cg = centralizer(g, a);
        let fixed: Vec<usize> = (0..size).filter(|&p| x.act(a, p) == p).collect();
        let orbits = orbits_of(&fixed, cg.elements(), |h, p| x.act(h, p));
        let reps = coset_reps(g, &cg);
        for o in &orbits {
            // Σ_{h ∈ G/C(g)} h·Σ_{p ∈ O} (g, p)
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &h in &reps {
                for &p in o {
                    *counts.entry(conj_act(h, enc(a, p))).or_default() += 1;
                }
            }
            let target = orbit_of[&enc(a, o[0])];
            let exact = counts.len() == raw_orbits[target].len()
                && counts.iter().all(|(v, &k)| k == 1 && orbit_of[v] == target);
            iso.push(if exact { target } else { usize::MAX });
        }
        class_form.push(ClassTerm { g: a, centralizer_order: cg.order(), orbits });
    }

    let mut k0_rank = 0;
    let mut character_bijection = true;
    let mut tables_invertible = true;
    for orbit in x.orbits() {
        let hg = orbit.stabilizer.as_group(g);
        let table = character_table(&hg)?;
        k0_rank += table.num_classes();
        tables_invertible &= table_verified(&table);
        let mut images: Vec<usize> = (0..table.num_classes())
            .map(|r| orbit_of[&enc(orbit.stabilizer.elements()[table.classes().class_rep(r)], orbit.rep)])
            .collect();
        let above = raw_orbits.iter().filter(|o| orbit.points.contains(&(o[0] % size))).count();
        images.sort_unstable();
        images.dedup();
        character_bijection &= images.len() == table.num_classes() && images.len() == above;
    }
    Ok(InertiaDecomposition { class_form, inertia_orbits, iso, k0_rank, character_bijection, tables_invertible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, Subgroup};
    use std::sync::Arc;

    #[test]
    fn examples() {
        let g = Arc::new(catalog("S3").unwrap());
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let three = GSet::coset_space(g.clone(), &Subgroup::cyclic(&g, t));
        let d = inertia_decompose(&three).unwrap();
        assert!(d.holds());
        assert_eq!(d.invariant_form_dim(), 2);
        let dims: Vec<usize> = d.class_form.iter().map(|c| c.orbits.len()).collect();
        assert_eq!(dims.iter().sum::<usize>(), 2);
        assert!(dims.contains(&0));

        let pt = inertia_decompose(&GSet::point(g.clone())).unwrap();
        assert_eq!(pt.invariant_form_dim(), 3);
        let free = inertia_decompose(&GSet::regular(g.clone()).disjoint_union(&GSet::regular(g)).unwrap()).unwrap();
        assert_eq!(free.invariant_form_dim(), 2);
        assert!(free.holds());
    }
}
