//! Finite G-sets as desk-scale orbifolds `[X/G]`, their equivariant `K_0`, and the
//! decomposition maps built from fixed-point data.

mod inertia;
mod k0;
mod mackey;
mod orbifold;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use inertia::{inertia_decompose, InertiaDecomposition};
pub use k0::{equivariant_k0, pullback, rg_action, EquivariantK0, OrbitK0};
pub use mackey::{mackey_check, DoubleCosetTerm, MackeyReport};
pub use orbifold::{functoriality_check, idempotent_consistency, orbifold_decompose, OrbifoldDecomposition, OrbifoldSummand};

use crate::error::{Error, Result};
use crate::group::{normalizer, FiniteGroup, Subgroup};

/// A left action `act[g][x]` of a finite group on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    act: Vec<Vec<u32>>,
}

/// One orbit with its representative, stabilizer and transporting elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: usize,
    pub points: Vec<usize>,
    /// `witness[i] · rep = points[i]`.
    pub witness: Vec<usize>,
    pub stabilizer: Subgroup,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: serde_json::Value,
    pub size: usize,
    pub act: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        if act.len() != n {
            return Err(Error::InvalidGSet(format!("expected {n} rows, got {}", act.len())));
        }
        let size = act[0].len();
        for (g, row) in act.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidGSet(format!("row {g} has length {}", row.len())));
            }
            let mut seen = vec![false; size];
            for &y in row {
                if y >= size || std::mem::replace(&mut seen[y], true) {
                    return Err(Error::InvalidGSet(format!("row {g} is not a permutation")));
                }
            }
        }
        if act[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidGSet("identity does not act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if act[g][act[h][x]] != act[gh][x] {
                        return Err(Error::InvalidGSet(format!("g·(h·x) ≠ (gh)·x at g={g}, h={h}, x={x}")));
                    }
                }
            }
        }
        let act = act.into_iter().map(|r| r.into_iter().map(|v| v as u32).collect()).collect();
        Ok(GSet { group, act })
    }

    /// The one-point G-set.
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let act = vec![vec![0u32]; group.order()];
        GSet { group, act }
    }

    /// Left cosets `G/H`, indexed in order of least element.
    pub fn coset_space(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                for &x in h.elements() {
                    coset_of[group.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let act = (0..n)
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)] as u32).collect())
            .collect();
        GSet { group, act }
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let t = group.trivial();
        Self::coset_space(group, &t)
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidGSet("disjoint union of G-sets for different groups".into()));
        }
        let off = self.size() as u32;
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|y| y + off)).collect())
            .collect();
        Ok(GSet { group: self.group.clone(), act })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.act[0].len()
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x] as usize
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let elems = self.group.elements().filter(|&g| self.act(g, x) == x).collect();
        Subgroup::new(&self.group, elems).expect("stabilizers are subgroups")
    }

    /// Orbits ordered by least point, each represented by its least point.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for rep in 0..self.size() {
            if seen[rep] {
                continue;
            }
            let mut points = Vec::new();
            let mut witness = Vec::new();
            for g in self.group.elements() {
                let y = self.act(g, rep);
                if !seen[y] {
                    seen[y] = true;
                    points.push(y);
                    witness.push(g);
                }
            }
            out.push(Orbit { rep, points, witness, stabilizer: self.stabilizer(rep) });
        }
        out
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits().len()
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size()).filter(|&x| h.elements().iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// `X^H` with the residual action of `N(H)`, positions indexed by `N(H)`'s elements.
    pub fn fixed_point_set(&self, h: &Subgroup) -> FixedPoints {
        let points = self.fixed_points(h);
        let norm = normalizer(&self.group, h);
        let index: std::collections::HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let action = norm
            .elements()
            .iter()
            .map(|&u| points.iter().map(|&x| index[&self.act(u, x)]).collect())
            .collect();
        FixedPoints { points, normalizer: norm, action }
    }

    pub fn to_json(&self) -> GSetJson {
        let group = match self.group.name() {
            Some(n) if crate::group::catalog(n).map(|c| c == *self.group).unwrap_or(false) => {
                serde_json::Value::String(n.to_string())
            }
            _ => serde_json::to_value(crate::group::GroupJson::from_group(&self.group)).expect("serializable"),
        };
        GSetJson {
            group,
            size: self.size(),
            act: self.act.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect(),
        }
    }

    pub fn from_json(j: &GSetJson) -> Result<Self> {
        let g = FiniteGroup::from_json_value(&j.group)?;
        if j.act.first().map_or(0, |r| r.len()) != j.size {
            return Err(Error::InvalidGSet(format!("size {} does not match the action table", j.size)));
        }
        Self::new(Arc::new(g), j.act.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: GSetJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// `X^H` as a list of points of `X`, with `action[i][j]` the image of `points[j]` under the
/// `i`-th element of `N(H)`, as an index into `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    pub points: Vec<usize>,
    pub normalizer: Subgroup,
    pub action: Vec<Vec<usize>>,
}

/// An equivariant map `f: X → Y`.
#[derive(Clone, Debug)]
pub struct GMap {
    pub source: GSet,
    pub target: GSet,
    pub f: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, f: Vec<usize>) -> Result<Self> {
        if source.group != target.group || f.len() != source.size() || f.iter().any(|&y| y >= target.size()) {
            return Err(Error::InvalidGSet("map has the wrong shape".into()));
        }
        for g in source.group.elements() {
            for x in 0..source.size() {
                if f[source.act(g, x)] != target.act(g, f[x]) {
                    return Err(Error::InvalidGSet(format!("map is not equivariant at g={g}, x={x}")));
                }
            }
        }
        Ok(GMap { source, target, f })
    }

    /// `G/H → G/K`, `gH ↦ gK`, for `H ⊆ K`.
    pub fn coset_projection(group: Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<Self> {
        if !h.is_subset_of(k) {
            return Err(Error::NotSubgroup("H is not contained in K".into()));
        }
        let x = GSet::coset_space(group.clone(), h);
        let y = GSet::coset_space(group.clone(), k);
        let reps = coset_reps(&group, h);
        let yreps = coset_reps(&group, k);
        let f = reps
            .iter()
            .map(|&g| yreps.iter().position(|&r| k.contains(group.mul(group.inv(r), g))).unwrap())
            .collect();
        GMap::new(x, y, f)
    }

    /// Componentwise on disjoint unions.
    pub fn disjoint_union(&self, other: &GMap) -> Result<Self> {
        let source = self.source.disjoint_union(&other.source)?;
        let target = self.target.disjoint_union(&other.target)?;
        let off = self.target.size();
        let f = self.f.iter().copied().chain(other.f.iter().map(|y| y + off)).collect();
        GMap::new(source, target, f)
    }
}

pub(crate) fn coset_reps(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if !seen[x] {
            for &y in h.elements() {
                seen[g.mul(x, y)] = true;
            }
            reps.push(x);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn s3_on_three() -> GSet {
        let g = Arc::new(catalog("S3").unwrap());
        // the point stabilizers of S3 on {0,1,2} are the order-2 subgroups
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        GSet::coset_space(g.clone(), &Subgroup::cyclic(&g, t))
    }

    #[test]
    fn fixed_points_examples() {
        let x = s3_on_three();
        let g = x.group().clone();
        assert_eq!(x.size(), 3);
        let t = (0..6).find(|&a| g.element_order(a) == 2 && x.act(a, 2) == 2 && x.act(a, 0) != 0);
        if let Some(t) = t {
            assert_eq!(x.fixed_points(&Subgroup::cyclic(&g, t)), vec![2]);
        }
        for a in 0..6 {
            let fp = x.fixed_points(&Subgroup::cyclic(&g, a)).len();
            let expected = match g.element_order(a) {
                1 => 3,
                2 => 1,
                _ => 0,
            };
            assert_eq!(fp, expected);
        }
        let c4 = Arc::new(catalog("C4").unwrap());
        let reg = GSet::regular(c4.clone());
        assert!(reg.fixed_points(&Subgroup::cyclic(&c4, 2)).is_empty());
        assert_eq!(reg.fixed_points(&c4.trivial()).len(), 4);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let x = s3_on_three();
        let j = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(GSet::parse(&j).unwrap(), x);
        let bad = r#"{"group":"C2","size":2,"act":[[0,1],[0,0]]}"#;
        assert!(matches!(GSet::parse(bad), Err(Error::InvalidGSet(_))));
        let bad = r#"{"group":"C3","size":2,"act":[[0,1],[1,0],[1,0]]}"#;
        assert!(matches!(GSet::parse(bad), Err(Error::InvalidGSet(_))));
    }

    #[test]
    fn coset_projection_is_equivariant() {
        let g = Arc::new(catalog("S4").unwrap());
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let h = Subgroup::cyclic(&g, t);
        let m = GMap::coset_projection(g.clone(), &h, &g.whole()).unwrap();
        assert_eq!(m.target.size(), 1);
        assert_eq!(m.source.size(), 12);
    }
}
