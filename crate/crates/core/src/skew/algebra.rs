//! Finite-dimensional algebras over cyclotomic fields given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::cyclotomic::{Cyclotomic, CyclotomicJson};
use crate::arith::field::{sparse_axpy, sparse_kernel, EchelonBasis, SparseVec};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, FiniteGroup};

pub type Vector = SparseVec<Cyclotomic>;

/// `degree[i]`: the group element grading basis vector `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    pub group: Arc<FiniteGroup>,
    pub degree: Vec<usize>,
}

/// `images[g][j] = g(b_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    pub group: Arc<FiniteGroup>,
    pub images: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    dim: usize,
    labels: Vec<String>,
    unit: Vector,
    /// `products[i * dim + j] = b_i b_j`.
    products: Vec<Vec<(usize, Cyclotomic)>>,
    /// Elements generating the algebra; used to shorten center and commutator computations.
    generators: Vec<Vector>,
    grading: Option<Grading>,
    action: Option<Action>,
    /// Base point of each basis vector for bundles over a finite set.
    fiber: Option<Vec<usize>>,
}

pub fn basis_vector(i: usize) -> Vector {
    let mut v = Vector::new();
    v.insert(i, Cyclotomic::one());
    v
}

pub(crate) fn scale(v: &Vector, c: &Cyclotomic) -> Vector {
    if c.is_zero() {
        return Vector::new();
    }
    v.iter().map(|(k, x)| (*k, x.mul_ref(c))).collect()
}

pub fn add(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    let entries: Vec<(usize, Cyclotomic)> = b.iter().map(|(k, x)| (*k, x.clone())).collect();
    sparse_axpy(&mut out, &Cyclotomic::one(), &entries);
    out
}

pub fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    let entries: Vec<(usize, Cyclotomic)> = b.iter().map(|(k, x)| (*k, x.clone())).collect();
    sparse_axpy(&mut out, &Cyclotomic::from_int(-1), &entries);
    out
}

impl FinDimAlgebra {
    /// Builds without checks; `products` is indexed by `i * dim + j`.
    pub(crate) fn raw(dim: usize, unit: Vector, products: Vec<Vec<(usize, Cyclotomic)>>, labels: Vec<String>) -> Self {
        let generators = (0..dim).map(basis_vector).collect();
        FinDimAlgebra { dim, labels, unit, products, generators, grading: None, action: None, fiber: None }
    }

    /// Checks associativity on all basis triples and that `unit` is a two-sided unit.
    pub fn new(dim: usize, unit: Vector, products: Vec<Vec<(usize, Cyclotomic)>>) -> Result<Self> {
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!("expected {} products, got {}", dim * dim, products.len())));
        }
        if products.iter().flatten().any(|(k, _)| *k >= dim) || unit.keys().any(|&k| k >= dim) {
            return Err(Error::InvalidAlgebra("index out of range".into()));
        }
        let labels = (0..dim).map(|i| format!("b{i}")).collect();
        let a = Self::raw(dim, unit, products, labels);
        a.check_unit()?;
        a.check_associative()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim {
            self.labels = labels;
        }
        self
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub(crate) fn set_generators(&mut self, gens: Vec<Vector>) {
        self.generators = gens;
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn action(&self) -> Option<&Action> {
        self.action.as_ref()
    }

    pub fn fiber(&self) -> Option<&[usize]> {
        self.fiber.as_deref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Cyclotomic)] {
        &self.products[i * self.dim + j]
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, x) in a {
            for (j, y) in b {
                let p = self.mul_basis(*i, *j);
                if !p.is_empty() {
                    sparse_axpy(&mut out, &x.mul_ref(y), p);
                }
            }
        }
        out
    }

    pub fn commutator(&self, a: &Vector, b: &Vector) -> Vector {
        sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra(format!("unit fails on basis vector {i}")));
            }
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij: Vector = self.mul_basis(i, j).iter().cloned().collect();
                for k in 0..self.dim {
                    let left = self.mul(&ij, &basis_vector(k));
                    let jk: Vector = self.mul_basis(j, k).iter().cloned().collect();
                    let right = self.mul(&basis_vector(i), &jk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("associativity fails on ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| {
            let a: Vector = self.mul_basis(i, j).iter().cloned().collect();
            let b: Vector = self.mul_basis(j, i).iter().cloned().collect();
            a == b
        }))
    }

    /// Checks `deg(b_i b_j) = deg(b_i) deg(b_j)` on nonzero products.
    pub fn with_grading(mut self, grading: Grading) -> Result<Self> {
        if grading.degree.len() != self.dim || grading.degree.iter().any(|&d| d >= grading.group.order()) {
            return Err(Error::InvalidAlgebra("grading has the wrong shape".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = grading.group.mul(grading.degree[i], grading.degree[j]);
                if self.mul_basis(i, j).iter().any(|(k, _)| grading.degree[*k] != d) {
                    return Err(Error::InvalidAlgebra(format!("grading is not multiplicative on ({i}, {j})")));
                }
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub(crate) fn set_grading_unchecked(&mut self, grading: Grading) {
        self.grading = Some(grading);
    }

    pub fn with_fiber(mut self, fiber: Vec<usize>) -> Result<Self> {
        if fiber.len() != self.dim {
            return Err(Error::InvalidAlgebra("fiber labels have the wrong length".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.mul_basis(i, j);
                if !p.is_empty() && (fiber[i] != fiber[j] || p.iter().any(|(k, _)| fiber[*k] != fiber[i])) {
                    return Err(Error::InvalidAlgebra(format!("fibers are not orthogonal at ({i}, {j})")));
                }
            }
        }
        self.fiber = Some(fiber);
        Ok(self)
    }

    pub fn act(&self, g: usize, v: &Vector) -> Vector {
        let action = self.action.as_ref().expect("algebra has an action");
        let mut out = Vector::new();
        for (j, c) in v {
            let img: Vec<(usize, Cyclotomic)> = action.images[g][*j].iter().map(|(k, x)| (*k, x.clone())).collect();
            sparse_axpy(&mut out, c, &img);
        }
        out
    }

    /// Checks that the group acts by algebra automorphisms.
    pub fn with_action(mut self, action: Action) -> Result<Self> {
        let n = action.group.order();
        if action.images.len() != n || action.images.iter().any(|r| r.len() != self.dim) {
            return Err(Error::NotAutomorphism("action has the wrong shape".into()));
        }
        self.action = Some(action);
        let action = self.action.as_ref().unwrap();
        for j in 0..self.dim {
            if action.images[0][j] != basis_vector(j) {
                return Err(Error::NotAutomorphism("identity acts nontrivially".into()));
            }
        }
        for g in 0..n {
            if self.act(g, &self.unit) != self.unit {
                return Err(Error::NotAutomorphism(format!("element {g} moves the unit")));
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let p: Vector = self.mul_basis(i, j).iter().cloned().collect();
                    let lhs = self.act(g, &p);
                    let rhs = self.mul(&action.images[g][i], &action.images[g][j]);
                    if lhs != rhs {
                        return Err(Error::NotAutomorphism(format!("element {g} is not multiplicative on ({i}, {j})")));
                    }
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = action.group.mul(g, h);
                for j in 0..self.dim {
                    if self.act(g, &action.images[h][j]) != action.images[gh][j] {
                        return Err(Error::NotAutomorphism(format!("g(h(b)) ≠ (gh)(b) at g={g}, h={h}")));
                    }
                }
            }
        }
        Ok(self)
    }

    /// `Z(A)`: the kernel of `x ↦ ([x, g])_g` over the generators.
    pub fn center(&self) -> Vec<Vector> {
        self.center_on(&(0..self.dim).collect::<Vec<_>>())
    }

    /// Central elements supported on the given basis vectors.
    fn center_on(&self, support: &[usize]) -> Vec<Vector> {
        let gens = &self.generators;
        let images: Vec<Vector> = support
            .iter()
            .map(|&i| {
                let b = basis_vector(i);
                let mut img = Vector::new();
                for (gi, g) in gens.iter().enumerate() {
                    for (k, c) in self.commutator(&b, g) {
                        img.insert(gi * self.dim + k, c);
                    }
                }
                img
            })
            .collect();
        sparse_kernel(&images)
            .into_iter()
            .map(|v| v.into_iter().map(|(k, c)| (support[k], c)).collect())
            .collect()
    }

    /// Center split by degree; requires homogeneous generators.
    pub fn graded_center(&self) -> Result<BTreeMap<usize, Vec<Vector>>> {
        let grading = self.grading.as_ref().ok_or_else(|| Error::InvalidAlgebra("algebra is not graded".into()))?;
        let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &d) in grading.degree.iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        let mut out = BTreeMap::new();
        for g in grading.group.elements() {
            let support = by_degree.get(&g).cloned().unwrap_or_default();
            out.insert(g, if support.is_empty() { Vec::new() } else { self.center_on(&support) });
        }
        Ok(out)
    }

    /// `HH_0(A) = A/[A,A]`, with `[A,A]` spanned by `[g, b_j]` for generators `g`.
    pub fn hh0(&self) -> Hh0 {
        let mut comm = EchelonBasis::new(false);
        for g in &self.generators {
            for j in 0..self.dim {
                let c = self.commutator(g, &basis_vector(j));
                if !c.is_empty() {
                    comm.insert(&c);
                }
            }
        }
        let pivots = comm.pivots();
        let quotient_basis: Vec<usize> = (0..self.dim).filter(|i| pivots.binary_search(i).is_err()).collect();
        let by_class = self.grading.as_ref().map(|gr| {
            let cs = conjugacy_classes(&gr.group);
            let mut dims = vec![0usize; cs.num_classes()];
            for &i in &quotient_basis {
                dims[cs.class_of[gr.degree[i]]] += 1;
            }
            (0..cs.num_classes()).map(|c| (cs.class_rep(c), dims[c])).collect()
        });
        Hh0 { dim: self.dim, quotient_basis, by_class, commutators: comm }
    }

    pub fn direct_sum(&self, other: &FinDimAlgebra) -> FinDimAlgebra {
        let d = self.dim + other.dim;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                products[i * d + j] = self.mul_basis(i, j).to_vec();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                products[(i + self.dim) * d + j + self.dim] =
                    other.mul_basis(i, j).iter().map(|(k, c)| (k + self.dim, c.clone())).collect();
            }
        }
        let unit = add(&self.unit, &other.unit.iter().map(|(k, c)| (k + self.dim, c.clone())).collect());
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        FinDimAlgebra::raw(d, unit, products, labels)
    }

    /// `A ⊗ B` on the basis `a_i ⊗ b_j ↦ i·dim B + j`.
    pub fn tensor(&self, other: &FinDimAlgebra) -> FinDimAlgebra {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let mut acc = Vector::new();
                        for (p, x) in self.mul_basis(i, k) {
                            for (q, y) in other.mul_basis(j, l) {
                                sparse_axpy(&mut acc, &x.mul_ref(y), &[(p * db + q, Cyclotomic::one())]);
                            }
                        }
                        products[(i * db + j) * d + k * db + l] = acc.into_iter().collect();
                    }
                }
            }
        }
        let mut unit = Vector::new();
        for (p, x) in &self.unit {
            for (q, y) in &other.unit {
                unit.insert(p * db + q, x.mul_ref(y));
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        FinDimAlgebra::raw(d, unit, products, labels)
    }

    /// `M_r(k)` on matrix units `E_ij ↦ i·r + j`.
    pub fn matrix_algebra(r: usize) -> FinDimAlgebra {
        let d = r * r;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..r {
            for j in 0..r {
                for l in 0..r {
                    products[(i * r + j) * d + j * r + l] = vec![(i * r + l, Cyclotomic::one())];
                }
            }
        }
        let unit = (0..r).map(|i| (i * r + i, Cyclotomic::one())).collect();
        let labels = (0..r).flat_map(|i| (0..r).map(move |j| format!("E{i}{j}"))).collect();
        FinDimAlgebra::raw(d, unit, products, labels)
    }

    /// `Map({0..n}, k)` on the point indicators.
    pub fn functions(n: usize) -> FinDimAlgebra {
        let mut products = vec![Vec::new(); n * n];
        for i in 0..n {
            products[i * n + i] = vec![(i, Cyclotomic::one())];
        }
        let unit = (0..n).map(|i| (i, Cyclotomic::one())).collect();
        let labels = (0..n).map(|i| format!("δ{i}")).collect();
        FinDimAlgebra::raw(n, unit, products, labels)
    }

    /// Upper-triangular `r × r` matrices.
    pub fn upper_triangular(r: usize) -> FinDimAlgebra {
        let idx: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
        let pos = |i: usize, j: usize| idx.iter().position(|&p| p == (i, j)).unwrap();
        let d = idx.len();
        let mut products = vec![Vec::new(); d * d];
        for (a, &(i, j)) in idx.iter().enumerate() {
            for (b, &(k, l)) in idx.iter().enumerate() {
                if j == k {
                    products[a * d + b] = vec![(pos(i, l), Cyclotomic::one())];
                }
            }
        }
        let unit = (0..r).map(|i| (pos(i, i), Cyclotomic::one())).collect();
        let labels = idx.iter().map(|(i, j)| format!("E{i}{j}")).collect();
        FinDimAlgebra::raw(d, unit, products, labels)
    }

    /// The subalgebra on basis vectors over the given points (needs fiber labels).
    pub fn restrict_to_points(&self, points: &[usize]) -> Result<(FinDimAlgebra, Vec<usize>)> {
        let fiber = self.fiber.as_ref().ok_or_else(|| Error::InvalidAlgebra("algebra has no fiber labels".into()))?;
        let keep: Vec<usize> = (0..self.dim).filter(|&i| points.contains(&fiber[i])).collect();
        let mut new_index = vec![usize::MAX; self.dim];
        for (a, &i) in keep.iter().enumerate() {
            new_index[i] = a;
        }
        let d = keep.len();
        let mut products = vec![Vec::new(); d * d];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                products[a * d + b] = self.mul_basis(i, j).iter().map(|(k, c)| (new_index[*k], c.clone())).collect();
            }
        }
        let unit = self.unit.iter().filter(|(k, _)| new_index[**k] != usize::MAX).map(|(k, c)| (new_index[*k], c.clone())).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut out = FinDimAlgebra::raw(d, unit, products, labels);
        out.fiber = Some(keep.iter().map(|&i| fiber[i]).collect());
        out.generators = self
            .generators
            .iter()
            .map(|g| g.iter().filter(|(k, _)| new_index[**k] != usize::MAX).map(|(k, c)| (new_index[*k], c.clone())).collect::<Vector>())
            .filter(|g| !g.is_empty())
            .collect();
        if out.generators.is_empty() {
            out.generators = (0..d).map(basis_vector).collect();
        }
        if let Some(action) = &self.action {
            let images = action
                .images
                .iter()
                .map(|row| {
                    keep.iter()
                        .map(|&j| row[j].iter().map(|(k, c)| (new_index[*k], c.clone())).collect())
                        .collect()
                })
                .collect::<Vec<Vec<Vector>>>();
            // only meaningful for elements preserving the chosen points
            out.action = Some(Action { group: action.group.clone(), images });
        }
        Ok((out, keep))
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut sc = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.mul_basis(i, j) {
                    sc.push((i, j, *k, c.to_json()));
                }
            }
        }
        let group = self
            .grading
            .as_ref()
            .map(|g| g.group.clone())
            .or_else(|| self.action.as_ref().map(|a| a.group.clone()))
            .map(|g| serde_json::to_value(crate::group::GroupJson::from_group(&g)).expect("serializable"));
        AlgebraJson {
            dim: self.dim,
            unit: UnitJson::Vector(self.unit.iter().map(|(k, c)| (*k, c.to_json())).collect()),
            sc,
            group,
            grading: self.grading.as_ref().map(|g| g.degree.clone()),
            action: self.action.as_ref().map(|a| ActionJson {
                images: a
                    .images
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .flat_map(|(j, v)| v.iter().map(move |(k, c)| (j, *k, c.to_json())))
                            .collect()
                    })
                    .collect(),
            }),
            fiber: self.fiber.clone(),
            labels: Some(self.labels.clone()),
        }
    }

    /// Parses and validates; `group` (or the supplied default) carries grading and action.
    pub fn from_json(j: &AlgebraJson, default_group: Option<Arc<FiniteGroup>>) -> Result<Self> {
        let d = j.dim;
        let mut products = vec![Vec::new(); d * d];
        for (i, jj, k, c) in &j.sc {
            if *i >= d || *jj >= d || *k >= d {
                return Err(Error::InvalidAlgebra(format!("structure constant ({i}, {jj}, {k}) out of range")));
            }
            let c = Cyclotomic::from_json(c)?;
            let mut acc: Vector = products[i * d + jj].iter().cloned().collect();
            sparse_axpy(&mut acc, &c, &[(*k, Cyclotomic::one())]);
            products[i * d + jj] = acc.into_iter().collect();
        }
        let unit = match &j.unit {
            UnitJson::Index(i) => basis_vector(*i),
            UnitJson::Vector(v) => {
                let mut u = Vector::new();
                for (k, c) in v {
                    sparse_axpy(&mut u, &Cyclotomic::from_json(c)?, &[(*k, Cyclotomic::one())]);
                }
                u
            }
        };
        let mut a = FinDimAlgebra::new(d, unit, products)?;
        if let Some(labels) = &j.labels {
            a = a.with_labels(labels.clone());
        }
        let group = match &j.group {
            Some(v) => Some(Arc::new(FiniteGroup::from_json_value(v)?)),
            None => default_group,
        };
        if let Some(f) = &j.fiber {
            a = a.with_fiber(f.clone())?;
        }
        if let Some(deg) = &j.grading {
            let group = group.clone().ok_or_else(|| Error::InvalidAlgebra("grading without a group".into()))?;
            a = a.with_grading(Grading { group, degree: deg.clone() })?;
        }
        if let Some(act) = &j.action {
            let group = group.ok_or_else(|| Error::InvalidAlgebra("action without a group".into()))?;
            let mut images = vec![vec![Vector::new(); d]; group.order()];
            if act.images.len() != group.order() {
                return Err(Error::InvalidAlgebra("one image list per group element is required".into()));
            }
            for (g, row) in act.images.iter().enumerate() {
                for (jj, k, c) in row {
                    if *jj >= d || *k >= d {
                        return Err(Error::InvalidAlgebra("action entry out of range".into()));
                    }
                    sparse_axpy(&mut images[g][*jj], &Cyclotomic::from_json(c)?, &[(*k, Cyclotomic::one())]);
                }
            }
            a = a.with_action(Action { group, images })?;
        }
        Ok(a)
    }

    pub fn parse(text: &str, default_group: Option<Arc<FiniteGroup>>) -> Result<Self> {
        let j: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j, default_group)
    }
}

#[derive(Clone, Debug)]
pub struct Hh0 {
    pub dim: usize,
    /// Basis vectors whose classes form a basis of `A/[A,A]`.
    pub quotient_basis: Vec<usize>,
    /// Dimension per conjugacy class of degrees (class representative, dimension).
    pub by_class: Option<Vec<(usize, usize)>>,
    pub commutators: EchelonBasis<Cyclotomic>,
}

impl Hh0 {
    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Residual of `v` modulo `[A,A]`.
    pub fn reduce(&self, v: &Vector) -> Vector {
        self.commutators.reduce(v)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitJson {
    Index(usize),
    Vector(Vec<(usize, CyclotomicJson)>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionJson {
    /// Per group element, entries `(j, k, c)`: `g(b_j)` has coefficient `c` on `b_k`.
    pub images: Vec<Vec<(usize, usize, CyclotomicJson)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub unit: UnitJson,
    pub sc: Vec<(usize, usize, usize, CyclotomicJson)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_algebras() {
        let m2 = FinDimAlgebra::matrix_algebra(2);
        m2.check_associative().unwrap();
        m2.check_unit().unwrap();
        assert_eq!(m2.center().len(), 1);
        assert_eq!(m2.hh0().dimension(), 1);
        let f = FinDimAlgebra::functions(3);
        assert_eq!(f.center().len(), 3);
        assert_eq!(f.hh0().dimension(), 3);
        let u = FinDimAlgebra::upper_triangular(2);
        u.check_associative().unwrap();
        assert_eq!(u.hh0().dimension(), 2);
    }

    #[test]
    fn hh0_is_additive() {
        let a = FinDimAlgebra::matrix_algebra(2);
        let b = FinDimAlgebra::upper_triangular(3);
        let s = a.direct_sum(&b);
        s.check_associative().unwrap();
        assert_eq!(s.hh0().dimension(), a.hh0().dimension() + b.hh0().dimension());
        let t = a.tensor(&FinDimAlgebra::matrix_algebra(2));
        t.check_associative().unwrap();
        assert_eq!(t.center().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let a = FinDimAlgebra::upper_triangular(2);
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let b = FinDimAlgebra::parse(&text, None).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.hh0().dimension(), 2);
        let bad = r#"{"dim":2,"unit":0,"sc":[[0,0,0,{"conductor":1,"coeffs":["1"]}],[1,1,1,{"conductor":1,"coeffs":["1"]}]]}"#;
        assert!(matches!(FinDimAlgebra::parse(bad, None), Err(Error::InvalidAlgebra(_))));
    }
}
