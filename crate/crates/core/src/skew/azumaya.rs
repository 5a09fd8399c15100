//! Skew group algebras, equivariant matrix bundles over G-sets, graded centers and the
//! degree-0 twisted decomposition of `HH_0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::algebra::{add, basis_vector, scale, Action, FinDimAlgebra, Grading, Vector};
use super::cocycle::CocycleTable;
use crate::arith::cyclotomic::{Cyclotomic, CyclotomicJson};
use crate::arith::field::{self, EchelonBasis, Field, Mat};
use crate::error::{Error, Result};
use crate::group::{centralizer, conjugacy_classes, Subgroup};
use crate::gset::GSet;

/// `A#σ` for a subgroup `σ` of the acting group: basis `b_i u_s ↦ i·|σ| + pos(s)`,
/// `(a u_s)(b u_t) = a·s(b) u_{st}`, graded by `σ` (as a group on positions).
pub fn skew_group_algebra_over(a: &FinDimAlgebra, sigma: &Subgroup) -> Result<FinDimAlgebra> {
    let action = a.action().ok_or_else(|| Error::InvalidAlgebra("algebra has no group action".into()))?;
    let g = &action.group;
    let sg = Arc::new(sigma.as_group(g));
    let m = sigma.order();
    let d = a.dim();
    let dim = d * m;
    let mut products = vec![Vec::new(); dim * dim];
    for i in 0..d {
        for (p, &s) in sigma.elements().iter().enumerate() {
            for j in 0..d {
                let sb = &action.images[s][j];
                let prod = a.mul(&basis_vector(i), sb);
                for (q, _) in sigma.elements().iter().enumerate() {
                    let st = sg.mul(p, q);
                    products[(i * m + p) * dim + j * m + q] = prod.iter().map(|(k, c)| (k * m + st, c.clone())).collect();
                }
            }
        }
    }
    let unit: Vector = a.unit().iter().map(|(k, c)| (k * m, c.clone())).collect();
    let labels = a
        .labels()
        .iter()
        .flat_map(|l| sigma.elements().iter().map(move |s| format!("{l}·u{s}")))
        .collect();
    let mut out = FinDimAlgebra::raw(dim, unit.clone(), products, labels);
    let mut gens: Vec<Vector> = a.generators().iter().map(|v| v.iter().map(|(k, c)| (k * m, c.clone())).collect()).collect();
    for p in sg.generators() {
        gens.push(a.unit().iter().map(|(k, c)| (k * m + p, c.clone())).collect());
    }
    out.set_generators(gens);
    out.set_grading_unchecked(Grading { group: sg, degree: (0..dim).map(|x| x % m).collect() });
    Ok(out)
}

/// `A#G` for the whole acting group.
pub fn skew_group_algebra(a: &FinDimAlgebra) -> Result<FinDimAlgebra> {
    let g = a.action().ok_or_else(|| Error::InvalidAlgebra("algebra has no group action".into()))?.group.clone();
    skew_group_algebra_over(a, &g.whole())
}

/// `c·(b u_s) = c(b) u_{csc⁻¹}` on `A#σ` for `c` normalizing `σ`.
fn conjugate_in_skew(a: &FinDimAlgebra, sigma: &Subgroup, c: usize, v: &Vector) -> Vector {
    let action = a.action().expect("action");
    let g = &action.group;
    let m = sigma.order();
    let mut out = Vector::new();
    for (k, x) in v {
        let (i, p) = (k / m, k % m);
        let s = sigma.elements()[p];
        let q = sigma.position(g.conj(c, s)).expect("c normalizes σ");
        for (j, y) in &action.images[c][i] {
            field::sparse_axpy(&mut out, &x.mul_ref(y), &[(j * m + q, Cyclotomic::one())]);
        }
    }
    out
}

/// How the group acts on the fibers `M_r` of `Map(X, M_r)`.
#[derive(Clone, Debug)]
pub enum ProjectiveAction {
    /// Permutation of points only.
    Trivial,
    /// `P_g ∈ GL_r` for every group element, the same over every point.
    Uniform(Vec<Mat<Cyclotomic>>),
    /// `P_g(x)` for every group element and point.
    PerPoint(Vec<Vec<Mat<Cyclotomic>>>),
}

/// A G-equivariant bundle of matrix algebras over a finite G-set, as an algebra with fibers and action.
#[derive(Clone, Debug)]
pub struct AzumayaModel {
    pub gset: GSet,
    pub rank: Option<usize>,
    pub algebra: FinDimAlgebra,
}

impl AzumayaModel {
    /// Wraps an arbitrary algebra with fiber labels and a compatible action.
    pub fn from_algebra(gset: GSet, algebra: FinDimAlgebra) -> Result<Self> {
        let fiber = algebra.fiber().map(|f| f.to_vec()).unwrap_or_else(|| vec![0; algebra.dim()]);
        if fiber.iter().any(|&x| x >= gset.size()) {
            return Err(Error::InvalidAlgebra("fiber label outside the G-set".into()));
        }
        let algebra = if algebra.fiber().is_none() { algebra.with_fiber(fiber.clone())? } else { algebra };
        let action = algebra.action().ok_or_else(|| Error::InvalidAlgebra("algebra has no group action".into()))?;
        if action.group.raw_table() != gset.group().raw_table() {
            return Err(Error::InvalidAlgebra("action group differs from the G-set's group".into()));
        }
        for g in gset.group().elements() {
            for (j, img) in action.images[g].iter().enumerate() {
                if img.keys().any(|&k| fiber[k] != gset.act(g, fiber[j])) {
                    return Err(Error::NotAutomorphism(format!("element {g} does not cover the G-set action")));
                }
            }
        }
        Ok(AzumayaModel { gset, rank: None, algebra })
    }
}

fn mat_inverse(m: &Mat<Cyclotomic>) -> Result<Mat<Cyclotomic>> {
    field::inverse(m).ok_or_else(|| Error::NotAutomorphism("singular fiber matrix".into()))
}

/// `Map(X, M_r)` with `g(δ_x E) = δ_{gx} P_g(x) E P_g(x)⁻¹`; basis `δ_x E_ij ↦ x·r² + i·r + j`.
pub fn equivariant_azumaya(x: &GSet, r: usize, proj: &ProjectiveAction) -> Result<AzumayaModel> {
    let g = x.group_arc().clone();
    let n = g.order();
    let size = x.size();
    let r2 = r * r;
    let base = FinDimAlgebra::matrix_algebra(r);
    let mut alg = FinDimAlgebra::functions(size).tensor(&base);
    let fiber: Vec<usize> = (0..size * r2).map(|k| k / r2).collect();
    alg = alg.with_fiber(fiber)?;
    let p_of = |a: usize, p: usize| -> Result<Mat<Cyclotomic>> {
        Ok(match proj {
            ProjectiveAction::Trivial => field::identity(r),
            ProjectiveAction::Uniform(ms) => ms.get(a).cloned().ok_or_else(|| Error::InvalidArgument("missing matrix".into()))?,
            ProjectiveAction::PerPoint(ms) => ms
                .get(a)
                .and_then(|row| row.get(p))
                .cloned()
                .ok_or_else(|| Error::InvalidArgument("missing matrix".into()))?,
        })
    };
    let mut images = vec![vec![Vector::new(); size * r2]; n];
    for a in 0..n {
        for p in 0..size {
            let pm = p_of(a, p)?;
            if pm.len() != r || pm.iter().any(|row| row.len() != r) {
                return Err(Error::Dimension(format!("fiber matrices must be {r}×{r}")));
            }
            let pinv = mat_inverse(&pm)?;
            let q = x.act(a, p);
            for i in 0..r {
                for j in 0..r {
                    // P E_ij P⁻¹ = Σ_{k,l} P[k][i] P⁻¹[j][l] E_kl
                    let mut v = Vector::new();
                    for k in 0..r {
                        if pm[k][i].is_zero() {
                            continue;
                        }
                        for l in 0..r {
                            let c = pm[k][i].mul_ref(&pinv[j][l]);
                            if !c.is_zero() {
                                v.insert(q * r2 + k * r + l, c);
                            }
                        }
                    }
                    images[a][p * r2 + i * r + j] = v;
                }
            }
        }
    }
    let alg = alg.with_action(Action { group: g, images })?;
    Ok(AzumayaModel { gset: x.clone(), rank: Some(r), algebra: alg })
}

/// `ρ(g) e_h = α(g,h) e_{gh}`: a projective representation with cocycle `α`.
pub fn regular_projective(alpha: &CocycleTable) -> Vec<Mat<Cyclotomic>> {
    let g = alpha.group();
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut m = vec![vec![Cyclotomic::zero(); n]; n];
            for h in 0..n {
                m[g.mul(a, h)][h] = alpha.alpha(a, h);
            }
            m
        })
        .collect()
}

/// Pauli matrices on `C2xC2` (elements `(a, b) ↦ 2a + b`): `X` for `(1,0)`, `Z` for `(0,1)`.
pub fn pauli() -> Vec<Mat<Cyclotomic>> {
    let c = |v: i64| Cyclotomic::from_int(v);
    let id = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
    let z = vec![vec![c(1), c(0)], vec![c(0), c(-1)]];
    let xm = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
    let xz = field::mat_mul(&xm, &z, 2);
    vec![id, z, xm, xz]
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedCenterReport {
    pub sigma: Vec<usize>,
    pub fixed_points: Vec<usize>,
    /// Per element of σ, a basis of the degree component of the center (sparse, in `ℱ_σ#σ`).
    pub components: Vec<(usize, Vec<Vec<(usize, CyclotomicJson)>>)>,
    pub rank_one: bool,
    pub products_surjective: bool,
    pub skew_dim: usize,
    pub tensor_dim: usize,
    pub image_rank: usize,
    pub splitting: bool,
    pub witness: Option<String>,
}

impl GradedCenterReport {
    pub fn holds(&self) -> bool {
        self.rank_one && self.products_surjective && self.splitting
    }
}

fn to_json_vec(v: &Vector) -> Vec<(usize, CyclotomicJson)> {
    v.iter().map(|(k, c)| (*k, c.to_json())).collect()
}

fn span_rank(vs: impl IntoIterator<Item = Vector>) -> (usize, EchelonBasis<Cyclotomic>) {
    let mut eb = EchelonBasis::new(false);
    for v in vs {
        if !v.is_empty() {
            eb.insert(&v);
        }
    }
    (eb.rank(), eb)
}

/// Restriction of the model to `X^σ` and its skew algebra with `σ`.
fn restricted_skew(model: &AzumayaModel, sigma: &Subgroup) -> Result<(Vec<usize>, FinDimAlgebra, FinDimAlgebra)> {
    let fixed = model.gset.fixed_points(sigma);
    let (f_sigma, _) = model.algebra.restrict_to_points(&fixed)?;
    let skew = skew_group_algebra_over(&f_sigma, sigma)?;
    Ok((fixed, f_sigma, skew))
}

pub fn verify_strongly_graded(model: &AzumayaModel, sigma: &Subgroup) -> Result<GradedCenterReport> {
    let (fixed, f_sigma, skew) = restricted_skew(model, sigma)?;
    let m = sigma.order();
    let npts = fixed.len();
    let center = skew.graded_center()?;
    let mut witness = None;
    let rank_one = center.iter().all(|(p, basis)| {
        let ok = basis.len() == npts;
        if !ok && witness.is_none() {
            witness = Some(format!(
                "center component of degree {} has dimension {} ≠ |X^σ| = {npts}; basis {:?}",
                sigma.elements()[*p],
                basis.len(),
                basis.iter().map(to_json_vec).collect::<Vec<_>>()
            ));
        }
        ok
    });
    let grading = skew.grading().unwrap().group.clone();
    let mut products_surjective = rank_one;
    if rank_one {
        'outer: for p in 0..m {
            for q in 0..m {
                let pq = grading.mul(p, q);
                let prods = center[&p].iter().flat_map(|a| center[&q].iter().map(|b| skew.mul(a, b)).collect::<Vec<_>>());
                let (rank, _) = span_rank(prods);
                if rank != center[&pq].len() {
                    products_surjective = false;
                    witness.get_or_insert_with(|| {
                        format!("products of degrees {} and {} span {rank} < {}", sigma.elements()[p], sigma.elements()[q], center[&pq].len())
                    });
                    break 'outer;
                }
            }
        }
    }

    // ℱ_σ ⊗_{Map(X^σ)} 𝒵_σ → ℱ_σ#σ
    let fib = f_sigma.fiber().unwrap().to_vec();
    let all_center: Vec<Vector> = center.values().flatten().cloned().collect();
    let mut tensor_dim = 0;
    let mut images = Vec::new();
    for &x in &fixed {
        let fiber_basis: Vec<usize> = (0..f_sigma.dim()).filter(|&i| fib[i] == x).collect();
        let one_x: Vector = f_sigma.unit().iter().filter(|(k, _)| fib[**k] == x).map(|(k, c)| (k * m, c.clone())).collect();
        let (zdim, zx) = span_rank(all_center.iter().map(|z| skew.mul(&one_x, z)));
        tensor_dim += fiber_basis.len() * zdim;
        for z in zx.rows() {
            let z: Vector = z.iter().cloned().collect();
            for &i in &fiber_basis {
                images.push(skew.mul(&basis_vector(i * m), &z));
            }
        }
    }
    let (image_rank, _) = span_rank(images);
    let splitting = image_rank == tensor_dim && tensor_dim == skew.dim();
    if !splitting {
        witness.get_or_insert_with(|| format!("multiplication map has rank {image_rank}, tensor product dim {tensor_dim}, target dim {}", skew.dim()));
    }
    Ok(GradedCenterReport {
        sigma: sigma.elements().to_vec(),
        fixed_points: fixed,
        components: center.iter().map(|(p, b)| (sigma.elements()[*p], b.iter().map(to_json_vec).collect())).collect(),
        rank_one,
        products_surjective,
        skew_dim: skew.dim(),
        tensor_dim,
        image_rank,
        splitting,
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedHh0Report {
    pub lhs: usize,
    pub rhs: usize,
    /// Per conjugacy class: (representative, dim of the `HH_0` piece, dim of `(ℒ_g)^{C(g)}`).
    pub per_class: Vec<(usize, usize, usize)>,
    /// Images of the invariant vectors are independent modulo commutators.
    pub explicit_iso: bool,
}

impl TwistedHh0Report {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.explicit_iso && self.per_class.iter().all(|(_, a, b)| a == b)
    }
}

/// `dim HH_0(Γ(ℱ)#G) = dim (⊕_g (𝒵_{⟨g⟩})_g)^G`, the right side via `⊕_{g ∈ G/∼} (ℒ_g)^{C(g)}`.
pub fn twisted_hh0_decomposition(model: &AzumayaModel) -> Result<TwistedHh0Report> {
    let g = model.gset.group_arc().clone();
    let n = g.order();
    let full = skew_group_algebra(&model.algebra)?;
    let hh = full.hh0();
    let by_class = hh.by_class.clone().unwrap_or_default();
    let cs = conjugacy_classes(&g);
    let mut per_class = Vec::new();
    let mut rhs = 0;
    let mut iso_images = Vec::new();
    for c in 0..cs.num_classes() {
        let a = cs.class_rep(c);
        let sigma = Subgroup::cyclic(&g, a);
        let (_, f_sigma, skew) = restricted_skew(model, &sigma)?;
        let m = sigma.order();
        let p = sigma.position(a).unwrap();
        let center = skew.graded_center()?;
        let lg = &center[&p];
        let k = lg.len();
        let mut inv_dim = 0;
        if k > 0 {
            let dense_basis: Vec<Vec<Cyclotomic>> = lg.iter().map(|v| field::to_dense(v, skew.dim())).collect();
            let cg = centralizer(&g, a);
            let cgroup = cg.as_group(&g);
            let mut stacked: Mat<Cyclotomic> = Vec::new();
            for pos in cgroup.generators() {
                let u = cg.elements()[pos];
                let imgs: Vec<Vec<Cyclotomic>> = lg.iter().map(|z| field::to_dense(&conjugate_in_skew(&f_sigma, &sigma, u, z), skew.dim())).collect();
                let coords = field::coords_in_basis(&dense_basis, &imgs)
                    .ok_or_else(|| Error::Internal("C(g) does not preserve the degree-g center".into()))?;
                // rows of (A_u − I): entry [r][j] = coords[j][r] − δ
                for r in 0..k {
                    stacked.push((0..k).map(|j| {
                        let v = coords[j][r].clone();
                        if r == j { v.sub(&Cyclotomic::one()) } else { v }
                    }).collect());
                }
            }
            let invariants = if stacked.is_empty() { field::identity(k) } else { field::nullspace(&stacked, k) };
            inv_dim = invariants.len();
            for w in invariants {
                let mut z = Vector::new();
                for (coef, l) in w.iter().zip(lg) {
                    z = add(&z, &scale(l, coef));
                }
                // into ℱ#G: ℱ_σ index keep[i], σ position → group element
                let keep: Vec<usize> = {
                    let fixed = model.gset.fixed_points(&sigma);
                    let fib = model.algebra.fiber().unwrap();
                    (0..model.algebra.dim()).filter(|&i| fixed.contains(&fib[i])).collect()
                };
                let lifted: Vector = z.iter().map(|(kk, c)| (keep[kk / m] * n + sigma.elements()[kk % m], c.clone())).collect();
                iso_images.push(hh.reduce(&lifted));
            }
        }
        rhs += inv_dim;
        let lhs_piece = by_class.iter().find(|(rep, _)| *rep == a).map_or(0, |(_, d)| *d);
        per_class.push((a, lhs_piece, inv_dim));
    }
    let (rank, _) = span_rank(iso_images.clone());
    let explicit_iso = rank == iso_images.len() && rank == hh.dimension();
    Ok(TwistedHh0Report { lhs: hh.dimension(), rhs, per_class, explicit_iso })
}

/// `Map(X)` with the permutation action.
pub fn functions_on(x: &GSet) -> Result<AzumayaModel> {
    equivariant_azumaya(x, 1, &ProjectiveAction::Trivial)
}

/// Summary of the restriction to every cyclic subgroup class.
pub fn strongly_graded_all(model: &AzumayaModel) -> Result<BTreeMap<Vec<usize>, GradedCenterReport>> {
    let g = model.gset.group();
    crate::group::cyclic_subgroup_classes(g)
        .into_iter()
        .map(|c| verify_strongly_graded(model, &c.rep).map(|r| (c.rep.elements().to_vec(), r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::skew::cocycle::{alpha_regular_classes, h2_representatives, twisted_group_algebra};

    #[test]
    fn skew_examples() {
        let c2 = Arc::new(catalog("C2").unwrap());
        let swap = functions_on(&GSet::regular(c2.clone())).unwrap();
        let s = skew_group_algebra(&swap.algebra).unwrap();
        s.check_associative().unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.center().len(), 1);
        assert_eq!(s.hh0().dimension(), 1);
        // trivial action: A#G = A ⊗ k[G] on structure constants
        let a = FinDimAlgebra::matrix_algebra(2).with_fiber(vec![0; 4]).unwrap();
        let trivial = Action { group: c2.clone(), images: vec![(0..4).map(basis_vector).collect(); 2] };
        let a = a.with_action(trivial).unwrap();
        let s = skew_group_algebra(&a).unwrap();
        let t = FinDimAlgebra::matrix_algebra(2).tensor(&crate::skew::cocycle::group_algebra(c2));
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(s.mul_basis(i, j), t.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn pauli_point() {
        let k = Arc::new(catalog("C2xC2").unwrap());
        let model = equivariant_azumaya(&GSet::point(k.clone()), 2, &ProjectiveAction::Uniform(pauli())).unwrap();
        for (_, r) in strongly_graded_all(&model).unwrap() {
            assert!(r.holds(), "{r:?}");
        }
        let t = twisted_hh0_decomposition(&model).unwrap();
        assert!(t.holds(), "{t:?}");
        assert_eq!(t.lhs, 1);
    }

    #[test]
    fn conjugation_by_diag_on_m2() {
        let c2 = Arc::new(catalog("C2").unwrap());
        let c = |v: i64| Cyclotomic::from_int(v);
        let d = vec![vec![c(1), c(0)], vec![c(0), c(-1)]];
        let ident = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let model = equivariant_azumaya(&GSet::point(c2.clone()), 2, &ProjectiveAction::Uniform(vec![ident, d])).unwrap();
        let r = verify_strongly_graded(&model, &c2.whole()).unwrap();
        assert!(r.holds());
        assert_eq!(r.skew_dim, 8);
    }

    #[test]
    fn exchange_is_rejected() {
        let c2 = Arc::new(catalog("C2").unwrap());
        let alg = FinDimAlgebra::functions(2).with_fiber(vec![0, 0]).unwrap();
        let images = vec![vec![basis_vector(0), basis_vector(1)], vec![basis_vector(1), basis_vector(0)]];
        let alg = alg.with_action(Action { group: c2.clone(), images }).unwrap();
        let model = AzumayaModel::from_algebra(GSet::point(c2.clone()), alg).unwrap();
        let r = verify_strongly_graded(&model, &c2.whole()).unwrap();
        assert!(!r.holds());
        assert!(r.witness.is_some());
    }

    #[test]
    fn untwisted_and_regular_projective() {
        let c2 = Arc::new(catalog("C2").unwrap());
        let t = twisted_hh0_decomposition(&functions_on(&GSet::regular(c2)).unwrap()).unwrap();
        assert!(t.holds());
        assert_eq!(t.lhs, 1);
        let k = Arc::new(catalog("C2xC2").unwrap());
        for alpha in h2_representatives(k.clone(), 2).unwrap().representatives {
            let rho = regular_projective(&alpha);
            let model = equivariant_azumaya(&GSet::point(k.clone()), 4, &ProjectiveAction::Uniform(rho)).unwrap();
            let t = twisted_hh0_decomposition(&model).unwrap();
            assert!(t.holds());
            assert_eq!(t.lhs, alpha_regular_classes(&alpha).len());
            assert_eq!(t.lhs, twisted_group_algebra(&alpha).hh0().dimension());
        }
    }
}
