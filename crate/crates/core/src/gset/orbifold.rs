//! `K_0([X/G])_{1/n} ≅ ⊕_σ (K_0(X^σ) ⊗ R̃(σ))^{N(σ)}` via `e_σ ∘ (pull-back to X^σ) ∘ Res`.

use num_rational::BigRational;
use num_traits::Zero;

use super::k0::{equivariant_k0, pullback, rg_action, EquivariantK0};
use super::{GMap, GSet};
use crate::arith::field;
use crate::arith::lattice::{localization_certificate, LatticeMap, LocalizationCertificate};
use crate::arith::localized::all_localized;
use crate::error::{Error, Result};
use crate::group::{cyclic_subgroup_classes, normalizer_action, NormalizerAction, Subgroup};
use crate::repring::cyclic;
use crate::repring::ring::{restriction_to_cyclic, Owner, RepRingElement};
use crate::repring::vistoli::{acting_units, primitive_invariant_basis, Mode, VistoliDecomposition};

/// One `N(σ)`-orbit of `X^σ`.
#[derive(Clone, Debug)]
pub struct FixedOrbit {
    pub rep: usize,
    /// Indices into the summand's `fixed_points`.
    pub members: Vec<usize>,
    /// `witness[i]·rep = members[i]`, elements of `N(σ)`.
    pub witness: Vec<usize>,
    pub units: Vec<u64>,
    /// Rows on `χ_k`: a `Z[1/n]`-basis of `(e_σ R(σ))^{U}` at the representative.
    pub basis: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug)]
pub struct OrbifoldSummand {
    pub sigma: Subgroup,
    pub order: usize,
    pub action: NormalizerAction,
    pub fixed_points: Vec<usize>,
    pub orbits: Vec<FixedOrbit>,
}

impl OrbifoldSummand {
    pub fn rank(&self) -> usize {
        self.orbits.iter().map(|o| o.basis.len()).sum()
    }
}

#[derive(Debug)]
pub struct OrbifoldDecomposition {
    pub k0: EquivariantK0,
    pub summands: Vec<OrbifoldSummand>,
    pub map: LatticeMap,
    pub certificate: LocalizationCertificate,
}

fn build_summand(x: &GSet, sigma: Subgroup, mode: Mode) -> Result<OrbifoldSummand> {
    let g = x.group();
    let n = g.order() as u64;
    let action = normalizer_action(g, &sigma)?;
    let m = sigma.order();
    let fixed_points = x.fixed_points(&sigma);
    let index_of = |p: usize| fixed_points.binary_search(&p).expect("N(σ) preserves X^σ");
    let mut seen = vec![false; fixed_points.len()];
    let mut orbits = Vec::new();
    for start in 0..fixed_points.len() {
        if seen[start] {
            continue;
        }
        let rep = fixed_points[start];
        let mut members = Vec::new();
        let mut witness = Vec::new();
        let mut stab_units = Vec::new();
        for (pos, &u) in action.normalizer.elements().iter().enumerate() {
            let i = index_of(x.act(u, rep));
            if i == start {
                stab_units.push(action.powers[pos]);
            }
            if !seen[i] {
                seen[i] = true;
                members.push(i);
                witness.push(u);
            }
        }
        stab_units.sort_unstable();
        stab_units.dedup();
        let units = acting_units(m, &stab_units, mode);
        let basis = primitive_invariant_basis(m, &units, n);
        orbits.push(FixedOrbit { rep, members, witness, units, basis });
    }
    Ok(OrbifoldSummand { sigma, order: m, action, fixed_points, orbits })
}

impl OrbifoldDecomposition {
    pub fn ranks(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.rank()).collect()
    }

    pub fn mode(&self) -> Mode {
        self.k0.mode
    }

    /// `e_σ Res_σ(ξ|_y)` for each `y ∈ X^σ`, on `χ_k`.
    pub fn ambient_image(&self, s: usize, xi: &[BigRational]) -> Vec<Vec<BigRational>> {
        ambient_image(&self.k0, &self.summands[s], xi)
    }

    /// Coordinates of `ξ` in the concatenated summand bases.
    pub fn apply(&self, xi: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut out = Vec::new();
        for s in &self.summands {
            out.extend(summand_coords(s, &ambient_image(&self.k0, s, xi))?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.k0.gset.group().order(),
            "size": self.k0.gset.size(),
            "mode": self.k0.mode,
            "k0_rank": self.k0.rank(),
            "summands": self.summands.iter().map(|s| serde_json::json!({
                "sigma": s.sigma.elements(),
                "order": s.order,
                "fixed_points": s.fixed_points,
                "rank": s.rank(),
                "normalizer_orbits": s.orbits.len(),
            })).collect::<Vec<_>>(),
            "map": self.map.to_json(),
            "snf_diagonal": self.certificate.diagonal,
            "invertible": self.certificate.invertible,
        })
    }
}

fn ambient_image(k0: &EquivariantK0, s: &OrbifoldSummand, xi: &[BigRational]) -> Vec<Vec<BigRational>> {
    let e = cyclic::e_prim(s.order);
    s.fixed_points
        .iter()
        .map(|&y| {
            let (oi, t) = k0.transport(y, s.action.generator);
            let o = &k0.orbits[oi];
            let pos = o.orbit.stabilizer.position(t).expect("σ fixes y");
            let res = field::mat_vec(&restriction_to_cyclic(&o.table, pos), k0.block(xi, oi));
            cyclic::mul(&e, &res)
        })
        .collect()
}

fn summand_coords(s: &OrbifoldSummand, ambient: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let m = s.order as u64;
    let mut out = Vec::new();
    for o in &s.orbits {
        let at_rep = &ambient[o.members[0]];
        let c = field::coords_in_basis(&o.basis, std::slice::from_ref(at_rep)).ok_or_else(|| {
            Error::Certificate(format!(
                "image at fixed point {} of σ = {:?} leaves the invariant summand",
                o.rep,
                s.sigma.elements()
            ))
        })?;
        for (&i, &u) in o.members.iter().zip(&o.witness) {
            let a = s.action.power_of(u).expect("witness in N(σ)");
            let expected = cyclic::permute_characters(at_rep, cyclic::unit_inverse(a, m));
            if ambient[i] != expected {
                return Err(Error::Certificate(format!(
                    "image is not N(σ)-invariant at fixed point {} for σ = {:?}",
                    s.fixed_points[i],
                    s.sigma.elements()
                )));
            }
        }
        out.extend(c.into_iter().next().unwrap());
    }
    Ok(out)
}

fn decompose_k0(k0: EquivariantK0) -> Result<OrbifoldDecomposition> {
    let x = k0.gset.clone();
    let g = x.group();
    let n = g.order() as u64;
    let summands = cyclic_subgroup_classes(g)
        .into_iter()
        .map(|c| build_summand(&x, c.rep, k0.mode))
        .collect::<Result<Vec<_>>>()?;
    let basis = k0.basis();
    let mut columns = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut col = Vec::new();
        for s in &summands {
            col.extend(summand_coords(s, &ambient_image(&k0, s, b))?);
        }
        columns.push(col);
    }
    let rows = summands.iter().map(|s| s.rank()).sum::<usize>();
    let matrix: Vec<Vec<BigRational>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let map = LatticeMap::new(matrix, basis.len())?;
    let certificate = localization_certificate(&map, n);
    let entries: Vec<BigRational> = map.matrix.iter().flatten().cloned().collect();
    if !all_localized(&entries, n) || !certificate.invertible {
        return Err(Error::Certificate(format!(
            "orbifold map not invertible over Z[1/{n}]\nG-set: {}\ncertificate: {:?}\nmap: {:?}",
            serde_json::to_string(&x.to_json()).unwrap_or_default(),
            certificate,
            map.to_json()
        )));
    }
    Ok(OrbifoldDecomposition { k0, summands, map, certificate })
}

pub fn orbifold_decompose(x: &GSet, mode: Mode) -> Result<OrbifoldDecomposition> {
    decompose_k0(equivariant_k0(x, mode)?)
}

/// `ẽ_σ` acting through the `R(G)`-module structure is the projection onto the σ-summand.
pub fn idempotent_consistency(dec: &OrbifoldDecomposition, vistoli: &VistoliDecomposition) -> Result<bool> {
    let g = dec.k0.gset.group();
    let n = g.order() as u64;
    if vistoli.summands.len() != dec.summands.len() {
        return Err(Error::InvalidArgument("decompositions of different groups".into()));
    }
    let mut offsets = vec![0];
    for s in &dec.summands {
        offsets.push(offsets.last().unwrap() + s.rank());
    }
    for (si, t) in vistoli.tilde_idempotents.iter().enumerate() {
        let e = RepRingElement::new(Owner::of_group(g), t.clone(), n)?;
        for b in dec.k0.basis() {
            let full = dec.apply(&b)?;
            let projected = dec.apply(&rg_action(&dec.k0, &e, &b)?)?;
            for (r, (p, f)) in projected.iter().zip(&full).enumerate() {
                let inside = offsets[si] <= r && r < offsets[si + 1];
                if (inside && p != f) || (!inside && !p.is_zero()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For a G-map `f: X → Y`, the pull-back commutes with the decomposition maps summand-wise.
pub fn functoriality_check(map: &GMap, mode: Mode) -> Result<bool> {
    let kx = equivariant_k0(&map.source, mode)?;
    let ky = equivariant_k0(&map.target, mode)?;
    let p = pullback(map, &kx, &ky)?;
    let dx = decompose_k0(kx)?;
    let dy = decompose_k0(ky)?;
    for b in dy.k0.basis() {
        let fb = field::mat_vec(&p, &b);
        for (si, (sx, sy)) in dx.summands.iter().zip(&dy.summands).enumerate() {
            let ax = dx.ambient_image(si, &fb);
            let ay = dy.ambient_image(si, &b);
            for (i, &xp) in sx.fixed_points.iter().enumerate() {
                let j = sy.fixed_points.binary_search(&map.f[xp]).expect("f(X^σ) ⊆ Y^σ");
                if ax[i] != ay[j] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::repring::vistoli::vistoli_decompose;
    use std::sync::Arc;

    #[test]
    fn s3_on_three_points() {
        let g = Arc::new(catalog("S3").unwrap());
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let x = GSet::coset_space(g.clone(), &Subgroup::cyclic(&g, t));
        let d = orbifold_decompose(&x, Mode::Split).unwrap();
        assert_eq!(d.ranks(), vec![1, 1, 0]);
        assert_eq!(d.k0.rank(), 2);
    }

    #[test]
    fn free_c2() {
        let g = Arc::new(catalog("C2").unwrap());
        let d = orbifold_decompose(&GSet::regular(g), Mode::Split).unwrap();
        assert_eq!(d.ranks(), vec![1, 0]);
    }

    #[test]
    fn point_matches_vistoli_for_catalog() {
        for name in crate::group::catalog_names(24) {
            let g = Arc::new(catalog(&name).unwrap());
            for mode in [Mode::Split, Mode::Rational] {
                let d = orbifold_decompose(&GSet::point(g.clone()), mode).unwrap();
                let v = vistoli_decompose(&g, mode).unwrap();
                assert_eq!(d.map, v.map, "{name} {mode:?}");
                assert!(idempotent_consistency(&d, &v).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn functoriality_of_coset_projections() {
        let g = Arc::new(catalog("S4").unwrap());
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let h = Subgroup::cyclic(&g, t);
        let k = crate::group::normalizer(&g, &h);
        let m = GMap::coset_projection(g.clone(), &h, &k).unwrap();
        let m2 = GMap::coset_projection(g.clone(), &g.trivial(), &h).unwrap();
        let both = m.disjoint_union(&m2).unwrap();
        for mode in [Mode::Split, Mode::Rational] {
            assert!(functoriality_check(&both, mode).unwrap());
        }
    }
}
