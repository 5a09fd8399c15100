//! `K_0([X/G]) = ⊕_{orbits} R(Stab)`, with its ring structure, `R(G)`-module structure and pull-backs.

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GMap, GSet, Orbit};
use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::field;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::repring::chartable::{character_table, CharacterTable};
use crate::repring::ring::{rational_form, restriction_to_subgroup, Owner, RepRingElement};
use crate::repring::vistoli::Mode;

#[derive(Debug)]
pub struct OrbitK0 {
    pub orbit: Orbit,
    pub stab_group: FiniteGroup,
    pub table: Arc<CharacterTable>,
    /// Basis of this orbit's summand in irreducible coordinates of the stabilizer.
    pub domain: Vec<Vec<BigRational>>,
    restriction: OnceLock<Result<Vec<Vec<BigRational>>>>,
}

impl OrbitK0 {
    pub fn num_irreducibles(&self) -> usize {
        self.table.num_classes()
    }

    /// `Res^G_{Stab}` on irreducible bases.
    pub fn restriction_from(&self, g_table: &CharacterTable) -> Result<&Vec<Vec<BigRational>>> {
        self.restriction
            .get_or_init(|| restriction_to_subgroup(g_table, &self.orbit.stabilizer))
            .as_ref()
            .map_err(|e| e.clone())
    }
}

/// Classes are vectors in concatenated irreducible coordinates of the stabilizers.
#[derive(Debug)]
pub struct EquivariantK0 {
    pub gset: GSet,
    pub mode: Mode,
    pub orbits: Vec<OrbitK0>,
    pub offsets: Vec<usize>,
    /// `(orbit, index within orbit)` of each point.
    pub location: Vec<(usize, usize)>,
}

pub fn equivariant_k0(x: &GSet, mode: Mode) -> Result<EquivariantK0> {
    let g = x.group();
    let mut location = vec![(0, 0); x.size()];
    let mut offsets = Vec::new();
    let mut off = 0;
    let orbits = x
        .orbits()
        .into_iter()
        .enumerate()
        .map(|(oi, orbit)| {
            for (i, &p) in orbit.points.iter().enumerate() {
                location[p] = (oi, i);
            }
            let stab_group = orbit.stabilizer.as_group(g);
            let table = character_table(&stab_group)?;
            let domain = match mode {
                Mode::Split => field::identity(table.num_classes()),
                Mode::Rational => {
                    let rf = rational_form(&table);
                    (0..rf.rank()).map(|i| rf.basis_vector(i)).collect()
                }
            };
            offsets.push(off);
            off += table.num_classes();
            Ok(OrbitK0 { orbit, stab_group, table, domain, restriction: OnceLock::new() })
        })
        .collect::<Result<Vec<_>>>()?;
    offsets.push(off);
    Ok(EquivariantK0 { gset: x.clone(), mode, orbits, offsets, location })
}

impl EquivariantK0 {
    pub fn rank(&self) -> usize {
        self.orbits.iter().map(|o| o.domain.len()).sum()
    }

    /// Length of a class vector.
    pub fn coord_len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn block<'a>(&self, v: &'a [BigRational], orbit: usize) -> &'a [BigRational] {
        &v[self.offsets[orbit]..self.offsets[orbit + 1]]
    }

    /// The domain basis as class vectors, orbit by orbit.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        let len = self.coord_len();
        let mut out = Vec::new();
        for (oi, o) in self.orbits.iter().enumerate() {
            for d in &o.domain {
                let mut v = vec![BigRational::zero(); len];
                v[self.offsets[oi]..self.offsets[oi + 1]].clone_from_slice(d);
                out.push(v);
            }
        }
        out
    }

    pub fn one(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.coord_len()];
        for oi in 0..self.orbits.len() {
            v[self.offsets[oi]] = BigRational::one();
        }
        v
    }

    /// Orbit-wise product.
    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.coord_len());
        for (oi, o) in self.orbits.iter().enumerate() {
            out.extend(o.table.mul_coords(self.block(a, oi), self.block(b, oi)));
        }
        out
    }

    /// Classes of the stabilizer at `x`, transported from the orbit representative:
    /// for `χ` at the representative, the class at `w·rep` is `s ↦ χ(w⁻¹ s w)`.
    /// Returned as the element `w⁻¹ s w` of the representative's stabilizer.
    pub fn transport(&self, x: usize, s: usize) -> (usize, usize) {
        let g = self.gset.group();
        let (oi, i) = self.location[x];
        let w = self.orbits[oi].orbit.witness[i];
        (oi, g.mul(g.mul(g.inv(w), s), w))
    }
}

/// `V·ξ = Res^G_{Stab}(V)·ξ` orbit by orbit.
pub fn rg_action(k0: &EquivariantK0, v: &RepRingElement, xi: &[BigRational]) -> Result<Vec<BigRational>> {
    let g = k0.gset.group();
    if v.owner != Owner::of_group(g) {
        return Err(Error::OwnerMismatch("representation of a different group".into()));
    }
    if xi.len() != k0.coord_len() {
        return Err(Error::Dimension(format!("class of length {} for K_0 of length {}", xi.len(), k0.coord_len())));
    }
    let gt = character_table(g)?;
    let mut out = Vec::with_capacity(xi.len());
    for (oi, o) in k0.orbits.iter().enumerate() {
        let res = field::mat_vec(o.restriction_from(&gt)?, &v.coords);
        out.extend(o.table.mul_coords(&res, k0.block(xi, oi)));
    }
    Ok(out)
}

/// `f^*: K_0([Y/G]) → K_0([X/G])` as a matrix on concatenated irreducible coordinates.
pub fn pullback(map: &GMap, kx: &EquivariantK0, ky: &EquivariantK0) -> Result<Vec<Vec<BigRational>>> {
    if kx.gset != map.source || ky.gset != map.target {
        return Err(Error::InvalidArgument("K_0 data does not match the map".into()));
    }
    let mut out = vec![vec![BigRational::zero(); ky.coord_len()]; kx.coord_len()];
    for (oi, o) in kx.orbits.iter().enumerate() {
        let y = map.f[o.orbit.rep];
        let (yo, _) = ky.location[y];
        let target = &ky.orbits[yo];
        let ht = &o.table;
        // w⁻¹ h w in the target stabilizer, per class of the source stabilizer
        let images: Vec<usize> = (0..ht.num_classes())
            .map(|r| {
                let h = o.orbit.stabilizer.elements()[ht.classes().class_rep(r)];
                let (_, k) = ky.transport(y, h);
                let pos = target.orbit.stabilizer.position(k).expect("stabilizers are compatible");
                target.table.class_of(pos)
            })
            .collect();
        for psi in 0..target.num_irreducibles() {
            let f: Vec<Cyclotomic> = images.iter().map(|&c| target.table.value(psi, c).clone()).collect();
            for (j, c) in ht.decompose(&f).iter().enumerate() {
                let c = c
                    .as_rational()
                    .ok_or_else(|| Error::Internal(format!("irrational multiplicity {c}")))?;
                out[kx.offsets[oi] + j][ky.offsets[yo] + psi] = c;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, Subgroup};
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn ranks_of_examples() {
        let g = Arc::new(catalog("S3").unwrap());
        assert_eq!(equivariant_k0(&GSet::point(g.clone()), Mode::Split).unwrap().rank(), 3);
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let three = GSet::coset_space(g.clone(), &Subgroup::cyclic(&g, t));
        assert_eq!(equivariant_k0(&three, Mode::Split).unwrap().rank(), 2);
        assert_eq!(equivariant_k0(&GSet::regular(g.clone()), Mode::Split).unwrap().rank(), 1);
    }

    #[test]
    fn rg_action_examples() {
        let g = Arc::new(catalog("S3").unwrap());
        let gt = character_table(&g).unwrap();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let three = GSet::coset_space(g.clone(), &Subgroup::cyclic(&g, t));
        let k0 = equivariant_k0(&three, Mode::Split).unwrap();
        let two_dim = (0..3).find(|&i| gt.degrees()[i] == 2).unwrap();
        let v = RepRingElement::irreducible(&gt, two_dim);
        // Res to C2 of the 2-dim irreducible is 1 + sign
        let one = k0.one();
        assert_eq!(rg_action(&k0, &v, &one).unwrap(), vec![q(1), q(1)]);
        let triv = RepRingElement::one_of(&gt);
        for b in k0.basis() {
            assert_eq!(rg_action(&k0, &triv, &b).unwrap(), b);
        }
        let pt = equivariant_k0(&GSet::point(g.clone()), Mode::Split).unwrap();
        let reg = RepRingElement::regular(&gt);
        let got = rg_action(&pt, &reg, &pt.one()).unwrap();
        let expected: Vec<BigRational> = gt.degrees().iter().map(|&d| q(d as i64)).collect();
        assert_eq!(got, expected);
        let other = RepRingElement::one_of(&character_table(&catalog("C6").unwrap()).unwrap());
        assert!(matches!(rg_action(&pt, &other, &pt.one()), Err(Error::OwnerMismatch(_))));
    }

    #[test]
    fn pullback_to_point_is_restriction() {
        let g = Arc::new(catalog("D4").unwrap());
        let gt = character_table(&g).unwrap();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        let h = Subgroup::cyclic(&g, t);
        let m = GMap::coset_projection(g.clone(), &h, &g.whole()).unwrap();
        let kx = equivariant_k0(&m.source, Mode::Split).unwrap();
        let ky = equivariant_k0(&m.target, Mode::Split).unwrap();
        let p = pullback(&m, &kx, &ky).unwrap();
        assert_eq!(&p, kx.orbits[0].restriction_from(&gt).unwrap());
    }
}
