//! Elements of representation rings, restriction/induction, and Galois descent.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::chartable::{character_table, CharacterTable};
use super::cyclic;
use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::intmat::IntMatrix;
use crate::arith::lattice::{permutation_invariants, LatticeMap};
use crate::arith::localized::all_localized;
use crate::arith::numtheory::units_mod;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    /// `R(G)` on the irreducible basis of the cached character table.
    Group { order: usize, fingerprint: u64 },
    /// `R(C_m)` on the basis `χ_k`.
    Cyclic { m: usize },
}

impl Owner {
    pub fn of_group(g: &FiniteGroup) -> Self {
        let mut h = DefaultHasher::new();
        g.raw_table().hash(&mut h);
        Owner::Group { order: g.order(), fingerprint: h.finish() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepRingElement {
    pub owner: Owner,
    pub coords: Vec<BigRational>,
}

impl RepRingElement {
    /// Checks that every coordinate lies in `Z[1/n]`.
    pub fn new(owner: Owner, coords: Vec<BigRational>, n: u64) -> Result<Self> {
        if !all_localized(&coords, n) {
            return Err(Error::NotLocalized { value: format!("{coords:?}"), n });
        }
        Ok(RepRingElement { owner, coords })
    }

    pub fn one_of(table: &CharacterTable) -> Self {
        let mut coords = vec![BigRational::zero(); table.num_classes()];
        coords[0] = BigRational::one();
        RepRingElement { owner: Owner::of_group(table.group()), coords }
    }

    pub fn irreducible(table: &CharacterTable, i: usize) -> Self {
        let mut coords = vec![BigRational::zero(); table.num_classes()];
        coords[i] = BigRational::one();
        RepRingElement { owner: Owner::of_group(table.group()), coords }
    }

    /// The regular representation `Σ_χ χ(1) χ`.
    pub fn regular(table: &CharacterTable) -> Self {
        let coords = table.degrees().iter().map(|d| BigRational::from_integer(BigInt::from(*d))).collect();
        RepRingElement { owner: Owner::of_group(table.group()), coords }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.owner != other.owner {
            return Err(Error::OwnerMismatch("adding elements of different rings".into()));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(RepRingElement { owner: self.owner.clone(), coords })
    }

    pub fn mul(&self, other: &Self, table: Option<&CharacterTable>) -> Result<Self> {
        if self.owner != other.owner {
            return Err(Error::OwnerMismatch("multiplying elements of different rings".into()));
        }
        let coords = match (&self.owner, table) {
            (Owner::Cyclic { .. }, _) => cyclic::mul(&self.coords, &other.coords),
            (Owner::Group { .. }, Some(t)) if Owner::of_group(t.group()) == self.owner => {
                t.mul_coords(&self.coords, &other.coords)
            }
            _ => return Err(Error::OwnerMismatch("character table does not match element".into())),
        };
        Ok(RepRingElement { owner: self.owner.clone(), coords })
    }
}

fn rat(v: &Cyclotomic) -> Result<BigRational> {
    v.as_rational().ok_or_else(|| Error::Internal(format!("expected a rational multiplicity, got {v}")))
}

/// Restriction `R(G) → R(⟨t⟩)` on the bases (irreducibles) → (`χ_k`), `m × k`.
pub fn restriction_to_cyclic(table: &CharacterTable, t: usize) -> Vec<Vec<BigRational>> {
    let m = table.group().element_order(t);
    (0..m)
        .map(|k| {
            (0..table.num_classes())
                .map(|i| BigRational::from_integer(BigInt::from(table.cyclic_restriction_multiplicity(i, t, k))))
                .collect()
        })
        .collect()
}

/// Restriction from `G` to a subgroup `H` on irreducible bases (`k_H × k_G`).
pub fn restriction_to_subgroup(table: &CharacterTable, h: &Subgroup) -> Result<Vec<Vec<BigRational>>> {
    let g = table.group();
    let hg = h.as_group(g);
    let ht = character_table(&hg)?;
    let kh = ht.num_classes();
    let mut out = vec![vec![BigRational::zero(); table.num_classes()]; kh];
    for i in 0..table.num_classes() {
        let f: Vec<Cyclotomic> = (0..kh)
            .map(|r| {
                let x = h.elements()[ht.classes().class_rep(r)];
                table.value(i, table.class_of(x)).clone()
            })
            .collect();
        for (j, c) in ht.decompose(&f).iter().enumerate() {
            out[j][i] = rat(c)?;
        }
    }
    Ok(out)
}

/// Restriction between two subgroups `target ⊆ source` of `g`, on the irreducible bases of
/// their own character tables.
pub fn restriction(g: &FiniteGroup, source: &Subgroup, target: &Subgroup) -> Result<LatticeMap> {
    if !target.is_subset_of(source) {
        return Err(Error::NotSubgroup("target is not contained in source".into()));
    }
    let sg = source.as_group(g);
    let st = character_table(&sg)?;
    let positions: Vec<usize> = target.elements().iter().map(|&x| source.position(x).unwrap()).collect();
    let inner = Subgroup::new(&sg, positions)?;
    let m = restriction_to_subgroup(&st, &inner)?;
    LatticeMap::new(m, st.num_classes())
}

/// Induction is the transpose of restriction on irreducible bases (Frobenius reciprocity).
pub fn induction_from(res: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let rows = res.first().map_or(0, |r| r.len());
    (0..rows).map(|i| res.iter().map(|r| r[i].clone()).collect()).collect()
}

/// `R(G)_{1/n} ≅ R_l(G)^Γ_{1/n}`: Γ = `(Z/e)^×` permutes irreducibles by `χ ↦ χ∘(g ↦ g^a)`.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub units: Vec<u64>,
    /// `perms[u][i]`: image of irreducible `i` under the `u`-th unit.
    pub perms: Vec<Vec<usize>>,
    /// Γ-orbits of irreducibles, each sorted, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit sums as rows in irreducible coordinates (a saturated basis of the invariants).
    pub basis: IntMatrix,
}

impl RationalForm {
    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigRational> {
        self.basis.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect()
    }

    /// Coordinates on the orbit-sum basis of a Γ-invariant vector.
    pub fn coords_of(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        let c: Vec<BigRational> = self.orbits.iter().map(|o| v[o[0]].clone()).collect();
        for o in &self.orbits {
            if o.iter().any(|&i| v[i] != v[o[0]]) {
                return Err(Error::Internal("vector is not Galois invariant".into()));
            }
        }
        Ok(c)
    }

    /// Product of orbit sums `i`, `j` on the orbit-sum basis.
    pub fn mul_basis(&self, table: &CharacterTable, i: usize, j: usize) -> Result<Vec<BigRational>> {
        let p = table.mul_coords(&self.basis_vector(i), &self.basis_vector(j));
        self.coords_of(&p)
    }
}

pub fn rational_form(table: &CharacterTable) -> RationalForm {
    let e = table.conductor();
    let units = units_mod(e);
    let k = table.num_classes();
    let perms: Vec<Vec<usize>> =
        units.iter().map(|&a| (0..k).map(|i| table.galois_image(i, a as i64)).collect()).collect();
    let basis = permutation_invariants(&perms, k);
    let orbits = (0..basis.rows())
        .map(|r| (0..k).filter(|&i| !basis.get(r, i).is_zero()).collect())
        .collect();
    RationalForm { units, perms, orbits, basis }
}

/// Orbits of `(Z/m)^×` (optionally restricted to a subgroup of units) on the characters `χ_k`.
pub fn cyclic_orbits(m: usize, units: &[u64]) -> Vec<Vec<usize>> {
    let perms: Vec<Vec<usize>> =
        units.iter().map(|&a| (0..m).map(|k| (k as u64 * a % m as u64) as usize).collect()).collect();
    let b = permutation_invariants(&perms, m);
    (0..b.rows()).map(|r| (0..m).filter(|&i| !b.get(r, i).is_zero()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, cyclic_subgroup_classes};

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn restriction_examples() {
        let g = catalog("C4").unwrap();
        // Res^{C4}_{C2}(e_{C4}) = 0
        let e = cyclic::e_prim(4);
        assert!(cyclic::restrict(&e, 2).iter().all(|x| x.is_zero()));
        let whole = g.whole();
        let r = restriction(&g, &whole, &whole).unwrap();
        let id: Vec<Vec<BigRational>> = (0..4).map(|i| (0..4).map(|j| q(i64::from(i == j))).collect()).collect();
        assert_eq!(r.matrix, id);
        let s3 = catalog("S3").unwrap();
        let t = character_table(&s3).unwrap();
        let c3 = cyclic_subgroup_classes(&s3).pop().unwrap().rep;
        let gen = c3.cyclic_generator(&s3).unwrap();
        let res = restriction_to_cyclic(&t, gen);
        // 2-dim irreducible restricts to χ_1 + χ_2
        assert_eq!(res.iter().map(|row| row[2].clone()).collect::<Vec<_>>(), vec![q(0), q(1), q(1)]);
        let general = restriction_to_subgroup(&t, &c3).unwrap();
        assert_eq!(general.iter().map(|row| row[2].clone()).sum::<BigRational>(), q(2));
        assert!(restriction(&s3, &c3, &s3.whole()).is_err());
    }

    #[test]
    fn rational_form_ranks() {
        let rank = |name: &str| rational_form(&character_table(&catalog(name).unwrap()).unwrap()).rank();
        assert_eq!(rank("C3"), 2);
        assert_eq!(rank("S3"), 3);
        assert_eq!(rank("C4"), 3);
        let c4 = rational_form(&character_table(&catalog("C4").unwrap()).unwrap());
        assert_eq!(c4.orbits.iter().map(|o| o.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn element_ops() {
        let t = character_table(&catalog("S3").unwrap()).unwrap();
        let one = RepRingElement::one_of(&t);
        let v = RepRingElement::irreducible(&t, 2);
        assert_eq!(one.mul(&v, Some(&t)).unwrap(), v);
        let vv = v.mul(&v, Some(&t)).unwrap();
        assert_eq!(vv.coords, vec![q(1), q(1), q(1)]);
        let c = RepRingElement::new(Owner::Cyclic { m: 2 }, vec![q(1), q(1)], 2).unwrap();
        assert!(c.mul(&v, Some(&t)).is_err());
        assert!(RepRingElement::new(Owner::Cyclic { m: 2 }, vec![BigRational::new(1.into(), 3.into()), q(0)], 2).is_err());
    }
}
