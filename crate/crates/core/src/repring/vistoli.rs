//! `R(G)_{1/n} ≅ ⊕_{σ ∈ φ/∼} R̃(σ)^{N(σ)}_{1/n}` via `⊕_σ e_σ ∘ Res^G_σ`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::chartable::{character_table, CharacterTable};
use super::cyclic;
use super::ring::{cyclic_orbits, rational_form, restriction_to_cyclic, RationalForm};
use crate::arith::field::{self, Mat};
use crate::arith::lattice::{localization_certificate, localized_basis, LatticeMap, LocalizationCertificate};
use crate::arith::localized::all_localized;
use crate::arith::numtheory::units_mod;
use crate::error::{Error, Result};
use crate::group::{cyclic_subgroup_classes, normalizer_action, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Split,
    Rational,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(Mode::Split),
            "rational" => Ok(Mode::Rational),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

/// Units acting on `χ_k` for the σ-summand: the image of `N(σ)`, or all of `(Z/m)^×` in rational mode.
pub fn acting_units(m: usize, normalizer_image: &[u64], mode: Mode) -> Vec<u64> {
    match mode {
        Mode::Split => normalizer_image.to_vec(),
        Mode::Rational => units_mod(m as u64).into_iter().map(|a| if m == 1 { 1 } else { a }).collect(),
    }
}

/// A `Z[1/n]`-basis (rows on `χ_k`) of `(e_σ R(σ)_{1/n})^U` for the given units `U`.
pub fn primitive_invariant_basis(m: usize, units: &[u64], n: u64) -> Vec<Vec<BigRational>> {
    let e = cyclic::e_prim(m);
    let spanning: Vec<Vec<BigRational>> = cyclic_orbits(m, units)
        .into_iter()
        .map(|orbit| {
            let mut v = vec![BigRational::zero(); m];
            for k in orbit {
                v[k] = BigRational::one();
            }
            cyclic::mul(&e, &v)
        })
        .collect();
    localized_basis(&spanning, m, n)
}

#[derive(Clone, Debug)]
pub struct SigmaSummand {
    pub rep: Subgroup,
    pub order: usize,
    pub generator: usize,
    pub normalizer_order: usize,
    pub action_image: Vec<u64>,
    /// Rows on `χ_k` spanning the summand over `Z[1/n]`.
    pub basis: Vec<Vec<BigRational>>,
    /// `m × k_G`: restriction to `σ` on irreducibles.
    pub restriction: Vec<Vec<BigRational>>,
}

impl SigmaSummand {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct VistoliDecomposition {
    pub order: usize,
    pub mode: Mode,
    /// Domain basis vectors in irreducible coordinates.
    pub domain: Vec<Vec<BigRational>>,
    pub summands: Vec<SigmaSummand>,
    pub map: LatticeMap,
    pub certificate: LocalizationCertificate,
    /// `ẽ_σ` in irreducible coordinates.
    pub tilde_idempotents: Vec<Vec<BigRational>>,
    pub ring_hom: bool,
    pub idempotents_sum_to_one: bool,
    pub idempotents_orthogonal: bool,
}

impl VistoliDecomposition {
    pub fn ranks(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.rank()).collect()
    }

    pub fn passes(&self) -> bool {
        self.certificate.invertible && self.ring_hom && self.idempotents_sum_to_one && self.idempotents_orthogonal
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = |v: &Vec<BigRational>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "order": self.order,
            "mode": self.mode,
            "summands": self.summands.iter().map(|s| serde_json::json!({
                "sigma": s.rep.elements(),
                "order": s.order,
                "rank": s.rank(),
                "normalizer_order": s.normalizer_order,
                "action_image": s.action_image,
            })).collect::<Vec<_>>(),
            "map": self.map.to_json(),
            "snf_diagonal": self.certificate.diagonal,
            "invertible": self.certificate.invertible,
            "tilde_idempotents": self.tilde_idempotents.iter().map(q).collect::<Vec<_>>(),
            "ring_hom": self.ring_hom,
        })
    }
}

/// Image of an irreducible-coordinate vector in `R(σ)` after `e_σ ∘ Res`.
pub fn primitive_image(s: &SigmaSummand, v: &[BigRational]) -> Vec<BigRational> {
    let res = field::mat_vec(&s.restriction, v);
    cyclic::mul(&cyclic::e_prim(s.order), &res)
}

/// Builds the σ-data shared by the decomposition and its G-set generalisation.
pub fn sigma_summands(g: &FiniteGroup, table: &CharacterTable, mode: Mode) -> Result<Vec<SigmaSummand>> {
    let n = g.order() as u64;
    cyclic_subgroup_classes(g)
        .into_iter()
        .map(|cls| {
            let act = normalizer_action(g, &cls.rep)?;
            let m = cls.rep.order();
            let image = act.image();
            let units = acting_units(m, &image, mode);
            Ok(SigmaSummand {
                order: m,
                generator: act.generator,
                normalizer_order: act.normalizer.order(),
                action_image: image,
                basis: primitive_invariant_basis(m, &units, n),
                restriction: restriction_to_cyclic(table, act.generator),
                rep: cls.rep,
            })
        })
        .collect()
}

pub fn vistoli_decompose(g: &FiniteGroup, mode: Mode) -> Result<VistoliDecomposition> {
    let table = character_table(g)?;
    let n = g.order() as u64;
    let k = table.num_classes();
    let rf: Option<RationalForm> = match mode {
        Mode::Split => None,
        Mode::Rational => Some(rational_form(&table)),
    };
    let domain: Vec<Vec<BigRational>> = match &rf {
        None => field::identity(k),
        Some(r) => (0..r.rank()).map(|i| r.basis_vector(i)).collect(),
    };
    let d = domain.len();
    let summands = sigma_summands(g, &table, mode)?;

    let mut rows: Mat<BigRational> = Vec::new();
    for s in &summands {
        let images: Vec<Vec<BigRational>> = domain.iter().map(|v| primitive_image(s, v)).collect();
        let coords = field::coords_in_basis(&s.basis, &images).ok_or_else(|| {
            Error::Certificate(format!("image of Res to σ = {:?} leaves its summand", s.rep.elements()))
        })?;
        for r in 0..s.rank() {
            rows.push((0..d).map(|c| coords[c][r].clone()).collect());
        }
    }
    let map = LatticeMap::new(rows, d)?;
    let certificate = localization_certificate(&map, n);
    let entries: Vec<BigRational> = map.matrix.iter().flatten().cloned().collect();
    if !all_localized(&entries, n) || !certificate.invertible {
        return Err(Error::Certificate(format!(
            "decomposition map of order-{n} group not invertible over Z[1/{n}]: {:?}\nmap: {:?}",
            certificate,
            map.to_json()
        )));
    }

    // ring homomorphism on all basis products
    let mul_domain = |i: usize, j: usize| -> Vec<BigRational> { table.mul_coords(&domain[i], &domain[j]) };
    let mut ring_hom = true;
    for i in 0..d {
        for j in i..d {
            let prod = mul_domain(i, j);
            for s in &summands {
                let lhs = primitive_image(s, &prod);
                let rhs = cyclic::mul(&primitive_image(s, &domain[i]), &field::mat_vec(&s.restriction, &domain[j]));
                if lhs != rhs {
                    ring_hom = false;
                }
            }
        }
    }

    // ẽ_σ = M^{-1}(unit of the σ-summand)
    let inv = field::inverse(&map.matrix)
        .ok_or_else(|| Error::Certificate("decomposition map is singular".into()))?;
    let mut tilde = Vec::new();
    let mut offset = 0;
    for s in &summands {
        let e = cyclic::e_prim(s.order);
        let unit = field::coords_in_basis(&s.basis, &[e])
            .ok_or_else(|| Error::Certificate("e_σ is not in its own summand".into()))?
            .remove(0);
        let mut target = vec![BigRational::zero(); map.codomain_rank];
        for (r, c) in unit.into_iter().enumerate() {
            target[offset + r] = c;
        }
        offset += s.rank();
        let z = field::mat_vec(&inv, &target);
        if !all_localized(&z, n) {
            return Err(Error::Certificate("ẽ_σ has coordinates outside Z[1/n]".into()));
        }
        let mut irr = vec![BigRational::zero(); k];
        for (zi, v) in z.iter().zip(&domain) {
            for c in 0..k {
                irr[c] += zi * &v[c];
            }
        }
        tilde.push(irr);
    }
    let mut one = vec![BigRational::zero(); k];
    one[0] = BigRational::one();
    let sum = tilde.iter().fold(vec![BigRational::zero(); k], |acc, t| acc.iter().zip(t).map(|(a, b)| a + b).collect());
    let idempotents_sum_to_one = sum == one;
    let mut idempotents_orthogonal = true;
    for (a, ta) in tilde.iter().enumerate() {
        for (b, tb) in tilde.iter().enumerate().skip(a) {
            let p = table.mul_coords(ta, tb);
            let expected = if a == b { ta.clone() } else { vec![BigRational::zero(); k] };
            idempotents_orthogonal &= p == expected;
        }
    }
    let out = VistoliDecomposition {
        order: g.order(),
        mode,
        domain,
        summands,
        map,
        certificate,
        tilde_idempotents: tilde,
        ring_hom,
        idempotents_sum_to_one,
        idempotents_orthogonal,
    };
    if !out.passes() {
        return Err(Error::Certificate(format!(
            "decomposition checks failed: ring_hom={} sum={} orthogonal={}",
            out.ring_hom, out.idempotents_sum_to_one, out.idempotents_orthogonal
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn split_ranks() {
        let ranks = |name: &str| vistoli_decompose(&catalog(name).unwrap(), Mode::Split).unwrap().ranks();
        assert_eq!(ranks("S3"), vec![1, 1, 1]);
        assert_eq!(ranks("C4"), vec![1, 1, 2]);
        assert_eq!(ranks("Q8"), vec![1, 1, 1, 1, 1]);
        assert_eq!(ranks("S4"), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn rational_ranks() {
        let v = vistoli_decompose(&catalog("C4").unwrap(), Mode::Rational).unwrap();
        assert_eq!(v.ranks(), vec![1, 1, 1]);
        let split = vistoli_decompose(&catalog("C4").unwrap(), Mode::Split).unwrap();
        // ẽ_σ are Galois invariant, so both modes produce the same idempotents
        assert_eq!(v.tilde_idempotents, split.tilde_idempotents);
    }

    #[test]
    fn whole_catalog_both_modes() {
        for name in crate::group::catalog_names(24) {
            let g = catalog(&name).unwrap();
            let split = vistoli_decompose(&g, Mode::Split).unwrap();
            let rational = vistoli_decompose(&g, Mode::Rational).unwrap();
            assert_eq!(split.tilde_idempotents, rational.tilde_idempotents, "{name}");
            assert_eq!(rational.summands.len(), rational.map.codomain_rank, "{name}");
        }
    }
}
