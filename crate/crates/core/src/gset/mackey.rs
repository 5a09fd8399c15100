//! `π' ∘ Res^G_σ ∘ Ind^G_σ ∘ ι' = [N(σ):σ]·id` on `R̃(σ)^{N(σ)}`, with its double-coset terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::field::{self, Mat};
use crate::error::{Error, Result};
use crate::group::{double_cosets, normalizer_action, FiniteGroup, Subgroup};
use crate::repring::chartable::character_table;
use crate::repring::cyclic;
use crate::repring::ring::{induction_from, restriction_to_cyclic};
use crate::repring::vistoli::primitive_invariant_basis;

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosetTerm {
    pub rep: usize,
    pub size: usize,
    pub in_normalizer: bool,
    pub intersection_order: usize,
    /// `e_σ` kills the term on the invariant summand.
    pub annihilated: bool,
    /// The term is the identity on the invariant summand.
    pub identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyReport {
    pub sigma: Vec<usize>,
    pub order: usize,
    pub index: usize,
    pub rank: usize,
    /// The composite on the summand basis, column `j` = image of basis vector `j`.
    pub composite: Vec<Vec<String>>,
    pub scalar_holds: bool,
    pub terms: Vec<DoubleCosetTerm>,
    /// Sum of the double-coset terms equals `Res ∘ Ind` computed from the character table.
    pub routes_agree: bool,
}

impl MackeyReport {
    pub fn holds(&self) -> bool {
        self.scalar_holds
            && self.routes_agree
            && self.terms.iter().all(|t| if t.in_normalizer { t.identity } else { t.annihilated })
    }
}

fn q(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `(1/|σ|) Σ_{x ∈ D, x⁻¹sx ∈ σ} f(x⁻¹sx)` on the basis `χ_k`, as an `m × m` matrix.
fn term_matrix(g: &FiniteGroup, t: usize, m: usize, elements: &[usize]) -> Result<Mat<BigRational>> {
    let mut exp_of = vec![usize::MAX; g.order()];
    let mut s = 0;
    for i in 0..m {
        exp_of[s] = i;
        s = g.mul(s, t);
    }
    // counts[k'][k][e]: coefficient of ζ^e in m²·C[k'][k]
    let mut counts = vec![vec![vec![0i64; m]; m]; m];
    let mut s = 0;
    for i in 0..m {
        for &x in elements {
            let c = g.mul(g.mul(g.inv(x), s), x);
            let j = exp_of[c];
            if j == usize::MAX {
                continue;
            }
            for kp in 0..m {
                for k in 0..m {
                    let e = (j * k + (m - i) * kp) % m;
                    counts[kp][k][e] += 1;
                }
            }
        }
        s = g.mul(s, t);
    }
    let denom = q(m * m);
    counts
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| {
                    Cyclotomic::from_exponents(m as u64, &c)
                        .as_rational()
                        .map(|r| r / &denom)
                        .ok_or_else(|| Error::Certificate("double-coset term is not rational".into()))
                })
                .collect()
        })
        .collect()
}

pub fn mackey_check(g: &FiniteGroup, sigma: &Subgroup) -> Result<MackeyReport> {
    let act = normalizer_action(g, sigma)?;
    let t = act.generator;
    let m = sigma.order();
    let n = g.order() as u64;
    let index = act.normalizer.order() / m;
    let basis = primitive_invariant_basis(m, &act.image(), n);
    let e = cyclic::e_prim(m);

    let table = character_table(g)?;
    let res = restriction_to_cyclic(&table, t);
    let ind = induction_from(&res);
    let ri = field::mat_mul(&res, &ind, m);

    let images: Vec<Vec<BigRational>> = basis.iter().map(|b| cyclic::mul(&e, &field::mat_vec(&ri, b))).collect();
    let coords = field::coords_in_basis(&basis, &images)
        .ok_or_else(|| Error::Certificate(format!("Res∘Ind leaves the summand for σ = {:?}", sigma.elements())))?;
    let scalar = q(index);
    let scalar_holds = coords
        .iter()
        .enumerate()
        .all(|(j, col)| col.iter().enumerate().all(|(i, c)| if i == j { *c == scalar } else { c.is_zero() }));

    let mut total: Mat<BigRational> = vec![vec![BigRational::zero(); m]; m];
    let mut terms = Vec::new();
    for d in double_cosets(g, sigma) {
        let c = term_matrix(g, t, m, &d.elements)?;
        for (tr, cr) in total.iter_mut().zip(&c) {
            for (a, b) in tr.iter_mut().zip(cr) {
                *a += b;
            }
        }
        let applied: Vec<Vec<BigRational>> = basis.iter().map(|b| field::mat_vec(&c, b)).collect();
        let annihilated = applied.iter().all(|v| cyclic::mul(&e, v).iter().all(|x| x.is_zero()));
        let identity = applied.iter().zip(&basis).all(|(v, b)| v == b);
        terms.push(DoubleCosetTerm {
            rep: d.rep,
            size: d.elements.len(),
            in_normalizer: act.normalizer.contains(d.rep),
            intersection_order: d.intersection.order(),
            annihilated,
            identity,
        });
    }
    Ok(MackeyReport {
        sigma: sigma.elements().to_vec(),
        order: m,
        index,
        rank: basis.len(),
        composite: coords.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect(),
        scalar_holds,
        terms,
        routes_agree: total == ri,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, catalog_names, cyclic_subgroup_classes};

    #[test]
    fn s3_scalars() {
        let g = catalog("S3").unwrap();
        for c in cyclic_subgroup_classes(&g) {
            let r = mackey_check(&g, &c.rep).unwrap();
            assert!(r.holds());
            let expected = match c.rep.order() {
                1 => 6,
                2 => 1,
                3 => 2,
                _ => unreachable!(),
            };
            assert_eq!(r.index, expected);
        }
    }

    #[test]
    fn whole_catalog() {
        for name in catalog_names(24) {
            let g = catalog(&name).unwrap();
            for c in cyclic_subgroup_classes(&g) {
                let r = mackey_check(&g, &c.rep).unwrap();
                assert!(r.holds(), "{name} {:?}", r);
                if g.is_abelian() {
                    assert_eq!(r.index, g.order() / c.rep.order());
                }
            }
        }
    }
}
