//! Character tables by the Burnside–Dixon method.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::cyclotomic::{Cyclotomic, CyclotomicJson};
use crate::arith::field::Field;
use crate::arith::numtheory::{mod_inv, mod_pow, prime_in_progression, root_of_unity_mod};
use crate::arith::modp::joint_eigenvectors;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ConjStructure, FiniteGroup};

#[derive(Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: ConjStructure,
    inverse_class: Vec<usize>,
    /// `power_class[r][a]`: class of `g_r^a` for `0 <= a < exponent`.
    power_class: Vec<Vec<usize>>,
    conductor: u64,
    degrees: Vec<usize>,
    values: Vec<Vec<Cyclotomic>>,
    /// `eigen_mults[i][r][k]`: multiplicity of `ζ_o^k` as an eigenvalue of `g_r`
    /// in the representation affording `χ_i`, `o` the order of `g_r`.
    eigen_mults: Vec<Vec<Vec<u32>>>,
    prime: u64,
    values_mod_p: Vec<Vec<u64>>,
    tensor: OnceLock<Vec<Vec<Vec<u32>>>>,
}

fn build(g: &FiniteGroup) -> Result<CharacterTable> {
    let n = g.order();
    let classes = conjugacy_classes(g);
    let k = classes.num_classes();
    let e = g.exponent() as u64;
    let reps: Vec<usize> = (0..k).map(|c| classes.class_rep(c)).collect();
    let sizes: Vec<u64> = (0..k).map(|c| classes.class_size(c) as u64).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&x| classes.class_of[g.inv(x)]).collect();
    let power_class: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let mut out = Vec::with_capacity(e as usize);
            let mut y = 0;
            for _ in 0..e {
                out.push(classes.class_of[y]);
                y = g.mul(y, x);
            }
            out
        })
        .collect();

    let p = prime_in_progression(1, e, 2 * n as u64);
    let z = root_of_unity_mod(p, e);

    // a[j][s][r] = #{x ∈ C_j : x⁻¹ z_r ∈ C_s}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (r, &zr) in reps.iter().enumerate() {
        for x in 0..n {
            let j = classes.class_of[x];
            let s = classes.class_of[g.mul(g.inv(x), zr)];
            a[j][s][r] += 1;
        }
    }
    let mats: Vec<Vec<Vec<u64>>> = a
        .iter()
        .skip(1)
        .map(|m| m.iter().map(|row| row.iter().map(|v| v % p).collect()).collect())
        .collect();
    let vecs = if k == 1 { vec![vec![1u64]] } else { joint_eigenvectors(&mats, k, p)? };
    if vecs.len() != k {
        return Err(Error::Internal(format!("found {} central characters for {k} classes", vecs.len())));
    }

    let nmod = n as u64 % p;
    let max_deg = (n as f64).sqrt().floor() as u64 + 1;
    let mut rows = Vec::with_capacity(k);
    for w in vecs {
        let w0 = w[0];
        if w0 == 0 {
            return Err(Error::Internal("central character vanishes at identity".into()));
        }
        let inv0 = mod_inv(w0, p).unwrap();
        let w: Vec<u64> = w.iter().map(|x| x * inv0 % p).collect();
        let s = (0..k).fold(0u64, |acc, r| {
            (acc + w[r] * w[inverse_class[r]] % p * mod_inv(sizes[r] % p, p).unwrap()) % p
        });
        let d2 = nmod * mod_inv(s, p).ok_or_else(|| Error::Internal("degenerate norm".into()))? % p;
        let d = (1..=max_deg)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Internal("no character degree lifts".into()))?;
        let chi: Vec<u64> = (0..k).map(|r| d * w[r] % p * mod_inv(sizes[r] % p, p).unwrap() % p).collect();
        let mut mults = Vec::with_capacity(k);
        for r in 0..k {
            let o = g.element_order(reps[r]) as u64;
            let zo = mod_pow(z, e / o, p);
            let inv_o = mod_inv(o % p, p).unwrap();
            let mut mu = Vec::with_capacity(o as usize);
            let mut total = 0;
            for kk in 0..o {
                let mut acc = 0u64;
                for l in 0..o {
                    let val = chi[power_class[r][l as usize]];
                    let root = mod_pow(zo, (o - (kk * l) % o) % o, p);
                    acc = (acc + val * root) % p;
                }
                let m = acc * inv_o % p;
                if m > d {
                    return Err(Error::Internal(format!("eigenvalue multiplicity {m} exceeds degree {d}")));
                }
                total += m;
                mu.push(m as u32);
            }
            if total != d {
                return Err(Error::Internal("eigenvalue multiplicities do not sum to degree".into()));
            }
            mults.push(mu);
        }
        rows.push((d as usize, chi, mults));
    }
    rows.sort_by(|x, y| {
        let nontrivial = |chi: &[u64]| chi.iter().any(|v| *v != 1);
        (x.0, nontrivial(&x.1), &x.2).cmp(&(y.0, nontrivial(&y.1), &y.2))
    });
    if rows.iter().map(|r| r.0 * r.0).sum::<usize>() != n {
        return Err(Error::Internal("squared degrees do not sum to the group order".into()));
    }
    let mut degrees = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    let mut eigen_mults = Vec::with_capacity(k);
    let mut values_mod_p = Vec::with_capacity(k);
    for (d, chi, mults) in rows {
        let vals = (0..k)
            .map(|r| {
                let o = g.element_order(reps[r]) as u64;
                let mut coeffs = vec![0i64; e as usize];
                for (kk, m) in mults[r].iter().enumerate() {
                    coeffs[(kk as u64 * (e / o)) as usize] += *m as i64;
                }
                Cyclotomic::from_exponents(e, &coeffs)
            })
            .collect();
        degrees.push(d);
        values.push(vals);
        eigen_mults.push(mults);
        values_mod_p.push(chi);
    }
    Ok(CharacterTable {
        group: g.clone(),
        classes,
        inverse_class,
        power_class,
        conductor: e,
        degrees,
        values,
        eigen_mults,
        prime: p,
        values_mod_p,
        tensor: OnceLock::new(),
    })
}

/// Character table of `g`, cached per multiplication table.
pub fn character_table(g: &FiniteGroup) -> Result<Arc<CharacterTable>> {
    static CACHE: OnceLock<RwLock<HashMap<Vec<u32>, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(g.raw_table()) {
        return Ok(t.clone());
    }
    let t = Arc::new(build(g)?);
    cache.write().unwrap().entry(g.raw_table().to_vec()).or_insert(t.clone());
    Ok(t)
}

impl CharacterTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjStructure {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.num_classes()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        (0..self.num_classes()).map(|c| self.classes.class_size(c)).collect()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.classes.class_of[x]
    }

    pub fn inverse_class(&self, r: usize) -> usize {
        self.inverse_class[r]
    }

    /// Class of `g_r^a`.
    pub fn power_class(&self, r: usize, a: i64) -> usize {
        self.power_class[r][a.rem_euclid(self.conductor as i64) as usize]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    /// Multiplicity of `χ_k` (`χ_k(t) = ζ_m^k`) in the restriction of `χ_i` to `⟨t⟩`, `m = ord(t)`.
    pub fn cyclic_restriction_multiplicity(&self, chi: usize, t: usize, k: usize) -> u32 {
        self.eigen_mults[chi][self.class_of(t)][k]
    }

    pub fn eigen_multiplicities(&self, chi: usize, class: usize) -> &[u32] {
        &self.eigen_mults[chi][class]
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `(1/|G|) Σ_g f(g) conj(h(g))` for class functions given per class.
    pub fn inner_product(&self, f: &[Cyclotomic], h: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for r in 0..self.num_classes() {
            if f[r].is_zero() || h[r].is_zero() {
                continue;
            }
            let term = f[r].mul_ref(&h[r].conj_complex());
            acc = acc.add_ref(&term.mul_ref(&Cyclotomic::from_int(self.classes.class_size(r) as i64)));
        }
        acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.group.order())))
    }

    /// Coordinates of a class function in the irreducible basis.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.values.iter().map(|chi| self.inner_product(f, chi)).collect()
    }

    /// Class function of a coordinate vector.
    pub fn class_function<F: Into<Cyclotomic> + Clone>(&self, coords: &[F]) -> Vec<Cyclotomic> {
        (0..self.num_classes())
            .map(|r| {
                coords.iter().enumerate().fold(Cyclotomic::zero(), |acc, (i, c)| {
                    let c: Cyclotomic = c.clone().into();
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&c.mul_ref(&self.values[i][r]))
                    }
                })
            })
            .collect()
    }

    /// `N[i][j][k] = ⟨χ_i χ_j, χ_k⟩`, recovered exactly from values modulo the Dixon prime.
    pub fn tensor_coefficients(&self) -> &Vec<Vec<Vec<u32>>> {
        self.tensor.get_or_init(|| {
            let k = self.num_classes();
            let p = self.prime;
            let inv_n = mod_inv(self.group.order() as u64 % p, p).unwrap();
            let sizes: Vec<u64> = (0..k).map(|r| self.classes.class_size(r) as u64).collect();
            let vm = &self.values_mod_p;
            let mut out = vec![vec![vec![0u32; k]; k]; k];
            for i in 0..k {
                for j in 0..k {
                    for l in 0..k {
                        let mut acc = 0u64;
                        for r in 0..k {
                            let v = vm[i][r] * vm[j][r] % p * vm[l][self.inverse_class[r]] % p;
                            acc = (acc + v * sizes[r]) % p;
                        }
                        out[i][j][l] = (acc * inv_n % p) as u32;
                    }
                }
            }
            out
        })
    }

    /// Product in `R(G)` in irreducible coordinates.
    pub fn mul_coords<F: Field>(&self, a: &[F], b: &[F]) -> Vec<F> {
        let t = self.tensor_coefficients();
        let k = self.num_classes();
        let mut out = vec![F::zero(); k];
        for i in 0..k {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].mul(&b[j]);
                for l in 0..k {
                    let c = t[i][j][l];
                    if c != 0 {
                        out[l] = out[l].add(&ab.mul(&F::from_int(c as i64)));
                    }
                }
            }
        }
        out
    }

    /// Index of the irreducible `χ ∘ (g ↦ g^a)`; `a` must be a unit mod the exponent.
    pub fn galois_image(&self, chi: usize, a: i64) -> usize {
        let k = self.num_classes();
        let target: Vec<u64> = (0..k).map(|r| self.values_mod_p[chi][self.power_class(r, a)]).collect();
        self.values_mod_p.iter().position(|row| *row == target).expect("Galois image is irreducible")
    }

    /// Exact orthogonality and degree checks.
    pub fn verify(&self) -> bool {
        let k = self.num_classes();
        let n: usize = self.degrees.iter().map(|d| d * d).sum();
        if n != self.group.order() {
            return false;
        }
        for i in 0..k {
            for j in 0..k {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                let expected = Cyclotomic::from_int(i64::from(i == j));
                if ip != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> CharacterTableJson {
        CharacterTableJson {
            order: self.group.order(),
            conductor: self.conductor,
            class_representatives: (0..self.num_classes()).map(|c| self.classes.class_rep(c)).collect(),
            class_sizes: self.class_sizes(),
            degrees: self.degrees.clone(),
            values: self.values.iter().map(|row| row.iter().map(|v| v.to_json()).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub order: usize,
    pub conductor: u64,
    pub class_representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<usize>,
    pub values: Vec<Vec<CyclotomicJson>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn small_tables() {
        let t = character_table(&catalog("C2").unwrap()).unwrap();
        assert_eq!(t.values()[1], vec![Cyclotomic::from_int(1), Cyclotomic::from_int(-1)]);
        assert_eq!(t.values()[0], vec![Cyclotomic::one(), Cyclotomic::one()]);
        let s3 = catalog("S3").unwrap();
        let t = character_table(&s3).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let three_cycle = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        assert_eq!(t.value(2, t.class_of(three_cycle)), &Cyclotomic::from_int(-1));
        let q8 = character_table(&catalog("Q8").unwrap()).unwrap();
        assert_eq!(q8.degrees(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn catalog_tables_are_orthogonal() {
        for name in crate::group::catalog_names(24) {
            let t = character_table(&catalog(&name).unwrap()).unwrap();
            assert!(t.verify(), "{name}");
            assert!(t.values()[0].iter().all(|v| v.is_one()));
        }
    }

    #[test]
    fn tensor_products_match_exact_inner_products() {
        let t = character_table(&catalog("S4").unwrap()).unwrap();
        let k = t.num_classes();
        let coeffs = t.tensor_coefficients();
        for i in 0..k {
            for j in 0..k {
                let prod: Vec<Cyclotomic> =
                    (0..k).map(|r| t.value(i, r).mul_ref(t.value(j, r))).collect();
                for l in 0..k {
                    let ip = t.inner_product(&prod, &t.values()[l]);
                    assert_eq!(ip, Cyclotomic::from_int(coeffs[i][j][l] as i64));
                }
            }
        }
    }
}
