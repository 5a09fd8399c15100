//! The split representation ring of a cyclic group `C_m`:
//! `Z[1/n][s]/(s^m - 1)` with `s^k = χ_k`, `χ_k(t^j) = ζ_m^{jk}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::field::{self, Field, Mat};
use crate::arith::localized::all_localized;
use crate::arith::numtheory::{cyclotomic_polynomial, divisors, euler_phi, gcd, mod_inv, prime_factors, ramanujan_sum, units_mod};
use crate::error::{Error, Result};
use crate::group::{generators_of, FiniteGroup, Subgroup};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Product in `F[s]/(s^m - 1)`.
pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let m = a.len();
    let mut out = vec![F::zero(); m];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                let k = (i + j) % m;
                out[k] = out[k].add(&x.mul(y));
            }
        }
    }
    out
}

pub fn unit<F: Field>(m: usize) -> Vec<F> {
    let mut v = vec![F::zero(); m];
    v[0] = F::one();
    v
}

/// `(Σ_{h ∈ ρ'} h)/|ρ'|` for the subgroup of order `d` of the dual group.
pub fn subgroup_average(m: usize, d: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); m];
    for i in 0..d {
        v[i * (m / d)] = q(1, d as i64);
    }
    v
}

/// `e_prim = Π (1 - e_{ρ'})` over the minimal nontrivial subgroups `ρ'` (prime order).
pub fn e_prim(m: usize) -> Vec<BigRational> {
    let mut e = unit::<BigRational>(m);
    for p in prime_factors(m as u64) {
        let avg = subgroup_average(m, p as usize);
        let factor: Vec<BigRational> = unit::<BigRational>(m).iter().zip(&avg).map(|(a, b)| a - b).collect();
        e = mul(&e, &factor);
    }
    e
}

/// `χ_k ↦ χ_{k·a}`, the action of the automorphism `t ↦ t^a` pulled back to characters.
pub fn permute_characters<F: Field>(v: &[F], a: u64) -> Vec<F> {
    let m = v.len();
    let mut out = vec![F::zero(); m];
    for (k, x) in v.iter().enumerate() {
        out[(k as u64 * a % m as u64) as usize] = x.clone();
    }
    out
}

/// Inverse of `a` modulo `m` (with `m = 1` handled).
pub fn unit_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        0
    } else {
        mod_inv(a % m, m).expect("unit")
    }
}

/// Restriction from `C_m` to its subgroup of order `d`, generated by `t^{m/d}`:
/// `χ_k ↦ χ'_{k mod d}`. Returned as a `d × m` matrix.
pub fn restriction_matrix(m: usize, d: usize) -> Result<Vec<Vec<BigRational>>> {
    if d == 0 || m % d != 0 {
        return Err(Error::NotSubgroup(format!("no subgroup of order {d} in C{m}")));
    }
    let mut r = vec![vec![BigRational::zero(); m]; d];
    for k in 0..m {
        r[k % d][k] = BigRational::one();
    }
    Ok(r)
}

pub fn restrict<F: Field>(v: &[F], d: usize) -> Vec<F> {
    let mut out = vec![F::zero(); d];
    for (k, x) in v.iter().enumerate() {
        out[k % d] = out[k % d].add(x);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    /// Index `j` of the factor `Φ_j`.
    pub j: u64,
    pub rank: usize,
    /// `rank × m`: image of `s^k` in `Z[1/n][x]/(Φ_j)` on the basis `x^i`.
    pub projection: Vec<Vec<BigRational>>,
    /// `m × rank`: `x^i ↦ s^i e_j`.
    pub section: Vec<Vec<BigRational>>,
    pub idempotent: Vec<BigRational>,
}

/// `Z[1/n][s]/(s^m - 1) ≅ ⊕_{j | m} Z[1/n][s]/(Φ_j(s))`, with verified projections and sections.
pub fn cyclic_group_ring_decomposition(m: usize, n: usize) -> Result<Vec<Component>> {
    if m == 0 || n % m != 0 {
        return Err(Error::NotDivisible { m: m as u64, n: n as u64 });
    }
    let mut comps = Vec::new();
    for j in divisors(m as u64) {
        let rank = euler_phi(j) as usize;
        let mut projection = vec![vec![BigRational::zero(); m]; rank];
        for k in 0..m {
            let red = reduce_mod_phi(k as u64, j);
            for i in 0..rank {
                projection[i][k] = BigRational::from_integer(BigInt::from(red[i]));
            }
        }
        let idempotent: Vec<BigRational> =
            (0..m).map(|k| q(ramanujan_sum(j, k as u64), m as i64)).collect();
        let mut section = vec![vec![BigRational::zero(); rank]; m];
        for i in 0..rank {
            let mut s_i = vec![BigRational::zero(); m];
            s_i[i % m] = BigRational::one();
            let col = mul(&s_i, &idempotent);
            for k in 0..m {
                section[k][i] = col[k].clone();
            }
        }
        comps.push(Component { j, rank, projection, section, idempotent });
    }
    verify_decomposition(m, n, &comps)?;
    Ok(comps)
}

/// `x^k mod Φ_j` with integer coefficients.
fn reduce_mod_phi(k: u64, j: u64) -> Vec<i64> {
    let phi = cyclotomic_polynomial(j);
    let deg = phi.len() - 1;
    let mut poly = vec![0i64; (k as usize + 1).max(deg)];
    poly[k as usize] = 1;
    for top in (deg..poly.len()).rev() {
        let c = poly[top];
        if c != 0 {
            for (i, pc) in phi.iter().enumerate() {
                poly[top - deg + i] -= c * pc;
            }
        }
    }
    poly.truncate(deg);
    poly
}

fn verify_decomposition(m: usize, n: usize, comps: &[Component]) -> Result<()> {
    let total: usize = comps.iter().map(|c| c.rank).sum();
    if total != m {
        return Err(Error::Internal("component ranks do not sum to m".into()));
    }
    for c in comps {
        let flat: Vec<BigRational> = c.section.iter().flatten().cloned().collect();
        if !all_localized(&flat, n as u64) || !all_localized(&c.idempotent, n as u64) {
            return Err(Error::Internal(format!("section of Φ_{} not over Z[1/{n}]", c.j)));
        }
        for d in comps {
            // projection_d ∘ section_c = δ_{cd} · id
            let prod = field::mat_mul(&d.projection, &c.section, c.rank);
            let expected: Mat<BigRational> = if c.j == d.j {
                field::identity(c.rank)
            } else {
                vec![vec![BigRational::zero(); c.rank]; d.rank]
            };
            if prod != expected {
                return Err(Error::Internal(format!("projection Φ_{} on section Φ_{} wrong", d.j, c.j)));
            }
        }
    }
    let sum = comps.iter().fold(vec![BigRational::zero(); m], |acc, c| {
        acc.iter().zip(&c.idempotent).map(|(a, b)| a + b).collect()
    });
    if sum != unit::<BigRational>(m) {
        return Err(Error::Internal("component idempotents do not sum to 1".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveIdempotent {
    pub m: usize,
    /// The subgroup of the ambient group, if known.
    pub sigma: Option<Subgroup>,
    /// Coordinates on `s^k = χ_k`.
    pub element: Vec<BigRational>,
}

/// `e_prim` for `C_m`, verified idempotent and mapped to `δ_{j,m}` under each `Φ_j` projection.
pub fn primitive_idempotent_cyclic(m: usize, n: usize) -> Result<PrimitiveIdempotent> {
    let comps = cyclic_group_ring_decomposition(m, n)?;
    let e = e_prim(m);
    if mul(&e, &e) != e {
        return Err(Error::Internal("e_prim is not idempotent".into()));
    }
    for c in &comps {
        let img = field::mat_vec(&c.projection, &e);
        let mut expected = vec![BigRational::zero(); c.rank];
        if c.j == m as u64 {
            expected[0] = BigRational::one();
        }
        if img != expected {
            return Err(Error::Internal(format!("e_prim projects wrongly to Φ_{}", c.j)));
        }
    }
    Ok(PrimitiveIdempotent { m, sigma: None, element: e })
}

pub fn primitive_idempotent(g: &FiniteGroup, sigma: &Subgroup, n: usize) -> Result<PrimitiveIdempotent> {
    if !sigma.is_cyclic(g) {
        return Err(Error::NotCyclic);
    }
    let mut e = primitive_idempotent_cyclic(sigma.order(), n)?;
    e.sigma = Some(sigma.clone());
    Ok(e)
}

/// Values `χ_k(t^j)` as the matrix `[j][k] = ζ_m^{jk}` (lower arrow of the character square).
pub fn character_matrix(m: usize) -> Mat<Cyclotomic> {
    (0..m)
        .map(|j| (0..m).map(|k| Cyclotomic::root_of_unity(m as u64, (j * k) as i64)).collect())
        .collect()
}

fn to_cyc(v: &[BigRational]) -> Vec<Cyclotomic> {
    v.iter().map(Cyclotomic::from_rational).collect()
}

/// Explicit matrices of `R(σ)_l ≅ Map(σ, l)` and `R̃(σ)_l ≅ Map(gen(σ), l)`.
#[derive(Clone, Debug)]
pub struct CharacterIso {
    pub m: usize,
    pub conductor: u64,
    /// Exponents `j` with `t^j` a generator.
    pub generators: Vec<usize>,
    /// `m × m`, rows indexed by `t^j`, columns by `χ_k`.
    pub lower: Mat<Cyclotomic>,
    /// `|gen| × φ(m)`, rows by generators, columns by the basis `e_σ s^i`, `i < φ(m)`.
    pub upper: Mat<Cyclotomic>,
    pub square_commutes: bool,
    pub supported_on_generators: bool,
    pub idempotent_is_indicator: bool,
    pub lower_invertible: bool,
    pub upper_invertible: bool,
    pub aut_compatible: bool,
}

impl CharacterIso {
    pub fn holds(&self) -> bool {
        self.square_commutes
            && self.supported_on_generators
            && self.idempotent_is_indicator
            && self.lower_invertible
            && self.upper_invertible
            && self.aut_compatible
    }
}

/// Builds and checks the commuting square for `C_m` over `Q(ζ_l)`, `m | l`.
pub fn character_iso(m: usize, l_conductor: u64) -> Result<CharacterIso> {
    if l_conductor % m as u64 != 0 {
        return Err(Error::NotDivisible { m: m as u64, n: l_conductor });
    }
    let phi = euler_phi(m as u64) as usize;
    let generators: Vec<usize> = (0..m).filter(|&j| gcd(j as u64, m as u64) == 1 || m == 1).collect();
    let lower = character_matrix(m);
    let e = to_cyc(&e_prim(m));
    let basis: Vec<Vec<Cyclotomic>> = (0..phi)
        .map(|i| {
            let mut s = vec![Cyclotomic::zero(); m];
            s[i] = Cyclotomic::one();
            mul(&s, &e)
        })
        .collect();
    let upper: Mat<Cyclotomic> = generators
        .iter()
        .map(|&j| (0..phi).map(|i| Cyclotomic::root_of_unity(m as u64, (i * j) as i64)).collect())
        .collect();
    let mut square_commutes = true;
    let mut supported = true;
    for (i, b) in basis.iter().enumerate() {
        let f = field::mat_vec(&lower, b);
        for j in 0..m {
            match generators.iter().position(|&g| g == j) {
                Some(row) => square_commutes &= f[j] == upper[row][i],
                None => supported &= f[j].is_zero(),
            }
        }
    }
    let fe = field::mat_vec(&lower, &e);
    let idempotent_is_indicator =
        (0..m).all(|j| fe[j] == Cyclotomic::from_int(i64::from(generators.contains(&j))));
    let lower_invertible = field::inverse(&lower).is_some();
    let upper_invertible = upper.len() == phi && field::inverse(&upper).is_some();
    // χ_{ka} evaluated at t^j equals χ_k at t^{ja}
    let mut aut_compatible = true;
    for a in units_mod(m as u64) {
        for k in 0..m {
            let ka = (k as u64 * a % m as u64) as usize;
            for j in 0..m {
                let ja = (j as u64 * a % m as u64) as usize;
                aut_compatible &= lower[j][ka] == lower[ja][k];
            }
        }
    }
    Ok(CharacterIso {
        m,
        conductor: l_conductor,
        generators,
        lower,
        upper,
        square_commutes,
        supported_on_generators: supported,
        idempotent_is_indicator,
        lower_invertible,
        upper_invertible,
        aut_compatible,
    })
}

/// `e_g = (1/m) Σ_k conj(χ_k(g)) χ_k` for `g = t^j`.
pub fn degree_idempotent_cyclic(m: usize, j: usize) -> Vec<Cyclotomic> {
    let inv_m = Cyclotomic::from_rational(&q(1, m as i64));
    (0..m)
        .map(|k| Cyclotomic::root_of_unity(m as u64, -((j * k) as i64)).mul_ref(&inv_m))
        .collect()
}

#[derive(Clone, Debug)]
pub struct DegreeIdempotent {
    pub element: usize,
    pub exponent: usize,
    pub coords: Vec<Cyclotomic>,
}

/// The degree idempotent of `g ∈ σ` in `l[σ^∨]`, with `t` the least-index generator of `σ`.
pub fn degree_idempotent(g: &FiniteGroup, sigma: &Subgroup, x: usize, n: usize) -> Result<DegreeIdempotent> {
    let m = sigma.order();
    if n % m != 0 {
        return Err(Error::NotDivisible { m: m as u64, n: n as u64 });
    }
    let t = sigma.cyclic_generator(g).ok_or(Error::NotCyclic)?;
    if !sigma.contains(x) {
        return Err(Error::NotInSubgroup(x));
    }
    let j = (0..m).find(|&j| g.pow(t, j as i64) == x).expect("x in ⟨t⟩");
    let coords = degree_idempotent_cyclic(m, j);
    Ok(DegreeIdempotent { element: x, exponent: j, coords })
}

/// Checks `Σ_{g ∈ gen(σ)} e_g = e_σ` and that each `e_g` is idempotent.
pub fn degree_idempotents_sum_to_primitive(g: &FiniteGroup, sigma: &Subgroup, n: usize) -> Result<bool> {
    let m = sigma.order();
    let mut sum = vec![Cyclotomic::zero(); m];
    for x in generators_of(g, sigma)? {
        let e = degree_idempotent(g, sigma, x, n)?.coords;
        if mul(&e, &e) != e {
            return Ok(false);
        }
        sum = sum.iter().zip(&e).map(|(a, b)| a.add_ref(b)).collect();
    }
    Ok(sum == to_cyc(&e_prim(m)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub m: usize,
    /// Idempotents of `Q[s]/(s^m - 1)`: subsets of the `Φ_j` components.
    pub rational_checked: usize,
    /// Idempotents of `l[s]/(s^m - 1)`: subsets of points of `σ` under the character isomorphism.
    pub split_checked: usize,
    pub holds: bool,
}

/// Every idempotent killed by all restrictions to proper subgroups is absorbed by `e_σ`.
pub fn maximality_check(m: usize) -> MaximalityReport {
    let comps = cyclic_group_ring_decomposition(m, m).expect("m | m");
    let e = e_prim(m);
    let proper: Vec<usize> = divisors(m as u64).into_iter().map(|d| d as usize).filter(|&d| d < m).collect();
    let mut holds = true;
    let subsets = 1usize << comps.len();
    for mask in 0..subsets {
        let mut f = vec![BigRational::zero(); m];
        for (i, c) in comps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                f = f.iter().zip(&c.idempotent).map(|(a, b)| a + b).collect();
            }
        }
        if mul(&f, &f) != f {
            holds = false;
        }
        let killed = proper.iter().all(|&d| restrict(&f, d).iter().all(|x| x.is_zero()));
        if killed && mul(&f, &e) != f {
            holds = false;
        }
    }
    // split level: an idempotent is the indicator of a set S of points t^a
    let mut split_checked = 0;
    if m <= 24 {
        let subgroup_masks: Vec<u64> = proper
            .iter()
            .map(|&d| (0..m).filter(|a| a % (m / d) == 0).fold(0u64, |acc, a| acc | 1 << a))
            .collect();
        let gen_mask = (0..m)
            .filter(|&a| gcd(a as u64, m as u64) == 1 || m == 1)
            .fold(0u64, |acc, a| acc | 1 << a);
        for s in 0u64..(1u64 << m) {
            split_checked += 1;
            if subgroup_masks.iter().all(|h| s & h == 0) && s & gen_mask != s {
                holds = false;
            }
        }
    }
    MaximalityReport { m, rational_checked: subsets, split_checked, holds }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_examples() {
        let ranks = |m: usize| -> Vec<usize> {
            cyclic_group_ring_decomposition(m, m).unwrap().iter().map(|c| c.rank).collect()
        };
        assert_eq!(ranks(2), vec![1, 1]);
        assert_eq!(ranks(4), vec![1, 1, 2]);
        assert_eq!(ranks(6), vec![1, 1, 2, 2]);
        let c2 = cyclic_group_ring_decomposition(2, 2).unwrap();
        // projections t ↦ ±1
        assert_eq!(c2[0].projection[0], vec![q(1, 1), q(1, 1)]);
        assert_eq!(c2[1].projection[0], vec![q(1, 1), q(-1, 1)]);
        assert_eq!(cyclic_group_ring_decomposition(4, 6), Err(Error::NotDivisible { m: 4, n: 6 }));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_idempotent_cyclic(2, 2).unwrap().element, vec![q(1, 2), q(-1, 2)]);
        assert_eq!(primitive_idempotent_cyclic(1, 1).unwrap().element, vec![q(1, 1)]);
        assert_eq!(
            primitive_idempotent_cyclic(4, 4).unwrap().element,
            vec![q(1, 2), q(0, 1), q(-1, 2), q(0, 1)]
        );
        // Res to C2 kills e_{C4}
        let e = e_prim(4);
        assert!(restrict(&e, 2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn idempotent_matches_ramanujan_component() {
        for m in 1..=24 {
            let comps = cyclic_group_ring_decomposition(m, m).unwrap();
            let top = comps.iter().find(|c| c.j == m as u64).unwrap();
            assert_eq!(top.idempotent, e_prim(m), "m = {m}");
        }
    }

    #[test]
    fn character_square_small() {
        let c2 = character_iso(2, 2).unwrap();
        assert!(c2.holds());
        assert_eq!(c2.generators, vec![1]);
        let c1 = character_iso(1, 1).unwrap();
        assert!(c1.holds());
        assert_eq!(character_iso(3, 3).unwrap().upper.len(), 2);
    }

    #[test]
    fn degree_idempotents_c2() {
        let e_t = degree_idempotent_cyclic(2, 1);
        assert_eq!(e_t, to_cyc(&[q(1, 2), q(-1, 2)]));
        let e_e = degree_idempotent_cyclic(2, 0);
        assert_eq!(e_e, to_cyc(&[q(1, 2), q(1, 2)]));
        let g = crate::group::catalog("C4").unwrap();
        assert!(degree_idempotents_sum_to_primitive(&g, &g.whole(), 4).unwrap());
    }

    #[test]
    fn maximality_small() {
        for m in 1..=12 {
            let r = maximality_check(m);
            assert!(r.holds, "m = {m}");
            assert_eq!(r.split_checked, 1 << m);
        }
    }
}
