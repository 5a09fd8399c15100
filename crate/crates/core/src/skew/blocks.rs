//! Jacobson radicals and simple-block counts under cyclotomic base change.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::algebra::{FinDimAlgebra, Vector};
use super::cocycle::{alpha_regular_classes, twisted_group_algebra, CocycleTable};
use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::field::{self, EchelonBasis, Field, Mat};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::repring::chartable::character_table;

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub dim: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    /// Conductors of the base field and its extension.
    pub fields: (u64, u64),
    pub blocks: (usize, usize),
    /// Rows: blocks over the extension; columns: blocks over the base field.
    pub inclusion: Vec<Vec<u32>>,
    pub injective: bool,
}

impl BlockReport {
    pub fn holds(&self) -> bool {
        self.injective && self.blocks.0 <= self.blocks.1 && self.blocks.1 <= self.center_dim
    }
}

/// Kernel of the trace form `(x, y) ↦ tr(L_{xy})`; in characteristic 0 this is the Jacobson radical.
pub fn radical(a: &FinDimAlgebra) -> Vec<Vector> {
    let n = a.dim();
    let traces: Vec<Cyclotomic> = (0..n)
        .map(|m| {
            let mut t = Cyclotomic::zero();
            for k in 0..n {
                if let Some((_, c)) = a.mul_basis(m, k).iter().find(|(i, _)| *i == k) {
                    t = t.add_ref(c);
                }
            }
            t
        })
        .collect();
    let gram: Mat<Cyclotomic> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Cyclotomic::zero();
                    for (m, c) in a.mul_basis(i, j) {
                        if !traces[*m].is_zero() {
                            s = s.add_ref(&c.mul_ref(&traces[*m]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    field::nullspace(&gram, n).into_iter().map(|v| field::to_sparse(&v)).collect()
}

/// `A/J(A)` on the non-pivot basis vectors of the radical.
pub fn semisimple_quotient(a: &FinDimAlgebra, rad: &[Vector]) -> Result<FinDimAlgebra> {
    let mut eb = EchelonBasis::new(false);
    for v in rad {
        eb.insert(v);
    }
    let pivots = eb.pivots();
    let keep: Vec<usize> = (0..a.dim()).filter(|i| pivots.binary_search(i).is_err()).collect();
    let mut pos = vec![usize::MAX; a.dim()];
    for (p, &k) in keep.iter().enumerate() {
        pos[k] = p;
    }
    let project = |v: &Vector| -> Vector { eb.reduce(v).into_iter().map(|(k, c)| (pos[k], c)).collect() };
    let d = keep.len();
    let mut products = Vec::with_capacity(d * d);
    for &i in &keep {
        for &j in &keep {
            let prod: Vector = a.mul_basis(i, j).iter().cloned().collect();
            products.push(project(&prod).into_iter().collect());
        }
    }
    let unit = project(a.unit());
    let q = FinDimAlgebra::new(d, unit, products)?;
    Ok(q)
}

/// Minimal polynomial of `L_z` on the algebra, coefficients low to high, monic.
fn minimal_polynomial(a: &FinDimAlgebra, z: &Vector) -> Vec<Cyclotomic> {
    let n = a.dim();
    let mut eb = EchelonBasis::new(true);
    let mut power = a.unit().clone();
    let mut k = 0;
    loop {
        if let Some(rel) = eb.insert(&power) {
            // Σ c_i z^i = 0 with c_k ≠ 0
            let mut coeffs = vec![Cyclotomic::zero(); k + 1];
            for (i, c) in rel {
                coeffs[i] = c;
            }
            let lead = coeffs[k].clone();
            let inv = Field::inv(&lead);
            return coeffs.iter().map(|c| c.mul_ref(&inv)).collect();
        }
        power = a.mul(&power, z);
        k += 1;
        debug_assert!(k <= n + 1);
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Number of distinct rational roots of a rational polynomial (low to high), `None` if too large to search.
fn rational_root_count(coeffs: &[BigRational]) -> Option<usize> {
    let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut count = 0;
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        count = 1;
    }
    if ints.len() == 1 {
        return Some(count);
    }
    let lead = ints.last().unwrap().clone();
    let ps = divisors(&ints[0])?;
    let qs = divisors(&lead)?;
    let mut roots = std::collections::BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let r = BigRational::new(p * sign, q.clone());
                let mut v = <BigRational as Zero>::zero();
                for c in ints.iter().rev() {
                    v = v * &r + BigRational::from_integer(c.clone());
                }
                if Zero::is_zero(&v) {
                    roots.insert(r);
                }
            }
        }
    }
    Some(count + roots.len())
}

/// Blocks of a general algebra: requires the center of `A/J(A)` to split over `ℚ`, which is
/// certified by every center basis element having a minimal polynomial with all roots rational.
pub fn simple_block_count(a: &FinDimAlgebra, from: u64, to: u64) -> Result<BlockReport> {
    check_fields(from, to)?;
    for c in a.unit().values().chain((0..a.dim() * a.dim()).flat_map(|k| a.mul_basis(k / a.dim(), k % a.dim()).iter().map(|(_, c)| c))) {
        if from % c.conductor() != 0 {
            return Err(Error::InvalidArgument(format!("structure constants need ℚ(ζ_{}) ⊄ ℚ(ζ_{from})", c.conductor())));
        }
    }
    let rad = radical(a);
    let q = semisimple_quotient(a, &rad)?;
    let center = q.center();
    for z in &center {
        let m = minimal_polynomial(&q, z);
        let rational: Option<Vec<BigRational>> = m.iter().map(|c| c.as_rational()).collect();
        let split = rational
            .and_then(|r| rational_root_count(&r).map(|k| k == r.len() - 1))
            .unwrap_or(false);
        if !split {
            return Err(Error::InvalidArgument(
                "center of the semisimple quotient is not certified split over ℚ; use a group algebra source".into(),
            ));
        }
    }
    let b = center.len();
    let inclusion: Vec<Vec<u32>> = (0..b).map(|i| (0..b).map(|j| u32::from(i == j)).collect()).collect();
    Ok(BlockReport {
        dim: a.dim(),
        radical_dim: rad.len(),
        center_dim: b,
        fields: (from, to),
        blocks: (b, b),
        injective: inclusion_injective(&inclusion, b),
        inclusion,
    })
}

fn check_fields(from: u64, to: u64) -> Result<()> {
    if from == 0 || to == 0 || to % from != 0 {
        return Err(Error::InvalidArgument(format!("ℚ(ζ_{from}) ⊄ ℚ(ζ_{to})")));
    }
    Ok(())
}

fn inclusion_injective(m: &[Vec<u32>], cols: usize) -> bool {
    let q: Mat<BigRational> = m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    field::rank(&q, cols) == cols
}

/// Central extension `μ_N ×_α G` with `(a, g)(b, h) = (a + b + c(g,h), gh)`, elements `a·|G| + g`.
pub fn central_extension(alpha: &CocycleTable) -> Result<FiniteGroup> {
    let g = alpha.group();
    let n = g.order();
    let nn = alpha.root_order() as usize;
    let table: Vec<Vec<usize>> = (0..nn * n)
        .map(|x| {
            (0..nn * n)
                .map(|y| {
                    let (a, gx) = (x / n, x % n);
                    let (b, hy) = (y / n, y % n);
                    ((a + b + alpha.exponent(gx, hy) as usize) % nn) * n + g.mul(gx, hy)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&table)
}

/// Linear characters of an abelian group as exponent vectors `χ(x) = ζ_e^{v[x]}`.
fn abelian_characters(g: &FiniteGroup) -> Vec<Vec<u64>> {
    let e = g.exponent() as u64;
    let gens = g.generators();
    let orders: Vec<u64> = gens.iter().map(|&x| g.element_order(x) as u64).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        if choice.iter().zip(&orders).all(|(a, o)| a * o % e == 0) {
            let mut val = vec![u64::MAX; g.order()];
            val[0] = 0;
            let mut queue = std::collections::VecDeque::from([0usize]);
            let mut ok = true;
            'bfs: while let Some(x) = queue.pop_front() {
                for (i, &s) in gens.iter().enumerate() {
                    let y = g.mul(x, s);
                    let v = (val[x] + choice[i]) % e;
                    if val[y] == u64::MAX {
                        val[y] = v;
                        queue.push_back(y);
                    } else if val[y] != v {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
            if ok {
                out.push(val);
            }
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < e {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            return out;
        }
    }
}

/// Galois orbits of the irreducible `α`-projective characters over `ℚ(ζ_f)` for each `f` given,
/// via the characters of the central extension on which `z = (1, e)` acts by `ζ_N`.
fn alpha_character_orbits(alpha: &CocycleTable, ext: &FiniteGroup, fields: &[u64]) -> Result<Vec<Vec<Vec<usize>>>> {
    let nn = alpha.root_order();
    let z = if nn == 1 { 0 } else { alpha.group().order() };
    let e = ext.exponent() as u64;
    let (total, chars, image): (usize, Vec<usize>, Box<dyn Fn(usize, i64) -> usize>) = if ext.is_abelian() {
        let lin = abelian_characters(ext);
        if lin.len() != ext.order() {
            return Err(Error::Internal("abelian group has the wrong number of characters".into()));
        }
        let chars = (0..lin.len()).filter(|&c| lin[c][z] == e / nn % e).collect();
        let index: std::collections::HashMap<Vec<u64>, usize> = lin.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let image = move |c: usize, a: i64| index[&lin[c].iter().map(|v| v * a as u64 % e).collect::<Vec<_>>()];
        (ext.order(), chars, Box::new(image))
    } else {
        let table = character_table(ext)?;
        let zc = table.class_of(z);
        let zeta = Cyclotomic::root_of_unity(nn, 1);
        let chars = (0..table.num_classes())
            .filter(|&chi| *table.value(chi, zc) == zeta.mul_ref(&Cyclotomic::from_int(table.degrees()[chi] as i64)))
            .collect();
        (table.num_classes(), chars, Box::new(move |c: usize, a: i64| table.galois_image(c, a)))
    };
    Ok(fields
        .iter()
        .map(|&f| {
            let step = e.gcd(&f);
            let units: Vec<i64> = (1..=e).filter(|a| a.gcd(&e) == 1 && a % step == 1 % step).map(|a| a as i64).collect();
            let mut seen = vec![false; total];
            let mut orbits = Vec::new();
            for &chi in &chars {
                if seen[chi] {
                    continue;
                }
                let mut orbit: Vec<usize> = units.iter().map(|&a| image(chi, a)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                for &x in &orbit {
                    seen[x] = true;
                }
                orbits.push(orbit);
            }
            orbits
        })
        .collect())
}

/// Blocks of `k_α[G]` over `ℚ(ζ_from) ⊆ ℚ(ζ_to)` by Galois orbits of projective characters,
/// cross-checked against the trace-form radical and the split count of `α`-regular classes.
pub fn twisted_block_count(alpha: &CocycleTable, from: u64, to: u64) -> Result<BlockReport> {
    check_fields(from, to)?;
    let nn = alpha.root_order();
    let step = (0..alpha.group().order())
        .flat_map(|g| (0..alpha.group().order()).map(move |h| (g, h)))
        .fold(nn, |acc, (g, h)| acc.gcd(&alpha.exponent(g, h)));
    let needed = nn / step.max(1).min(nn);
    if from % needed != 0 {
        return Err(Error::InvalidArgument(format!("cocycle values need ℚ(ζ_{needed}) ⊄ ℚ(ζ_{from})")));
    }
    let alg = twisted_group_algebra(alpha);
    let rad = radical(&alg);
    if !rad.is_empty() {
        return Err(Error::Internal(format!("twisted group algebra has a radical of dimension {}", rad.len())));
    }
    let ext = central_extension(alpha)?;
    let split_field = (ext.exponent() as u64).lcm(&to);
    let orbits = alpha_character_orbits(alpha, &ext, &[from, to, split_field])?;
    let (coarse, fine, split) = (&orbits[0], &orbits[1], &orbits[2]);
    let center_dim = alpha_regular_classes(alpha).len();
    if split.len() != center_dim || split.iter().any(|o| o.len() != 1) {
        return Err(Error::Internal(format!(
            "{} split characters but {center_dim} α-regular classes",
            split.len()
        )));
    }
    let inclusion: Vec<Vec<u32>> = fine
        .iter()
        .map(|o| coarse.iter().map(|c| u32::from(o.iter().all(|x| c.contains(x)))).collect())
        .collect();
    let consistent = fine.iter().all(|o| inclusion_row_sum(&inclusion, fine, o) == 1);
    Ok(BlockReport {
        dim: alg.dim(),
        radical_dim: 0,
        center_dim,
        fields: (from, to),
        blocks: (coarse.len(), fine.len()),
        injective: consistent && inclusion_injective(&inclusion, coarse.len()),
        inclusion,
    })
}

fn inclusion_row_sum(inc: &[Vec<u32>], fine: &[Vec<usize>], o: &[usize]) -> u32 {
    let i = fine.iter().position(|x| x == o).unwrap();
    inc[i].iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::skew::cocycle::h2_representatives;
    use std::sync::Arc;

    #[test]
    fn cyclic_three() {
        let c3 = Arc::new(catalog("C3").unwrap());
        let r = twisted_block_count(&CocycleTable::trivial(c3), 1, 3).unwrap();
        assert_eq!(r.blocks, (2, 3));
        assert!(r.holds());
        assert_eq!(r.inclusion.iter().map(|row| row.iter().sum::<u32>()).sum::<u32>(), 3);
    }

    #[test]
    fn generic_examples() {
        let m2 = simple_block_count(&FinDimAlgebra::matrix_algebra(2), 1, 4).unwrap();
        assert_eq!((m2.radical_dim, m2.blocks), (0, (1, 1)));
        let ut = simple_block_count(&FinDimAlgebra::upper_triangular(2), 1, 3).unwrap();
        assert_eq!((ut.radical_dim, ut.blocks), (1, (2, 2)));
        assert!(ut.holds());
        let c3 = crate::skew::cocycle::group_algebra(Arc::new(catalog("C3").unwrap()));
        assert!(simple_block_count(&c3, 1, 3).is_err());
        let s3 = crate::skew::cocycle::group_algebra(Arc::new(catalog("S3").unwrap()));
        assert_eq!(simple_block_count(&s3, 1, 1).unwrap().blocks, (3, 3));
    }

    #[test]
    fn groups_and_twists() {
        let q8 = Arc::new(catalog("Q8").unwrap());
        let r = twisted_block_count(&CocycleTable::trivial(q8), 1, 4).unwrap();
        assert_eq!(r.blocks, (5, 5));
        let k = Arc::new(catalog("C2xC2").unwrap());
        for alpha in h2_representatives(k, 2).unwrap().representatives {
            let r = twisted_block_count(&alpha, 2, 4).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.blocks.1, alpha_regular_classes(&alpha).len());
        }
    }
}
