//! Normalized 2-cocycles `α(g,h) = ζ_N^{c(g,h)}`, twisted group algebras and `H²(G, μ_N)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::algebra::{basis_vector, FinDimAlgebra, Grading, Vector};
use crate::arith::cyclotomic::Cyclotomic;
use crate::arith::field;
use crate::arith::intmat::{smith_normal_form, IntMatrix};
use crate::arith::modp::smith_mod_n;
use crate::error::{Error, Result};
use crate::group::{centralizer, conjugacy_classes, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    group: Arc<FiniteGroup>,
    root_order: u64,
    table: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleJson {
    pub root_order: u64,
    pub table: Vec<Vec<i64>>,
}

impl CocycleTable {
    /// Validates normalization and the cocycle identity; values are read modulo `N`.
    pub fn new(group: Arc<FiniteGroup>, root_order: u64, table: Vec<Vec<i64>>) -> Result<Self> {
        let n = group.order();
        if root_order == 0 {
            return Err(Error::InvalidCocycle("root order must be positive".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCocycle(format!("expected a {n}×{n} table")));
        }
        let table: Vec<Vec<u64>> = table
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.rem_euclid(root_order as i64) as u64).collect())
            .collect();
        if (0..n).any(|g| table[0][g] != 0 || table[g][0] != 0) {
            return Err(Error::InvalidCocycle("cocycle is not normalized".into()));
        }
        let c = CocycleTable { group, root_order, table };
        if let Some((g, h, k)) = c.failing_triple() {
            return Err(Error::CocycleIdentity(g, h, k));
        }
        Ok(c)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        CocycleTable { group, root_order: 1, table: vec![vec![0; n]; n] }
    }

    fn failing_triple(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        let n = g.order();
        let m = self.root_order;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = (self.table[a][b] + self.table[g.mul(a, b)][c]) % m;
                    let rhs = (self.table[b][c] + self.table[a][g.mul(b, c)]) % m;
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn exponent(&self, g: usize, h: usize) -> u64 {
        self.table[g][h]
    }

    pub fn alpha(&self, g: usize, h: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.root_order, self.table[g][h] as i64)
    }

    pub fn is_trivial_table(&self) -> bool {
        self.table.iter().flatten().all(|&v| v == 0)
    }

    /// Same cocycle with values in `μ_M` for `N | M`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.root_order != 0 {
            return Err(Error::NotDivisible { m: self.root_order, n: m });
        }
        let k = m / self.root_order;
        let table = self.table.iter().map(|r| r.iter().map(|v| v * k).collect()).collect();
        Ok(CocycleTable { group: self.group.clone(), root_order: m, table })
    }

    /// `c · δf` for a normalized 1-cochain `f` with values in `Z/N`.
    pub fn times_coboundary(&self, f: &[u64]) -> Self {
        let g = &self.group;
        let n = g.order();
        let m = self.root_order;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (self.table[a][b] + f[a] + f[b] + m - f[g.mul(a, b)] % m) % m)
                    .collect()
            })
            .collect();
        CocycleTable { group: self.group.clone(), root_order: m, table }
    }

    pub fn to_json(&self) -> CocycleJson {
        CocycleJson {
            root_order: self.root_order,
            table: self.table.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect(),
        }
    }

    pub fn from_json(group: Arc<FiniteGroup>, j: &CocycleJson) -> Result<Self> {
        Self::new(group, j.root_order, j.table.clone())
    }

    pub fn parse(group: Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let j: CocycleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(group, &j)
    }
}

/// `k_α[G]`: basis `u_g`, `u_g u_h = α(g,h) u_{gh}`, graded by `G`.
pub fn twisted_group_algebra(alpha: &CocycleTable) -> FinDimAlgebra {
    let g = alpha.group();
    let n = g.order();
    let mut products = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            products.push(vec![(g.mul(a, b), alpha.alpha(a, b))]);
        }
    }
    let labels = (0..n).map(|a| format!("u{a}")).collect();
    let mut alg = FinDimAlgebra::raw(n, basis_vector(0), products, labels);
    alg.set_generators(g.generators().into_iter().map(basis_vector).collect::<Vec<Vector>>());
    alg.set_grading_unchecked(Grading { group: g.clone(), degree: (0..n).collect() });
    alg
}

pub fn group_algebra(g: Arc<FiniteGroup>) -> FinDimAlgebra {
    twisted_group_algebra(&CocycleTable::trivial(g))
}

/// Conjugacy classes (as indices) of `α`-regular elements: `α(g,h) = α(h,g)` for all `h ∈ C(g)`.
pub fn alpha_regular_classes(alpha: &CocycleTable) -> Vec<usize> {
    let g = alpha.group();
    let cs = conjugacy_classes(g);
    (0..cs.num_classes())
        .filter(|&c| {
            let a = cs.class_rep(c);
            centralizer(g, a).elements().iter().all(|&h| alpha.exponent(a, h) == alpha.exponent(h, a))
        })
        .collect()
}

/// `H²(G, μ_N)` as `⊕ Z/d_j` with one normalized cocycle per class.
#[derive(Clone, Debug)]
pub struct H2 {
    pub root_order: u64,
    pub invariants: Vec<u64>,
    pub representatives: Vec<CocycleTable>,
}

impl H2 {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

/// Enumerates `H²(G, μ_N)` by linear algebra over `Z/N` on normalized cochains.
pub fn h2_representatives(group: Arc<FiniteGroup>, root_order: u64) -> Result<H2> {
    let g = &group;
    let n = g.order();
    let big_n = root_order;
    if n == 1 {
        return Ok(H2 { root_order, invariants: vec![], representatives: vec![CocycleTable::trivial(group.clone()).lift(root_order)?] });
    }
    let var = |a: usize, b: usize| (a - 1) * (n - 1) + (b - 1);
    let cols = (n - 1) * (n - 1);
    let neg = big_n - 1;
    // δ² on nonidentity triples
    let mut rows = Vec::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let mut row = vec![0u64; cols];
                let mut put = |i: usize, v: u64| row[i] = (row[i] + v) % big_n;
                put(var(b, c), 1);
                if g.mul(a, b) != 0 {
                    put(var(g.mul(a, b), c), neg);
                }
                if g.mul(b, c) != 0 {
                    put(var(a, g.mul(b, c)), 1);
                }
                put(var(a, b), neg);
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    rows.sort();
    rows.dedup();
    let s = smith_mod_n(&rows, cols, big_n);
    // Z² generators: column i of V scaled by N / gcd(d_i, N)
    let mut kernel_cols = Vec::new();
    for i in 0..cols {
        let d = s.diag.get(i).copied().unwrap_or(0);
        let gi = if d == 0 { big_n } else { num_integer::gcd(d, big_n) };
        if gi > 1 {
            kernel_cols.push((i, gi, big_n / gi));
        }
    }
    let k = kernel_cols.len();
    let gens: Vec<Vec<u64>> = kernel_cols.iter().map(|&(i, _, step)| (0..cols).map(|r| s.v[r][i] * step % big_n).collect()).collect();

    // relations: orders of the generators, then coordinates of the coboundaries δ(e_a)
    let mut rel: Vec<Vec<BigInt>> = kernel_cols
        .iter()
        .enumerate()
        .map(|(j, &(_, gi, _))| (0..k).map(|l| BigInt::from(if l == j { gi } else { 0 })).collect())
        .collect();
    for a in 1..n {
        let mut b = vec![0u64; cols];
        for x in 1..n {
            for y in 1..n {
                let mut v = 0u64;
                if x == a {
                    v += 1;
                }
                if y == a {
                    v += 1;
                }
                if g.mul(x, y) == a {
                    v += neg;
                }
                b[var(x, y)] = v % big_n;
            }
        }
        let y: Vec<u64> = (0..cols)
            .map(|r| (0..cols).fold(0u128, |acc, c| (acc + s.v_inv[r][c] as u128 * b[c] as u128) % big_n as u128) as u64)
            .collect();
        let mut coords = Vec::with_capacity(k);
        for &(i, _, step) in &kernel_cols {
            if y[i] % step != 0 {
                return Err(Error::Internal("coboundary outside the cocycle lattice".into()));
            }
            coords.push(BigInt::from(y[i] / step));
        }
        rel.push(coords);
    }
    let relm = IntMatrix::from_rows(rel, k)?;
    let snf = smith_normal_form(&relm);
    let d: Vec<u64> = (0..k).map(|j| snf.d.get(j, j).to_u64().unwrap_or(0)).collect();
    if d.iter().any(|&x| x == 0) {
        return Err(Error::Internal("H² came out infinite".into()));
    }
    let v_rat: Vec<Vec<BigRational>> = snf.v.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let v_inv = field::inverse(&v_rat).ok_or_else(|| Error::Internal("singular Smith transform".into()))?;

    let mut reps = Vec::new();
    let total: u64 = d.iter().product();
    for idx in 0..total {
        let mut rem = idx;
        let ycoords: Vec<u64> = d
            .iter()
            .map(|&dj| {
                let v = rem % dj;
                rem /= dj;
                v
            })
            .collect();
        // x = y · V⁻¹
        let mut table = vec![vec![0i64; n]; n];
        for (l, (_, gi, _)) in kernel_cols.iter().enumerate() {
            let mut x = BigRational::from_integer(BigInt::from(0));
            for (j, &yj) in ycoords.iter().enumerate() {
                x += BigRational::from_integer(BigInt::from(yj)) * &v_inv[j][l];
            }
            if !x.is_integer() {
                return Err(Error::Internal("non-integral Smith inverse".into()));
            }
            let xl = x.to_integer() % BigInt::from(*gi);
            let xl = xl.to_i64().unwrap().rem_euclid(*gi as i64) as u64;
            for a in 1..n {
                for b in 1..n {
                    let e = &mut table[a][b];
                    *e = ((*e as u64 + xl * gens[l][var(a, b)]) % big_n) as i64;
                }
            }
        }
        reps.push(CocycleTable::new(group.clone(), big_n, table)?);
    }
    let invariants = d.into_iter().filter(|&x| x > 1).collect();
    Ok(H2 { root_order, invariants, representatives: reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn klein() -> Arc<FiniteGroup> {
        Arc::new(catalog("C2xC2").unwrap())
    }

    #[test]
    fn validation() {
        let g = Arc::new(catalog("C2").unwrap());
        assert!(matches!(CocycleTable::new(g.clone(), 2, vec![vec![0, 1], vec![0, 0]]), Err(Error::InvalidCocycle(_))));
        CocycleTable::new(g.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let k = klein();
        let mut t = vec![vec![0i64; 4]; 4];
        t[1][2] = 1;
        assert!(matches!(CocycleTable::new(k, 2, t), Err(Error::CocycleIdentity(..))));
    }

    #[test]
    fn h2_orders() {
        // |H²(G, μ_N)| = |G^ab| · |M(G)[N]| with N = exp(G)
        let cases = [("C2", 2), ("C3", 3), ("C2xC2", 8), ("S3", 2), ("Q8", 4), ("D4", 8), ("C2xC4", 16)];
        for (name, expected) in cases {
            let g = Arc::new(catalog(name).unwrap());
            let h = h2_representatives(g.clone(), g.exponent() as u64).unwrap();
            assert_eq!(h.order(), expected, "{name}");
            assert_eq!(h.representatives.len() as u64, expected);
        }
    }

    #[test]
    fn twisted_hh0_matches_alpha_regular() {
        let k = klein();
        let h = h2_representatives(k.clone(), 2).unwrap();
        let mut dims = Vec::new();
        for alpha in &h.representatives {
            let a = twisted_group_algebra(alpha);
            let d = a.hh0().dimension();
            assert_eq!(d, alpha_regular_classes(alpha).len());
            dims.push(d);
        }
        assert!(dims.contains(&1) && dims.contains(&4));
        let s3 = Arc::new(catalog("S3").unwrap());
        assert_eq!(group_algebra(s3.clone()).center().len(), 3);
        assert_eq!(group_algebra(s3).hh0().dimension(), 3);
    }
}
