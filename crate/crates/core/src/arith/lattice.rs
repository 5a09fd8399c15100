//! Lattice maps and the `Z[1/n]` isomorphism test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::{hnf_rows, kernel, smith_normal_form, IntMatrix};
use super::localized::{strip_primes_of, supported_on};
use crate::error::{Error, Result};

/// A homomorphism of free modules, `codomain_rank × domain_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub matrix: Vec<Vec<BigRational>>,
    pub domain_rank: usize,
    pub codomain_rank: usize,
}

impl LatticeMap {
    pub fn new(matrix: Vec<Vec<BigRational>>, domain_rank: usize) -> Result<Self> {
        if matrix.iter().any(|r| r.len() != domain_rank) {
            return Err(Error::Dimension("ragged lattice map".into()));
        }
        let codomain_rank = matrix.len();
        Ok(LatticeMap { matrix, domain_rank, codomain_rank })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let matrix = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        LatticeMap { matrix, domain_rank: m.cols(), codomain_rank: m.rows() }
    }

    /// Least common denominator of all entries.
    pub fn denominator(&self) -> BigInt {
        self.matrix
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// `denominator() · self` as an integer matrix.
    pub fn cleared(&self) -> (BigInt, IntMatrix) {
        let d = self.denominator();
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|q| q.numer() * (&d / q.denom())).collect())
            .collect();
        (d, IntMatrix::from_rows(rows, self.domain_rank).expect("shape"))
    }

    pub fn to_json(&self) -> Vec<Vec<String>> {
        self.matrix.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect()
    }
}

/// Evidence for (or against) invertibility over `Z[1/n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationCertificate {
    pub n: u64,
    pub square: bool,
    /// Least common multiple of the per-block denominators.
    pub denominator: String,
    /// Smith diagonals of the cleared blocks.
    pub diagonal: Vec<String>,
    pub invertible: bool,
}

/// Row and column index sets of the connected components of the support of `m`.
pub fn support_blocks(m: &LatticeMap) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (r, c) = (m.codomain_rank, m.domain_rank);
    let mut parent: Vec<usize> = (0..r + c).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, row) in m.matrix.iter().enumerate() {
        for (j, q) in row.iter().enumerate() {
            if !q.is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                parent[a] = b;
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for v in 0..r + c {
        let root = find(&mut parent, v);
        let e = blocks.entry(root).or_default();
        if v < r {
            e.0.push(v);
        } else {
            e.1.push(v - r);
        }
    }
    let mut out: Vec<_> = blocks.into_values().collect();
    out.sort_by_key(|(rows, cols)| (rows.first().copied(), cols.first().copied()));
    out
}

/// Smith invariants are computed per connected block of the support and concatenated.
pub fn localization_certificate(m: &LatticeMap, n: u64) -> LocalizationCertificate {
    let square = m.domain_rank == m.codomain_rank;
    let mut denom = BigInt::one();
    let mut diagonal = Vec::new();
    let mut invertible = square;
    for (rows, cols) in support_blocks(m) {
        if rows.len() != cols.len() {
            invertible = false;
        }
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let sub = LatticeMap {
            matrix: rows.iter().map(|&i| cols.iter().map(|&j| m.matrix[i][j].clone()).collect()).collect(),
            domain_rank: cols.len(),
            codomain_rank: rows.len(),
        };
        let (d, int) = sub.cleared();
        let s = smith_normal_form(&int);
        invertible &= s.rank() == rows.len().min(cols.len())
            && supported_on(&d, n)
            && s.invariants.iter().all(|x| supported_on(x, n));
        diagonal.extend(s.invariants.iter().map(|x| x.to_string()));
        denom = denom.lcm(&d);
    }
    LocalizationCertificate { n, square, denominator: denom.to_string(), diagonal, invertible }
}

/// True iff `m` is a square matrix over `Z[1/n]` whose Smith invariants are units there.
pub fn is_iso_over_localization(m: &LatticeMap, n: u64) -> bool {
    localization_certificate(m, n).invertible
}

/// Saturated basis (rows) of `{v : A_g v = v for all g}`.
pub fn invariant_sublattice(action: &[IntMatrix]) -> Result<IntMatrix> {
    let Some(first) = action.first() else {
        return Err(Error::Dimension("empty action".into()));
    };
    let n = first.rows();
    let id = IntMatrix::identity(n);
    let mut blocks = Vec::with_capacity(action.len());
    for a in action {
        if a.rows() != n || a.cols() != n {
            return Err(Error::Dimension(format!(
                "action matrix {}x{} on rank {n}",
                a.rows(),
                a.cols()
            )));
        }
        blocks.push(a.sub(&id)?);
    }
    let stacked = IntMatrix::vstack(&blocks, n)?;
    Ok(kernel(&stacked))
}

/// Invariants of a permutation action: one orbit-sum vector per orbit, ordered by least point.
pub fn permutation_invariants(perms: &[Vec<usize>], n: usize) -> IntMatrix {
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for p in perms {
                let y = p[x];
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbits.push(orbit);
    }
    let mut m = IntMatrix::zeros(orbits.len(), n);
    for (k, orbit) in orbits.iter().enumerate() {
        for &x in orbit {
            m.set(k, x, BigInt::one());
        }
    }
    m
}

/// A quotient `Z^k / L` is torsion-free iff all Smith invariants of the basis are 1.
pub fn is_saturated(basis: &IntMatrix) -> bool {
    smith_normal_form(basis).invariants.iter().all(|x| x.is_one())
}

/// A basis (rows) of the `Z[1/n]`-span of the given rational vectors.
pub fn localized_basis(vectors: &[Vec<BigRational>], len: usize, n: u64) -> Vec<Vec<BigRational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let den = vectors.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let rows = vectors
        .iter()
        .map(|v| v.iter().map(|q| q.numer() * (&den / q.denom())).collect())
        .collect();
    let h = hnf_rows(&IntMatrix::from_rows(rows, len).expect("shape"));
    h.to_rows()
        .into_iter()
        .map(|row| {
            let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let unit = if content.is_zero() { BigInt::one() } else { &content / strip_primes_of(&content, n) };
            row.into_iter()
                .map(|x| BigRational::new(x, &den * &unit))
                .collect()
        })
        .collect()
}

/// Absolute value helper for diagnostics.
pub fn abs_all(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(rows: &[Vec<i64>]) -> LatticeMap {
        LatticeMap::from_int(&IntMatrix::from_i64(rows))
    }

    #[test]
    fn localization_examples() {
        assert!(is_iso_over_localization(&lm(&[vec![1, 0], vec![0, 2]]), 6));
        assert!(!is_iso_over_localization(&lm(&[vec![1, 0], vec![0, 5]]), 6));
        assert!(is_iso_over_localization(&lm(&[vec![1, 0], vec![0, 4]]), 2));
        assert!(!is_iso_over_localization(&lm(&[vec![1, 0]]), 2));
        let half = LatticeMap::new(vec![vec![BigRational::new(1.into(), 2.into())]], 1).unwrap();
        assert!(is_iso_over_localization(&half, 2));
        assert!(!is_iso_over_localization(&half, 3));
    }

    #[test]
    fn invariant_examples() {
        let swap = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        let inv = invariant_sublattice(&[swap]).unwrap();
        assert_eq!(inv, IntMatrix::from_i64(&[vec![1, 1]]));
        assert!(is_saturated(&inv));
        let id3 = IntMatrix::identity(3);
        assert_eq!(invariant_sublattice(&[id3]).unwrap().rows(), 3);
        // inversion on the primitive part of R(C3): swap of the two coordinates
        let inv3 = IntMatrix::from_i64(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        let sub = invariant_sublattice(&[inv3]).unwrap();
        assert_eq!(sub.rows(), 2);
        assert_eq!(sub, permutation_invariants(&[vec![0, 2, 1]], 3));
        assert!(invariant_sublattice(&[IntMatrix::identity(2), IntMatrix::identity(3)]).is_err());
    }

    #[test]
    fn localized_span() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let b = localized_basis(&[vec![q(2, 1), q(4, 1)], vec![q(3, 1), q(6, 1)]], 2, 6);
        assert_eq!(b, vec![vec![q(1, 1), q(2, 1)]]);
        let b = localized_basis(&[vec![q(5, 1), q(0, 1)]], 2, 6);
        assert_eq!(b, vec![vec![q(5, 1), q(0, 1)]]);
    }
}
