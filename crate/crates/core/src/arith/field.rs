//! Exact linear algebra over `Q` and cyclotomic fields.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::Cyclotomic;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self) -> Self;
    fn from_int(v: i64) -> Self;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Self {
        Cyclotomic::inv(self).expect("inverting a nonzero pivot")
    }
    fn from_int(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
    fn is_one(&self) -> bool {
        Cyclotomic::is_one(self)
    }
}

pub type Mat<F> = Vec<Vec<F>>;

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if !inv.is_one() {
            for j in c..ncols {
                if !m[r][j].is_zero() {
                    m[r][j] = m[r][j].mul(&inv);
                }
            }
        }
        let pivot_row = m[r].clone();
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    m[i][j] = m[i][j].sub(&f.mul(&pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Mat<F>, ncols: usize) -> usize {
    let mut a = m.clone();
    rref(&mut a, ncols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Mat<F>, ncols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            if !a[r][free].is_zero() {
                v[p] = a[r][free].neg();
            }
        }
        out.push(v);
    }
    out
}

/// Solves `a x = b`.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut aug: Mat<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Coordinates of each target in terms of the (independent) basis vectors.
pub fn coords_in_basis<F: Field>(basis: &[Vec<F>], targets: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let k = basis.len();
    let d = targets.first().map(|t| t.len()).or_else(|| basis.first().map(|b| b.len()))?;
    let t = targets.len();
    // rows = coordinates, columns = basis vectors then targets
    let mut aug: Mat<F> = (0..d)
        .map(|i| {
            let mut row: Vec<F> = basis.iter().map(|b| b[i].clone()).collect();
            row.extend(targets.iter().map(|v| v[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut aug, k + t);
    if pivots != (0..k).collect::<Vec<_>>() {
        return None;
    }
    Some((0..t).map(|j| (0..k).map(|r| aug[r][k + j].clone()).collect()).collect())
}

pub fn inverse<F: Field>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.len();
    let mut aug: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>, bcols: usize) -> Mat<F> {
    a.iter()
        .map(|row| {
            let mut out = vec![F::zero(); bcols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for j in 0..bcols {
                    if !b[k][j].is_zero() {
                        out[j] = out[j].add(&x.mul(&b[k][j]));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Mat<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::zero(), |acc, (x, y)| {
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc.add(&x.mul(y))
                }
            })
        })
        .collect()
}

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub type SparseVec<F> = BTreeMap<usize, F>;

pub fn sparse_axpy<F: Field>(acc: &mut SparseVec<F>, coef: &F, v: &[(usize, F)]) {
    for (k, x) in v {
        let add = coef.mul(x);
        let e = acc.entry(*k).or_insert_with(F::zero);
        *e = e.add(&add);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// Echelon basis built one sparse vector at a time. Optionally tracks the
/// combination of inserted vectors producing each stored row, so vectors that
/// reduce to zero yield linear relations.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    rows: BTreeMap<usize, Vec<(usize, F)>>,
    combos: BTreeMap<usize, Vec<(usize, F)>>,
    inserted: usize,
    track: bool,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(track: bool) -> Self {
        EchelonBasis { rows: BTreeMap::new(), combos: BTreeMap::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduces `v`; returns the residual (zero iff `v` lies in the span).
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut work = v.clone();
        let mut cursor = 0;
        while let Some((&k, x)) = work.range(cursor..).next() {
            if let Some(row) = self.rows.get(&k) {
                let coef = x.neg();
                sparse_axpy(&mut work, &coef, row);
            } else {
                cursor = k + 1;
            }
        }
        work
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`. Returns `None` if it enlarged the span; otherwise the
    /// relation `Σ c_i v_i = 0` among inserted vectors (empty without tracking).
    pub fn insert(&mut self, v: &SparseVec<F>) -> Option<Vec<(usize, F)>> {
        let id = self.inserted;
        self.inserted += 1;
        let mut work = v.clone();
        let mut combo: SparseVec<F> = SparseVec::new();
        if self.track {
            combo.insert(id, F::one());
        }
        loop {
            let Some((&k, x)) = work.iter().next() else {
                return if self.track { Some(combo.into_iter().collect()) } else { Some(Vec::new()) };
            };
            if let Some(row) = self.rows.get(&k) {
                let coef = x.neg();
                sparse_axpy(&mut work, &coef, row);
                if self.track {
                    sparse_axpy(&mut combo, &coef, &self.combos[&k]);
                }
            } else {
                let inv = x.inv();
                let row: Vec<(usize, F)> = work.iter().map(|(i, y)| (*i, y.mul(&inv))).collect();
                self.rows.insert(k, row);
                if self.track {
                    let c: Vec<(usize, F)> = combo.iter().map(|(i, y)| (*i, y.mul(&inv))).collect();
                    self.combos.insert(k, c);
                }
                return None;
            }
        }
    }

    /// Stored rows, ordered by pivot.
    pub fn rows(&self) -> impl Iterator<Item = &Vec<(usize, F)>> {
        self.rows.values()
    }
}

/// Kernel of the linear map sending basis vector `i` to `images[i]`.
pub fn sparse_kernel<F: Field>(images: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut eb = EchelonBasis::new(true);
    let mut out = Vec::new();
    for v in images {
        if let Some(rel) = eb.insert(v) {
            out.push(rel.into_iter().collect());
        }
    }
    out
}

pub fn to_sparse<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense<F: Field>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn dense_routines() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]];
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&m, &ns[0]).iter().all(|x| Zero::is_zero(x)));
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), identity(2));
        assert_eq!(solve(&a, &[q(3), q(2)], 2), Some(vec![q(1), q(1)]));
        let c = coords_in_basis(&[vec![q(1), q(1)], vec![q(0), q(1)]], &[vec![q(2), q(5)]]).unwrap();
        assert_eq!(c, vec![vec![q(2), q(3)]]);
    }

    #[test]
    fn cyclotomic_elimination() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let m = vec![vec![Cyclotomic::one(), z.clone()], vec![z.clone(), z.mul_ref(&z)]];
        assert_eq!(rank(&m, 2), 1);
    }

    #[test]
    fn sparse_relations() {
        let imgs: Vec<SparseVec<BigRational>> = vec![
            [(0, q(1)), (1, q(1))].into_iter().collect(),
            [(1, q(1)), (2, q(1))].into_iter().collect(),
            [(0, q(1)), (2, q(-1))].into_iter().collect(),
        ];
        let k = sparse_kernel(&imgs);
        assert_eq!(k.len(), 1);
        let rel = &k[0];
        // v0 - v1 - v2 = 0 up to scaling
        let c0 = rel[&0].clone();
        assert_eq!(rel[&1], -c0.clone());
        assert_eq!(rel[&2], -c0);
    }
}
