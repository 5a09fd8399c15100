//! Dense integer matrices: Smith and Hermite normal forms, kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in {cols}-column matrix", row.len())));
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|v| BigInt::from(*v))).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn diag(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Stacks matrices with a common column count vertically.
    pub fn vstack(blocks: &[IntMatrix], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::Dimension("column mismatch in vstack".into()));
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, -(b0/g)·a + (a0/g)·b) where the
    /// coefficients come from the extended gcd of the pivots.
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for j in 0..self.cols {
            let va = self.data[a * self.cols + j].clone();
            let vb = self.data[b * self.cols + j].clone();
            if va.is_zero() && vb.is_zero() {
                continue;
            }
            self.data[a * self.cols + j] = x * &va + y * &vb;
            self.data[b * self.cols + j] = p * &va + q * &vb;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for i in 0..self.rows {
            let va = self.data[i * self.cols + a].clone();
            let vb = self.data[i * self.cols + b].clone();
            if va.is_zero() && vb.is_zero() {
                continue;
            }
            self.data[i * self.cols + a] = x * &va + y * &vb;
            self.data[i * self.cols + b] = p * &va + q * &vb;
        }
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-major decimal-string form used in JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson(pub Vec<Vec<String>>);

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        MatrixJson((0..m.rows).map(|i| m.row(i).iter().map(|v| v.to_string()).collect()).collect())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, in order.
    pub invariants: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // clear column t
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let p = a.get(t, t).clone();
                let x = a.get(i, t).clone();
                if (&x % &p).is_zero() {
                    let q = -(&x / &p);
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                } else {
                    let e = p.extended_gcd(&x);
                    let (g, s, r) = (e.gcd, e.x, e.y);
                    let (pa, pb) = (-(&x / &g), &p / &g);
                    a.combine_rows(t, i, &s, &r, &pa, &pb);
                    u.combine_rows(t, i, &s, &r, &pa, &pb);
                }
            }
            // clear row t
            let mut dirty = false;
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let p = a.get(t, t).clone();
                let x = a.get(t, j).clone();
                if (&x % &p).is_zero() {
                    let q = -(&x / &p);
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                } else {
                    let e = p.extended_gcd(&x);
                    let (g, s, r) = (e.gcd, e.x, e.y);
                    let (pa, pb) = (-(&x / &g), &p / &g);
                    a.combine_cols(t, j, &s, &r, &pa, &pb);
                    v.combine_cols(t, j, &s, &r, &pa, &pb);
                    dirty = true;
                }
            }
            if dirty || (t + 1..rows).any(|i| !a.get(i, t).is_zero()) {
                continue;
            }
            // divisibility of the trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariants = (0..rows.min(cols))
        .map(|i| a.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    Smith { d: a, u, v, invariants }
}

/// Saturated basis (as rows) of the right kernel `{x : M x = 0}`.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let r = s.rank();
    let vt = s.v.transpose();
    let rows: Vec<Vec<BigInt>> = (r..m.cols).map(|i| vt.row(i).to_vec()).collect();
    hnf_rows(&IntMatrix::from_rows(rows, m.cols).expect("kernel shape"))
}

/// Row Hermite normal form; returns only the nonzero rows.
pub fn hnf_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if a.get(i, c).is_zero() {
                continue;
            }
            if a.get(r, c).is_zero() {
                a.swap_rows(r, i);
                continue;
            }
            let p = a.get(r, c).clone();
            let x = a.get(i, c).clone();
            let e = p.extended_gcd(&x);
            let (g, s, t) = (e.gcd, e.x, e.y);
            a.combine_rows(r, i, &s, &t, &(-(&x / &g)), &(&p / &g));
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let p = a.get(r, c).clone();
        for i in 0..r {
            let q = -a.get(i, c).div_floor(&p);
            a.add_row(i, r, &q);
        }
        r += 1;
    }
    let kept: Vec<Vec<BigInt>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows(kept, cols).expect("hnf shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_smith(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        let prod = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.invariants.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        s
    }

    #[test]
    fn smith_examples() {
        let s = check_smith(&IntMatrix::identity(3));
        assert_eq!(s.invariants, vec![BigInt::one(); 3]);
        let s = check_smith(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check_smith(&IntMatrix::from_i64(&[vec![2]]));
        assert_eq!(s.invariants, vec![BigInt::from(2)]);
        let s = check_smith(&IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.invariants, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn kernel_and_hnf() {
        let m = IntMatrix::from_i64(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let k = kernel(&m);
        assert_eq!(k, IntMatrix::from_i64(&[vec![1, 1, 1]]));
        let h = hnf_rows(&IntMatrix::from_i64(&[vec![2, 4], vec![3, 5]]));
        assert_eq!(h, IntMatrix::from_i64(&[vec![1, 1], vec![0, 2]]));
    }

    proptest! {
        #[test]
        fn smith_reconstructs(entries in proptest::collection::vec(-20i64..20, 12), r in 1usize..5) {
            let c = 12 / r.max(1);
            let rows: Vec<Vec<i64>> = (0..r).map(|i| entries[i * c..(i + 1) * c].to_vec()).collect();
            let m = IntMatrix::from_i64(&rows);
            let s = check_smith(&m);
            // product of invariants equals gcd of maximal minors when square
            if r == c {
                let d: BigInt = s.invariants.iter().product();
                let det = m.det().unwrap().abs();
                if s.rank() == r { prop_assert_eq!(d, det); } else { prop_assert!(det.is_zero()); }
            }
        }

        #[test]
        fn kernel_is_annihilated(entries in proptest::collection::vec(-5i64..5, 12)) {
            let rows: Vec<Vec<i64>> = (0..3).map(|i| entries[i * 4..(i + 1) * 4].to_vec()).collect();
            let m = IntMatrix::from_i64(&rows);
            let k = kernel(&m);
            let prod = m.mul(&k.transpose()).unwrap();
            prop_assert!(prod.is_zero());
            prop_assert_eq!(k.rows() + smith_normal_form(&m).rank(), 4);
        }
    }
}
