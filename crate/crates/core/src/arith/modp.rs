//! Word-size modular linear algebra: `F_p` eigenspaces and Smith form over `Z/N`.

use super::numtheory::{ext_gcd, mod_inv};
use crate::error::{Error, Result};

fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Basis of `{x : m x = 0}` over `F_p`.
pub fn nullspace_mod(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p).expect("prime modulus");
        for j in 0..ncols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..ncols {
                    a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[row][free]) % p;
        }
        out.push(v);
    }
    out
}

fn apply(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0u64, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

/// Common eigenvectors of commuting diagonalizable matrices over `F_p`.
/// Returns one vector per one-dimensional joint eigenspace, or an error if the
/// matrices do not split into lines with eigenvalues in `F_p`.
pub fn joint_eigenvectors(mats: &[Vec<Vec<u64>>], dim: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..dim)
        .map(|i| (0..dim).map(|j| u64::from(i == j)).collect())
        .collect()];
    for m in mats {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(m, b, p)).collect();
            let mut found = 0;
            for lambda in 0..p {
                // columns (M - λ) b_i, solve Σ c_i col_i = 0
                let rows: Vec<Vec<u64>> = (0..dim)
                    .map(|r| {
                        (0..basis.len())
                            .map(|i| (images[i][r] + (p - lambda) * basis[i][r]) % p)
                            .collect()
                    })
                    .collect();
                let ns = nullspace_mod(&rows, basis.len(), p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..dim)
                            .map(|r| c.iter().zip(&basis).fold(0u64, |acc, (ci, b)| (acc + ci * b[r]) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(Error::Internal(format!(
                    "eigenspaces mod {p} span {found} of {} dimensions",
                    basis.len()
                )));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Internal("joint eigenspaces are not one-dimensional".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

/// Smith form over `Z/N`: `U · A · V ≡ D (mod N)`; `v_inv` is the inverse of `V`.
#[derive(Clone, Debug)]
pub struct SmithModN {
    pub modulus: u64,
    /// Diagonal entries (divisors of `N`, 0 meaning `N`) for the first `min(rows, cols)` positions.
    pub diag: Vec<u64>,
    pub v: Vec<Vec<u64>>,
    pub v_inv: Vec<Vec<u64>>,
}

/// Bezout coefficients, preferring plain elimination when `p | x` so the pivot column is left alone.
fn elim_coeffs(p: u64, x: u64) -> (i128, i128, i128) {
    if x % p == 0 {
        (p as i128, 1, 0)
    } else {
        ext_gcd(p as i128, x as i128)
    }
}

/// Column operations are tracked in `v` and mirrored as row operations on `v_inv`.
pub fn smith_mod_n(a: &[Vec<u64>], cols: usize, n: u64) -> SmithModN {
    let rows = a.len();
    let mut a: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % n).collect()).collect();
    let ident = |k: usize| -> Vec<Vec<u64>> { (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect() };
    let mut v = ident(cols);
    let mut vi = ident(cols);
    let g_of = |x: u64| num_integer::gcd(x, n);
    let mut t = 0;
    let mut diag = Vec::new();
    while t < rows.min(cols) {
        // pivot: entry with the smallest gcd with N
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = g_of(x);
                    if best.map_or(true, |(_, _, bg)| g < bg) {
                        best = Some((i, j, g));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            vi.swap(t, pj);
        }
        loop {
            // normalise pivot to gcd(pivot, N) using a unit multiple
            let p = a[t][t];
            for i in t + 1..rows {
                let x = a[i][t];
                if x == 0 {
                    continue;
                }
                let (g, s, r) = elim_coeffs(p, x);
                let (pa, pb) = (-(x as i128 / g), p as i128 / g);
                for j in 0..cols {
                    let (va, vb) = (a[t][j] as i128, a[i][j] as i128);
                    a[t][j] = reduce(s * va + r * vb, n);
                    a[i][j] = reduce(pa * va + pb * vb, n);
                }
                break;
            }
            if (t + 1..rows).any(|i| a[i][t] != 0) {
                continue;
            }
            let p = a[t][t];
            let mut dirty = false;
            for j in t + 1..cols {
                let x = a[t][j];
                if x == 0 {
                    continue;
                }
                let (g, s, r) = elim_coeffs(p, x);
                let (pa, pb) = (-(x as i128 / g), p as i128 / g);
                // new col t = s·col_t + r·col_j ; new col j = pa·col_t + pb·col_j
                for row in a.iter_mut() {
                    let (va, vb) = (row[t] as i128, row[j] as i128);
                    row[t] = reduce(s * va + r * vb, n);
                    row[j] = reduce(pa * va + pb * vb, n);
                }
                for row in v.iter_mut() {
                    let (va, vb) = (row[t] as i128, row[j] as i128);
                    row[t] = reduce(s * va + r * vb, n);
                    row[j] = reduce(pa * va + pb * vb, n);
                }
                // inverse of [[s, pa], [r, pb]] (det 1) is [[pb, -pa], [-r, s]], applied to rows of v_inv
                let (rt, rj) = (vi[t].clone(), vi[j].clone());
                for k in 0..cols {
                    let (va, vb) = (rt[k] as i128, rj[k] as i128);
                    vi[t][k] = reduce(pb * va - pa * vb, n);
                    vi[j][k] = reduce(-r * va + s * vb, n);
                }
                dirty = true;
                break;
            }
            if dirty {
                continue;
            }
            break;
        }
        let p = a[t][t];
        diag.push(if p == 0 { 0 } else { g_of(p) % n });
        t += 1;
    }
    while diag.len() < rows.min(cols) {
        diag.push(0);
    }
    SmithModN { modulus: n, diag, v, v_inv: vi }
}

/// Generators of `{x : A x ≡ 0 (mod N)}` together with their additive orders,
/// in coordinates `y = V^{-1} x`: generator `i` is `V · ((N / g_i) e_i)`.
pub fn kernel_mod_n(a: &[Vec<u64>], cols: usize, n: u64) -> (SmithModN, Vec<(Vec<u64>, u64)>) {
    let s = smith_mod_n(a, cols, n);
    let mut gens = Vec::new();
    for i in 0..cols {
        let d = s.diag.get(i).copied().unwrap_or(0);
        // solutions y_i with d·y_i ≡ 0: multiples of N / gcd(d, N)
        let g = if d == 0 { n } else { num_integer::gcd(d, n) };
        if g == 1 {
            continue;
        }
        let step = n / g;
        let x: Vec<u64> = (0..cols).map(|r| s.v[r][i] * step % n).collect();
        gens.push((x, g));
    }
    (s, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_split() {
        // diag(2, 3) conjugated by [[1,1],[0,1]] over F_7
        let m = vec![vec![2, 1], vec![0, 3]];
        let vs = joint_eigenvectors(&[m.clone()], 2, 7).unwrap();
        assert_eq!(vs.len(), 2);
        for v in vs {
            let mv = apply(&m, &v, 7);
            let lambda = (0..7).find(|l| (0..2).all(|i| mv[i] == l * v[i] % 7));
            assert!(lambda.is_some());
        }
        // rotation by 90 degrees has no eigenvalues in F_3
        assert!(joint_eigenvectors(&[vec![vec![0, 2], vec![1, 0]]], 2, 3).is_err());
    }

    #[test]
    fn kernel_modulo() {
        // 2x ≡ 0 (mod 4): x ∈ {0, 2}
        let (_, gens) = kernel_mod_n(&[vec![2]], 1, 4);
        assert_eq!(gens, vec![(vec![2], 2)]);
        let a = vec![vec![1, 1, 0], vec![0, 2, 2]];
        let (s, gens) = kernel_mod_n(&a, 3, 6);
        for (x, ord) in &gens {
            for row in &a {
                let dot: u64 = row.iter().zip(x).map(|(p, q)| p * q).sum();
                assert_eq!(dot % 6, 0);
            }
            assert!(x.iter().all(|c| c * ord % 6 == 0));
        }
        let prod: u64 = gens.iter().map(|g| g.1).product();
        // brute force count of solutions
        let mut count = 0;
        for x0 in 0..6 {
            for x1 in 0..6 {
                for x2 in 0..6 {
                    if (x0 + x1) % 6 == 0 && (2 * x1 + 2 * x2) % 6 == 0 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(prod, count);
        // V · V^{-1} = I
        for i in 0..3 {
            for j in 0..3 {
                let e: u64 = (0..3).map(|k| s.v[i][k] * s.v_inv[k][j]).sum::<u64>() % 6;
                assert_eq!(e, u64::from(i == j));
            }
        }
    }
}
