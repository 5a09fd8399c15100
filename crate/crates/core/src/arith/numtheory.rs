//! Small integer helpers shared by the arithmetic and group modules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    for p in prime_factors(n) {
        m /= p;
        if m % p == 0 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Ramanujan sum `c_j(k) = Σ_{a ∈ (Z/j)^×} ζ_j^{ak}`, an integer.
pub fn ramanujan_sum(j: u64, k: u64) -> i64 {
    let g = gcd(j, k % j);
    let g = if k % j == 0 { j } else { g };
    let q = j / g;
    mobius(q) * (euler_phi(j) / euler_phi(q)) as i64
}

pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|a| gcd(*a, n) == 1).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// An element of exact multiplicative order `order` in `F_p^×`; requires `order | p - 1`.
pub fn root_of_unity_mod(p: u64, order: u64) -> u64 {
    assert!((p - 1) % order == 0, "{order} does not divide {p} - 1");
    let factors = prime_factors(order);
    for g in 2..p {
        let z = mod_pow(g, (p - 1) / order, p);
        if factors.iter().all(|q| mod_pow(z, order / q, p) != 1) {
            return z;
        }
    }
    1
}

/// Least prime `p ≡ residue (mod modulus)` with `p > lower`.
pub fn prime_in_progression(residue: u64, modulus: u64, lower: u64) -> u64 {
    let mut p = residue % modulus;
    if p == 0 {
        p = modulus;
    }
    while p <= lower || !is_prime(p) {
        p += modulus;
    }
    p
}

/// Coefficients of the cyclotomic polynomial `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        poly = divide_monic(&poly, &phi_d);
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_mobius() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(15).len(), 9);
    }

    #[test]
    fn ramanujan_sums_match_definition() {
        // c_j(k) summed over divisors j of m gives m·[m | k].
        for m in 1..=12u64 {
            for k in 0..m {
                let s: i64 = divisors(m).iter().map(|&j| ramanujan_sum(j, k)).sum();
                assert_eq!(s, if k == 0 { m as i64 } else { 0 });
            }
        }
    }

    #[test]
    fn roots_and_primes() {
        let p = prime_in_progression(1, 24, 48);
        assert_eq!(p, 73);
        let z = root_of_unity_mod(p, 24);
        assert_eq!(mod_pow(z, 24, p), 1);
        assert_ne!(mod_pow(z, 12, p), 1);
        assert_ne!(mod_pow(z, 8, p), 1);
        assert_eq!(mod_inv(3, 7), Some(5));
    }
}
