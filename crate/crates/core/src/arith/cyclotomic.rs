//! Exact elements of cyclotomic fields `Q(ζ_N)`.
//!
//! A value is stored as `(Σ_i num[i] x^i) / den` reduced modulo `Φ_N`, with
//! `num.len() == φ(N)`. Binary operations first move both operands to the
//! least common conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{cyclotomic_polynomial, euler_phi, gcd, lcm, units_mod};
use crate::error::{Error, Result};

/// `x^k mod Φ_N` for `0 <= k < N`, as small integer vectors of length `φ(N)`.
fn power_table(n: u64) -> Arc<Vec<Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Vec<i64>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let phi = euler_phi(n) as usize;
    let poly = cyclotomic_polynomial(n);
    let mut table = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 1 && n == 1 {
        table.push(cur);
    } else {
        for _ in 0..n {
            table.push(cur.clone());
            // multiply by x and reduce the overflow x^phi = -Σ poly[i] x^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert(n, table.clone());
    table
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Cyclotomic { conductor: 1, num: vec![v], den: BigInt::one() }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Cyclotomic { conductor: 1, num: vec![q.numer().clone()], den: q.denom().clone() }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let table = power_table(n);
        let num = table[e].iter().map(|c| BigInt::from(*c)).collect();
        Cyclotomic { conductor: n, num, den: BigInt::one() }.normalized()
    }

    /// `Σ_k c_k ζ_n^k` with integer coefficients indexed by exponent.
    pub fn from_exponents(n: u64, coeffs: &[i64]) -> Self {
        let phi = euler_phi(n) as usize;
        let table = power_table(n);
        let mut acc = vec![BigInt::zero(); phi];
        for (k, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let row = &table[k % n as usize];
            for i in 0..phi {
                if row[i] != 0 {
                    acc[i] += BigInt::from(c * row[i]);
                }
            }
        }
        Cyclotomic { conductor: n, num: acc, den: BigInt::one() }.normalized()
    }

    /// Builds from the reduced basis coefficients `1, ζ_n, …, ζ_n^{φ(n)-1}`.
    pub fn from_coeffs(n: u64, coeffs: &[BigRational]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::Dimension(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Cyclotomic { conductor: n, num, den }.normalized())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.num[0] == self.den
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// True when every coefficient is an integer (sufficient, not necessary, for
    /// being an algebraic integer; the power basis is an integral basis).
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.is_zero() {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
        if self.conductor != 1 && self.num[1..].iter().all(|c| c.is_zero()) {
            self.num.truncate(1);
            self.conductor = 1;
        }
        self
    }

    /// Re-expresses in `Q(ζ_m)`; requires `conductor | m`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if m == 0 || m % self.conductor != 0 {
            return Err(Error::NotDivisible { m, n: self.conductor });
        }
        Ok(self.lift_raw(m))
    }

    fn lift_raw(&self, m: u64) -> Self {
        let step = (m / self.conductor) as usize;
        let phi = euler_phi(m) as usize;
        let table = power_table(m);
        let mut acc = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &table[(i * step) % m as usize];
            for j in 0..phi {
                if row[j] != 0 {
                    acc[j] += c * row[j];
                }
            }
        }
        Cyclotomic { conductor: m, num: acc, den: self.den.clone() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.conductor, b.conductor);
        (a.lift_raw(m), b.lift_raw(m))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = Self::common(self, other);
        let den = &a.den * &b.den;
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        Cyclotomic { conductor: a.conductor, num, den }.normalized()
    }

    pub fn neg_ref(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.conductor == 1 || other.conductor == 1 {
            let (r, s) = if self.conductor == 1 { (self, other) } else { (other, self) };
            let num = s.num.iter().map(|c| c * &r.num[0]).collect();
            return Cyclotomic { conductor: s.conductor, num, den: &r.den * &s.den }.normalized();
        }
        let (a, b) = Self::common(self, other);
        let n = a.conductor as usize;
        let phi = a.num.len();
        let mut by_exp = vec![BigInt::zero(); n];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    by_exp[(i + j) % n] += x * y;
                }
            }
        }
        let table = power_table(a.conductor);
        let mut acc = vec![BigInt::zero(); phi];
        for (k, c) in by_exp.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &table[k];
            for i in 0..phi {
                if row[i] != 0 {
                    acc[i] += c * row[i];
                }
            }
        }
        Cyclotomic { conductor: a.conductor, num: acc, den: &a.den * &b.den }.normalized()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.mul_ref(&Self::from_rational(q))
    }

    /// Galois automorphism `ζ_N ↦ ζ_N^a`.
    pub fn conj(&self, a: i64) -> Result<Self> {
        let n = self.conductor;
        let a = a.rem_euclid(n as i64) as u64;
        if n > 1 && gcd(a, n) != 1 {
            return Err(Error::NotCoprime { a: a as i64, n });
        }
        Ok(self.conj_unchecked(a))
    }

    fn conj_unchecked(&self, a: u64) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let phi = self.num.len();
        let table = power_table(n);
        let mut acc = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &table[((i as u64 * a) % n) as usize];
            for j in 0..phi {
                if row[j] != 0 {
                    acc[j] += c * row[j];
                }
            }
        }
        Cyclotomic { conductor: n, num: acc, den: self.den.clone() }.normalized()
    }

    /// Complex conjugation.
    pub fn conj_complex(&self) -> Self {
        self.conj_unchecked((self.conductor - 1) % self.conductor.max(1))
    }

    /// Field norm down to `Q`, computed in the current conductor.
    pub fn norm(&self) -> BigRational {
        let mut prod = Self::one();
        for a in units_mod(self.conductor) {
            prod = prod.mul_ref(&self.conj_unchecked(a));
        }
        prod.as_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        let mut others = Self::one();
        for a in units_mod(self.conductor) {
            if a != 1 {
                others = others.mul_ref(&self.conj_unchecked(a));
            }
        }
        let norm = self.mul_ref(&others).as_rational().ok_or_else(|| {
            Error::Internal("norm of cyclotomic element is not rational".into())
        })?;
        Ok(others.scale(&norm.recip()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            e >>= 1;
        }
        Ok(result)
    }

    /// Floating evaluation at `ζ_N = exp(2πi/N)`. Only for sanity checks.
    pub fn to_complex(&self) -> (f64, f64) {
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / d;
            let t = std::f64::consts::TAU * i as f64 / self.conductor as f64;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    pub fn to_json(&self) -> CyclotomicJson {
        CyclotomicJson {
            conductor: self.conductor,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &CyclotomicJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(j.conductor, &coeffs)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u64,
    pub coeffs: Vec<String>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        let a = a.normalized();
        let b = b.normalized();
        a.conductor == b.conductor && a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(&q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$inner(rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$inner(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.conductor)?,
                _ => write!(f, "{c}*z{}^{i}", self.conductor)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn basic_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_int(-1));
        assert_eq!(z(5, 1).conj(2).unwrap(), z(5, 2));
        assert_eq!(z(5, 1).conj(5), Err(Error::NotCoprime { a: 0, n: 5 }));
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors() {
        // ζ_4 · ζ_3 = ζ_12^7
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
        // ζ_6 = -ζ_3^2
        assert_eq!(z(6, 1), -z(3, 2));
        // sum of all 12th roots of unity vanishes
        let s = (0..12).fold(Cyclotomic::zero(), |acc, k| acc + z(12, k));
        assert!(s.is_zero());
        assert_eq!(z(2, 1).conductor(), 1);
    }

    #[test]
    fn inverse_and_norm() {
        let x = &Cyclotomic::from_int(2) + &z(7, 3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        // N(1 - ζ_p) = p
        let w = &Cyclotomic::one() - &z(5, 1);
        assert_eq!(w.norm(), BigRational::from_integer(5.into()));
    }

    #[test]
    fn json_roundtrip() {
        let x = &z(8, 3) + &Cyclotomic::from_rational(&BigRational::new(1.into(), 3.into()));
        let j = x.to_json();
        assert_eq!(Cyclotomic::from_json(&j).unwrap(), x);
    }
}
