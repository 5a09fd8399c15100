//! Scalars of `Z[1/n]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Removes from `d` every prime factor of `n`; `d` lies in `Z[1/n]^×·Z` iff the result is 1.
pub fn strip_primes_of(d: &BigInt, n: u64) -> BigInt {
    let mut d = d.abs();
    if d.is_zero() {
        return d;
    }
    for p in super::numtheory::prime_factors(n) {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    d
}

/// True iff the prime support of `d` divides `n`.
pub fn supported_on(d: &BigInt, n: u64) -> bool {
    !d.is_zero() && strip_primes_of(d, n).is_one()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedScalar {
    value: BigRational,
    n: u64,
}

impl LocalizedScalar {
    pub fn new(value: BigRational, n: u64) -> Result<Self> {
        if !supported_on(value.denom(), n) {
            return Err(Error::NotLocalized { value: value.to_string(), n });
        }
        Ok(LocalizedScalar { value, n })
    }

    pub fn from_int(v: i64, n: u64) -> Self {
        LocalizedScalar { value: BigRational::from_integer(v.into()), n }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_zero() && supported_on(self.value.numer(), self.n)
    }

    pub fn add(&self, o: &Self) -> Self {
        LocalizedScalar { value: &self.value + &o.value, n: self.n.lcm(&o.n) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        LocalizedScalar { value: &self.value * &o.value, n: self.n.lcm(&o.n) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.value.recip(), self.n)
    }
}

impl fmt::Display for LocalizedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Checks that every entry of a rational vector lies in `Z[1/n]`.
pub fn all_localized(v: &[BigRational], n: u64) -> bool {
    v.iter().all(|q| supported_on(q.denom(), n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn membership() {
        assert!(LocalizedScalar::new(q(1, 4), 6).is_ok());
        assert!(LocalizedScalar::new(q(1, 5), 6).is_err());
        assert!(LocalizedScalar::new(q(3, 5), 5).unwrap().inv().is_err());
        assert!(LocalizedScalar::new(q(2, 3), 6).unwrap().is_unit());
        assert!(!LocalizedScalar::from_int(7, 6).is_unit());
    }
}
