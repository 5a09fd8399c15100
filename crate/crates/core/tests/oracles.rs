use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use orbicalc::arith::lattice::{localization_certificate, LatticeMap};
use orbicalc::arith::localized::supported_on;
use orbicalc::arith::Cyclotomic;
use proptest::prelude::*;

fn cyc(n: u64, c: &[i64]) -> Cyclotomic {
    Cyclotomic::from_exponents(n, c)
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let k = m.len();
    let mut d = BigRational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..k {
            let f = &m[r][c] / &piv;
            for j in c..k {
                let t = &f * &m[c][j];
                m[r][j] -= t;
            }
        }
    }
    d
}

fn conductor() -> impl Strategy<Value = u64> {
    1u64..=24
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(n in conductor(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (x, y, z) = (cyc(n, &a), cyc(n, &b), cyc(n, &c));
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y.add_ref(&z)), x.mul_ref(&y).add_ref(&x.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
        if !x.is_zero() {
            prop_assert!(x.mul_ref(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_action_is_a_ring_map(n in conductor(), a in coeffs(), b in coeffs(), k in 1i64..48) {
        prop_assume!(num_integer::gcd(k, n as i64) == 1);
        let (x, y) = (cyc(n, &a), cyc(n, &b));
        let s = |v: &Cyclotomic| v.conj(k).unwrap();
        prop_assert_eq!(s(&x.mul_ref(&y)), s(&x).mul_ref(&s(&y)));
        prop_assert_eq!(s(&x.add_ref(&y)), s(&x).add_ref(&s(&y)));
    }

    #[test]
    fn certificate_matches_determinant(
        blocks in prop::collection::vec(prop::collection::vec(-4i64..=4, 1..=9), 1..4),
        n in prop::sample::select(vec![2u64, 6, 12, 30]),
        den in prop::sample::select(vec![1i64, 2, 3, 5]),
    ) {
        let sizes: Vec<usize> = blocks.iter().map(|b| (b.len() as f64).sqrt() as usize).collect();
        let total: usize = sizes.iter().sum();
        prop_assume!(total > 0);
        let mut m = vec![vec![BigRational::zero(); total]; total];
        let mut off = 0;
        for (b, &s) in blocks.iter().zip(&sizes) {
            for i in 0..s {
                for j in 0..s {
                    m[off + i][off + j] = BigRational::new(BigInt::from(b[i * s + j]), BigInt::from(den));
                }
            }
            off += s;
        }
        // interleave rows so the blocks are not contiguous
        m.reverse();
        let d = det(m.clone());
        let expected = !d.is_zero() && supported_on(&d.numer().abs(), n) && supported_on(d.denom(), n)
            && m.iter().flatten().all(|q| supported_on(q.denom(), n));
        let cert = localization_certificate(&LatticeMap::new(m, total).unwrap(), n);
        prop_assert_eq!(cert.invertible, expected);
    }
}
