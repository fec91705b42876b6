//! Exact coefficient arithmetic: word-size prime fields and big rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact field arithmetic behind a context value.
///
/// The context carries whatever the element representation needs (the modulus
/// for prime fields); elements themselves stay plain data. Everything the
/// guessers do is generic over this trait.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; fails on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_biguint(&self, n: &BigUint) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Short human name for reports, e.g. `GF(7)` or `QQ`.
    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `base^exp` as a field element, with the convention `0^0 = 1`.
    fn index_pow(&self, base: u64, exp: u32) -> Self::Elem {
        if exp == 0 {
            return self.one();
        }
        self.pow(&self.from_i64(base as i64), exp as u64)
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// `GF(p)` for a prime `p < 2^63`, elements stored as residues in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::Invalid(format!("modulus {p} is not below 2^63")));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    fn from_biguint(&self, n: &BigUint) -> u64 {
        (n % BigUint::from(self.p)).to_u64().unwrap()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = parse_i64(num)?;
            let d = parse_i64(den)?;
            let dinv = self.inv(&self.reduce_i64(d))?;
            return Ok(self.mul(&self.reduce_i64(n), &dinv));
        }
        // tolerate literals past i64 by reducing digit by digit
        if let Ok(n) = s.parse::<i64>() {
            return Ok(self.reduce_i64(n));
        }
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad field element `{s}`")));
        }
        let mut acc = 0u64;
        for b in digits.bytes() {
            acc = self.mul(&acc, &10);
            acc = self.add(&acc, &((b - b'0') as u64 % self.p));
        }
        Ok(if neg { self.neg(&acc) } else { acc })
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_biguint(&self, n: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(n.clone()))
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
        };
        if let Some((num, den)) = s.split_once('/') {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(num)?, d))
        } else {
            Ok(BigRational::from_integer(parse_int(s)?))
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn name(&self) -> String {
        "QQ".to_string()
    }
}

fn parse_i64(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3).unwrap(), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.parse("2/3").unwrap(), f.mul(&2, &f.inv(&3).unwrap()));
        assert!(f.inv(&0).is_err());
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1 << 63).is_err());
    }

    #[test]
    fn large_prime_field() {
        let p = (1u64 << 61) - 1;
        let f = PrimeField::new(p).unwrap();
        let a = p - 1;
        assert_eq!(f.mul(&a, &a), 1);
        assert_eq!(f.mul(&f.inv(&a).unwrap(), &a), 1);
    }

    #[test]
    fn rational_parse_format() {
        let f = Rationals;
        let x = f.parse("-6/4").unwrap();
        assert_eq!(f.format(&x), "-3/2");
        assert_eq!(f.format(&f.parse("5").unwrap()), "5");
        assert!(f.parse("1/0").is_err());
    }

    #[test]
    fn index_pow_zero_zero_is_one() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.index_pow(0, 0), 1);
        assert_eq!(f.index_pow(0, 1), 0);
        assert_eq!(f.index_pow(2, 3), 1);
        let q = Rationals;
        assert_eq!(q.index_pow(0, 0), q.one());
    }

    proptest! {
        // field axioms on random samples, for both backends
        #[test]
        fn prime_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let f = Rationals;
            let a = f.parse(&format!("{an}/{ad}")).unwrap();
            let b = f.parse(&format!("{bn}/{bd}")).unwrap();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            if !f.is_zero(&a) {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }
}
