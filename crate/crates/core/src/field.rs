//! Scalars used by the parametrizations and by polynomial evaluation.
//!
//! Three scalar domains are supported: exact rationals, residues modulo a
//! word-sized prime, and `f64` for empirical data. The [`Scalar`] trait is
//! deliberately small; every value carries enough context (the modulus, for
//! residues) to produce its own zero and one.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The Mersenne prime 2^61 - 1, the default modulus for probabilistic rank.
pub const MERSENNE_61: u64 = (1u64 << 61) - 1;

pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Maps a rational into this domain, `None` when the denominator is not
    /// invertible.
    fn from_rational_like(&self, q: &BigRational) -> Option<Self>;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Scalar for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        q.to_f64()
    }
}

/// A prime field Z/pZ with p an odd prime below 2^62.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 3 || modulus >= 1u64 << 62 || !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, value: u64) -> Fp {
        Fp {
            value: value % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn from_i64(&self, value: i64) -> Fp {
        self.element(value.rem_euclid(self.modulus as i64) as u64)
    }

    pub fn from_bigint(&self, value: &BigInt) -> Fp {
        let m = BigInt::from(self.modulus);
        let mut r = value % &m;
        if r.is_negative() {
            r += &m;
        }
        self.element(r.to_u64().expect("residue fits in u64"))
    }

    pub fn from_rational(&self, q: &BigRational) -> Option<Fp> {
        let den = self.from_bigint(q.denom());
        if den.value == 0 {
            return None;
        }
        Some(self.from_bigint(q.numer()).mul(&den.inverse()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        self.element(rng.random_range(1..self.modulus))
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        pow_mod(a, self.modulus - 2, self.modulus)
    }
}

/// An element of a prime field, tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn inverse(&self) -> Fp {
        Fp {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }
    fn one_like(&self) -> Self {
        Fp {
            value: 1,
            modulus: self.modulus,
        }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let s = self.value + other.value;
        Fp {
            value: if s >= self.modulus { s - self.modulus } else { s },
            modulus: self.modulus,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let value = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + self.modulus - other.value
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn from_rational_like(&self, q: &BigRational) -> Option<Self> {
        PrimeField {
            modulus: self.modulus,
        }
        .from_rational(q)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly random prime in [2^60, 2^61).
pub fn random_prime_61<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.random_range((1u64 << 60)..(1u64 << 61)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_primes() {
        assert!(is_prime(MERSENNE_61));
        assert!(is_prime(101));
        assert!(!is_prime(1));
        assert!(!is_prime(561));
        assert!(!is_prime(MERSENNE_61 - 2));
        // 2^61 - 1 is prime, (2^31 - 1)^2 is not
        assert!(!is_prime(((1u64 << 31) - 1) * ((1u64 << 31) - 1)));
    }

    #[test]
    fn field_rejects_composites() {
        assert_eq!(PrimeField::new(100), Err(Error::NotPrime(100)));
        assert_eq!(PrimeField::new(2), Err(Error::NotPrime(2)));
        assert!(PrimeField::new(MERSENNE_61).is_ok());
    }

    #[test]
    fn random_primes_are_61_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p = random_prime_61(&mut rng);
            assert!(is_prime(p));
            assert_eq!(64 - p.leading_zeros(), 61);
        }
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(101).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let h = f.from_rational(&half).unwrap();
        assert_eq!(h.mul(&f.element(2)).value, 1);
        let bad = BigRational::new(1.into(), 101.into());
        assert!(f.from_rational(&bad).is_none());
        assert_eq!(f.from_i64(-1).value, 100);
    }
}
