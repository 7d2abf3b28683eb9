use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::LaurentScalar;

/// A commutative coefficient ring with a distinguished invertible element q.
///
/// Implementations carry whatever context their elements need (a modulus, a
/// specialization value), so elements themselves stay plain data.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// q^k for any integer k.
    fn q_power(&self, k: i64) -> Self::Elem;

    fn q_minus_one(&self) -> Self::Elem {
        self.sub(&self.q_power(1), &self.one())
    }
}

/// The generic ring Z[q, q^-1].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LaurentRing;

impl CoeffRing for LaurentRing {
    type Elem = LaurentScalar;

    fn zero(&self) -> LaurentScalar {
        LaurentScalar::zero()
    }
    fn one(&self) -> LaurentScalar {
        LaurentScalar::one()
    }
    fn is_zero(&self, a: &LaurentScalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        a.add(b)
    }
    fn sub(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        a.sub(b)
    }
    fn mul(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        a.mul(b)
    }
    fn neg(&self, a: &LaurentScalar) -> LaurentScalar {
        a.neg()
    }
    fn q_power(&self, k: i64) -> LaurentScalar {
        LaurentScalar::q_power(k)
    }
}

/// The rationals with q specialized to a fixed nonzero value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatRing {
    pub q0: BigRational,
}

impl RatRing {
    pub fn new(q0: BigRational) -> Self {
        assert!(!q0.is_zero(), "q0 must be invertible");
        RatRing { q0 }
    }

    pub fn from_int(q0: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(q0)))
    }
}

impl CoeffRing for RatRing {
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
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn q_power(&self, k: i64) -> BigRational {
        if k == 0 {
            return BigRational::one();
        }
        let mag = self
            .q0
            .pow(k.unsigned_abs().try_into().expect("exponent fits i32"));
        if k < 0 {
            mag.recip()
        } else {
            mag
        }
    }
}

/// The integers mod a prime with q specialized to a fixed nonzero residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpRing {
    pub p: u64,
    pub q0: u64,
}

impl FpRing {
    pub fn new(p: u64, q0: u64) -> Self {
        assert!(q0 % p != 0, "q0 must be invertible mod p");
        FpRing { p, q0: q0 % p }
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc as u128 * base as u128 % self.p as u128) as u64;
            }
            base = (base as u128 * base as u128 % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl CoeffRing for FpRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (*a as u128 * *b as u128 % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn q_power(&self, k: i64) -> u64 {
        if k >= 0 {
            self.pow(self.q0, k as u64)
        } else {
            self.pow(self.pow(self.q0, self.p - 2), k.unsigned_abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_powers_compose() {
        let rings: Vec<Box<dyn Fn(i64) -> String>> = vec![
            Box::new(|k| format!("{:?}", LaurentRing.q_power(k))),
            Box::new(|k| format!("{:?}", RatRing::from_int(2).q_power(k))),
            Box::new(|k| format!("{:?}", FpRing::new(5, 2).q_power(k))),
        ];
        let _ = rings;
        let fp = FpRing::new(5, 2);
        for a in -3i64..4 {
            for b in -3i64..4 {
                assert_eq!(
                    fp.mul(&fp.q_power(a), &fp.q_power(b)),
                    fp.q_power(a + b)
                );
            }
        }
        let rat = RatRing::from_int(-2);
        assert_eq!(rat.mul(&rat.q_power(3), &rat.q_power(-3)), rat.one());
    }

    #[test]
    fn q_minus_one_matches_definition() {
        let fp = FpRing::new(3, 1);
        assert_eq!(fp.q_minus_one(), 0);
        let rat = RatRing::from_int(2);
        assert_eq!(rat.q_minus_one(), BigRational::one());
    }
}
