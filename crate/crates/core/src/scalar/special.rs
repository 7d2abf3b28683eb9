use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::LaurentScalar;

/// A specialization of the formal parameter q to an invertible value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// q -> q0 in the rational numbers, q0 nonzero.
    Rational { q0: BigRational },
    /// q -> q0 in the integers mod a prime p, q0 nonzero mod p.
    Modular { p: u64, q0: u64 },
}

impl Specialization {
    pub fn rational(q0: BigRational) -> Result<Self, Error> {
        if q0.is_zero() {
            return Err(Error::InvalidSpecialization(
                "q0 = 0 is not invertible".into(),
            ));
        }
        Ok(Specialization::Rational { q0 })
    }

    pub fn rational_int(q0: i64) -> Result<Self, Error> {
        Self::rational(BigRational::from_integer(BigInt::from(q0)))
    }

    pub fn modular(p: u64, q0: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidSpecialization(format!("{} is not prime", p)));
        }
        if q0 % p == 0 {
            return Err(Error::InvalidSpecialization(format!(
                "q0 = {} is zero mod {}",
                q0, p
            )));
        }
        Ok(Specialization::Modular { p, q0: q0 % p })
    }

    /// Ring homomorphism Z[q, q^-1] -> target applied to one scalar.
    pub fn apply(&self, s: &LaurentScalar) -> SpecializedScalar {
        match self {
            Specialization::Rational { q0 } => {
                let mut acc = BigRational::zero();
                for (e, c) in s.terms() {
                    acc += BigRational::from_integer(c.clone()) * rat_pow(q0, *e);
                }
                SpecializedScalar::Rat(acc)
            }
            Specialization::Modular { p, q0 } => {
                let mut acc: u64 = 0;
                for (e, c) in s.terms() {
                    let cm = mod_of_bigint(c, *p);
                    let qe = mod_pow_signed(*q0, *e, *p);
                    acc = (acc + mul_mod(cm, qe, *p)) % p;
                }
                SpecializedScalar::Fp { p: *p, value: acc }
            }
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Specialization::Rational { q0 } => format!("rat:{}", q0),
            Specialization::Modular { p, q0 } => format!("fp:{},{}", p, q0),
        }
    }
}

/// A value in the target domain of a specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecializedScalar {
    Rat(BigRational),
    Fp { p: u64, value: u64 },
}

impl SpecializedScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            SpecializedScalar::Rat(v) => v.is_zero(),
            SpecializedScalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (SpecializedScalar::Rat(a), SpecializedScalar::Rat(b)) => {
                SpecializedScalar::Rat(a + b)
            }
            (SpecializedScalar::Fp { p, value: a }, SpecializedScalar::Fp { p: p2, value: b }) => {
                assert_eq!(p, p2, "mixed moduli");
                SpecializedScalar::Fp {
                    p: *p,
                    value: (a + b) % p,
                }
            }
            _ => panic!("mixed specialization domains"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            SpecializedScalar::Rat(a) => SpecializedScalar::Rat(-a),
            SpecializedScalar::Fp { p, value } => SpecializedScalar::Fp {
                p: *p,
                value: (p - value % p) % p,
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (SpecializedScalar::Rat(a), SpecializedScalar::Rat(b)) => {
                SpecializedScalar::Rat(a * b)
            }
            (SpecializedScalar::Fp { p, value: a }, SpecializedScalar::Fp { p: p2, value: b }) => {
                assert_eq!(p, p2, "mixed moduli");
                SpecializedScalar::Fp {
                    p: *p,
                    value: mul_mod(*a, *b, *p),
                }
            }
            _ => panic!("mixed specialization domains"),
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        match self {
            SpecializedScalar::Rat(a) => {
                if a.is_zero() {
                    Err(Error::InexactDivision("inverse of zero".into()))
                } else {
                    Ok(SpecializedScalar::Rat(a.recip()))
                }
            }
            SpecializedScalar::Fp { p, value } => {
                if *value == 0 {
                    Err(Error::InexactDivision("inverse of zero".into()))
                } else {
                    Ok(SpecializedScalar::Fp {
                        p: *p,
                        value: mod_pow(*value, p - 2, *p),
                    })
                }
            }
        }
    }

    /// The value as an integer, for Smith normal form at q0 = 1 or -1.
    pub fn to_integer(&self) -> Result<BigInt, Error> {
        match self {
            SpecializedScalar::Rat(v) => {
                if v.denom().is_one() {
                    Ok(v.numer().clone())
                } else {
                    Err(Error::NotIntegral {
                        q0: "rational".into(),
                        value: v.to_string(),
                    })
                }
            }
            SpecializedScalar::Fp { value, .. } => Ok(BigInt::from(*value)),
        }
    }
}

impl fmt::Display for SpecializedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecializedScalar::Rat(v) => write!(f, "{}", v),
            SpecializedScalar::Fp { value, .. } => write!(f, "{}", value),
        }
    }
}

/// The default verification battery: rational q0 in {1, -1, 2, 1/2}, all
/// nonzero q0 mod 3 and mod 5, and a fixed sample of nonzero q0 mod 101.
pub fn default_battery() -> Vec<Specialization> {
    let mut battery = Vec::new();
    for q0 in [1i64, -1, 2] {
        battery.push(Specialization::rational_int(q0).unwrap());
    }
    battery.push(
        Specialization::rational(BigRational::new(BigInt::from(1), BigInt::from(2))).unwrap(),
    );
    for q0 in 1..3u64 {
        battery.push(Specialization::modular(3, q0).unwrap());
    }
    for q0 in 1..5u64 {
        battery.push(Specialization::modular(5, q0).unwrap());
    }
    for q0 in [1u64, 2, 50, 100] {
        battery.push(Specialization::modular(101, q0).unwrap());
    }
    battery
}

fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let mag = base.pow(exp.unsigned_abs().try_into().expect("exponent fits i32"));
    if exp < 0 {
        mag.recip()
    } else {
        mag
    }
}

fn mod_of_bigint(c: &BigInt, p: u64) -> u64 {
    let m = c.abs() % BigInt::from(p);
    let m: u64 = m.try_into().unwrap();
    if c.is_negative() {
        (p - m) % p
    } else {
        m
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_pow_signed(base: u64, exp: i64, p: u64) -> u64 {
    if exp >= 0 {
        mod_pow(base, exp as u64, p)
    } else {
        mod_pow(mod_pow(base, p - 2, p), exp.unsigned_abs(), p)
    }
}

fn is_prime(n: u64) -> bool {
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
