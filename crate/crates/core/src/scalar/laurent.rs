use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A Laurent polynomial in q with integer coefficients.
///
/// Terms are held sorted by ascending exponent with no zero coefficients, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentScalar {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// c * q^k, dropped entirely when c = 0.
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            LaurentScalar {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, BigInt::from(n))
    }

    /// q^k.
    pub fn q_power(exp: i64) -> Self {
        Self::monomial(exp, BigInt::one())
    }

    /// (-q)^k for any integer k, i.e. (-1)^k q^k.
    pub fn neg_q_power(exp: i64) -> Self {
        let sign = if exp.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(exp, BigInt::from(sign))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn from_terms(mut terms: Vec<(i64, BigInt)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc += c;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((e, c)),
            }
        }
        LaurentScalar { terms: out }
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn trailing_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Largest exponent with nonzero coefficient.
    pub fn leading_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Some(k) when the scalar is exactly q^k with coefficient one.
    pub fn as_unit_monomial(&self) -> Option<i64> {
        if self.terms.len() == 1 && self.terms[0].1.is_one() {
            Some(self.terms[0].0)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        LaurentScalar { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(k) = self.as_unit_monomial() {
            return other.shift(k);
        }
        if let Some(k) = other.as_unit_monomial() {
            return self.shift(k);
        }
        let mut acc: Vec<(i64, BigInt)> = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc.push((ea + eb, ca * cb));
            }
        }
        Self::from_terms(acc)
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Exact division in Z[q, q^-1]; errors when the quotient does not exist
    /// in the ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, Error> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(k) = divisor.as_unit_monomial() {
            return Ok(self.shift(-k));
        }
        // Shift both operands to ordinary polynomials and long-divide from the
        // top; the quotient picks up the net shift at the end.
        let sa = self.trailing_exp().unwrap();
        let sb = divisor.trailing_exp().unwrap();
        let mut rem = self.shift(-sa);
        let den = divisor.shift(-sb);
        let den_lead_exp = den.leading_exp().unwrap();
        let den_lead_coeff = den.leading_coeff().unwrap().clone();
        let mut quot: Vec<(i64, BigInt)> = Vec::new();
        while !rem.is_zero() {
            let re = rem.leading_exp().unwrap();
            let rc = rem.leading_coeff().unwrap();
            if re < den_lead_exp {
                return Err(Error::InexactDivision(format!(
                    "{} does not divide {}",
                    divisor, self
                )));
            }
            let (q, r) = num_integer::div_rem(rc.clone(), den_lead_coeff.clone());
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "leading coefficient of {} does not divide that of {}",
                    divisor, rem
                )));
            }
            let t = Self::monomial(re - den_lead_exp, q);
            rem = rem.sub(&t.mul(&den));
            quot.push((t.terms[0].0, t.terms[0].1.clone()));
        }
        Ok(Self::from_terms(quot).shift(sa - sb))
    }

    /// Gcd of all integer coefficients (positive), zero for the zero scalar.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }
}

impl fmt::Display for LaurentScalar {
    /// Human form with exponents descending, e.g. `q^2 - 2*q + 1` or `-q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", mag)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}*q^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentScalar {
        LaurentScalar::q_power(1)
    }

    #[test]
    fn monomial_zero_coefficient_is_zero() {
        assert!(LaurentScalar::monomial(3, BigInt::zero()).is_zero());
    }

    #[test]
    fn addition_cancels_terms() {
        let a = q().sub(&LaurentScalar::one());
        let b = LaurentScalar::one().sub(&q());
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn product_of_inverse_powers() {
        let a = LaurentScalar::q_power(-2);
        let b = LaurentScalar::q_power(5);
        assert_eq!(a.mul(&b), LaurentScalar::q_power(3));
    }

    #[test]
    fn q_minus_one_squared() {
        let d = q().sub(&LaurentScalar::one());
        let sq = d.mul(&d);
        let expected = LaurentScalar::from_terms(vec![
            (2, BigInt::from(1)),
            (1, BigInt::from(-2)),
            (0, BigInt::from(1)),
        ]);
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "q^2 - 2*q + 1");
    }

    #[test]
    fn exact_division_round_trip() {
        let a = LaurentScalar::from_terms(vec![(3, BigInt::from(2)), (-1, BigInt::from(-6))]);
        let b = LaurentScalar::from_terms(vec![(1, BigInt::from(2)), (0, BigInt::from(4))]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let a = q().add(&LaurentScalar::one());
        let b = q().sub(&LaurentScalar::one());
        assert!(a.div_exact(&b).is_err());
        let two = LaurentScalar::from_int(2);
        assert!(q().add(&LaurentScalar::one()).div_exact(&two).is_err());
    }

    #[test]
    fn division_by_unit_monomial() {
        let a = q().add(&LaurentScalar::one());
        let u = LaurentScalar::q_power(-4);
        assert_eq!(a.div_exact(&u).unwrap(), a.shift(4));
    }

    #[test]
    fn neg_q_power_signs() {
        assert_eq!(
            LaurentScalar::neg_q_power(-1),
            LaurentScalar::monomial(-1, BigInt::from(-1))
        );
        assert_eq!(
            LaurentScalar::neg_q_power(-2),
            LaurentScalar::monomial(-2, BigInt::from(1))
        );
    }

    #[test]
    fn unit_monomial_detection() {
        assert_eq!(LaurentScalar::q_power(5).as_unit_monomial(), Some(5));
        assert_eq!(LaurentScalar::one().as_unit_monomial(), Some(0));
        assert_eq!(LaurentScalar::from_int(2).as_unit_monomial(), None);
        assert_eq!(q().add(&LaurentScalar::one()).as_unit_monomial(), None);
    }

    #[test]
    fn display_negative_leading_term() {
        let s = LaurentScalar::monomial(-1, BigInt::from(-1)).add(&LaurentScalar::from_int(3));
        assert_eq!(s.to_string(), "3 - q^-1");
    }
}
