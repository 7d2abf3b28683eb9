use std::fmt;

use num_traits::Signed;

use crate::error::Error;
use crate::scalar::LaurentScalar;

/// An element of the fraction field of Z[q, q^-1].
///
/// The denominator is kept nonzero with trailing exponent zero and positive
/// leading coefficient, and the common integer content of numerator and
/// denominator is divided out. Full polynomial gcd reduction is not attempted,
/// so equality is decided cross-multiplicatively.
#[derive(Clone, Debug)]
pub struct FractionScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl FractionScalar {
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::InexactDivision("zero denominator".into()));
        }
        let mut f = FractionScalar { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn from_laurent(num: LaurentScalar) -> Self {
        FractionScalar {
            num,
            den: LaurentScalar::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentScalar::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    pub fn numerator(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentScalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentScalar::one();
            return;
        }
        let shift = self.den.trailing_exp().unwrap();
        self.den = self.den.shift(-shift);
        self.num = self.num.shift(-shift);
        if self.den.leading_coeff().unwrap().is_negative() {
            self.den = self.den.neg();
            self.num = self.num.neg();
        }
        let g = num_integer::gcd(self.num.content(), self.den.content());
        if !num_traits::One::is_one(&g) {
            self.num = self.num.div_exact(&LaurentScalar::monomial(0, g.clone())).unwrap();
            self.den = self.den.div_exact(&LaurentScalar::monomial(0, g)).unwrap();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn neg(&self) -> Self {
        FractionScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn inv(&self) -> Result<Self, Error> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl PartialEq for FractionScalar {
    /// a/b = c/d iff a*d = c*b.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for FractionScalar {}

impl fmt::Display for FractionScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
