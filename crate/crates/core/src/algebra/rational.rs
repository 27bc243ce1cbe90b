use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::qpoly::QPoly;
use super::AlgebraError;

/// Ratio of two polynomials in `q`, kept reduced with a positive leading
/// denominator coefficient.
#[derive(Clone, Debug)]
pub struct QRational {
    num: QPoly,
    den: QPoly,
}

impl QRational {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZeroRational);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRational { num: p, den: QPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn integer(c: i64) -> Self {
        Self::from_poly(QPoly::monomial(c, 0))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(QPoly::monomial(1, e as usize))
        } else {
            QRational {
                num: QPoly::one(),
                den: QPoly::monomial(1, (-e) as usize),
            }
        }
    }

    /// `1 - q^e` for any integer `e`, which is zero for `e = 0`.
    pub fn one_minus_q_pow(e: i64) -> Self {
        Self::one().sub(&Self::q_pow(e))
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QRational { num, den: QPoly::one() };
        }
        let g = if den.degree() == Some(0) && den.coeff(0).abs().is_one() {
            QPoly::one()
        } else {
            num.gcd(&den)
        };
        let (mut num, mut den) = if g == QPoly::one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        QRational { num, den }
    }

    pub fn add(&self, other: &QRational) -> QRational {
        if self.den == other.den {
            return Self::reduced(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::reduced(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &QRational) -> QRational {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QRational {
        QRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &QRational) -> QRational {
        Self::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &QRational) -> Result<QRational, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZeroRational);
        }
        Ok(Self::reduced(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn scale(&self, c: i64) -> QRational {
        Self::reduced(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// Product of a list of factors.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a QRational>) -> QRational {
        factors.into_iter().fold(QRational::one(), |acc, f| acc.mul(f))
    }

    /// Cross-multiplication equality.
    pub fn eq_cross(&self, other: &QRational) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl PartialEq for QRational {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl Eq for QRational {}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
