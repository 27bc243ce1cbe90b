use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `q` with big-integer coefficients.
///
/// Coefficient `i` is the coefficient of `q^i`; trailing zeros are trimmed so
/// the zero polynomial has no coefficients. Doubles as a dense truncated
/// power series through the `*_trunc` methods.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * q^e`
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c.into();
        Self::new(coeffs)
    }

    /// `1 - q^k`
    pub fn one_minus_q_pow(k: usize) -> Self {
        if k == 0 {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::one();
        coeffs[k] = BigInt::from(-1);
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Drops every term above `q^order`.
    pub fn truncate(&self, order: usize) -> QPoly {
        QPoly::new(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn mul_trunc(&self, other: &QPoly, order: usize) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(order + 1);
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Multiplies by the power series `1/(1 - q^k)`, truncated at `order`.
    pub fn div_one_minus_q_pow_trunc(&self, k: usize, order: usize) -> QPoly {
        assert!(k > 0, "1/(1-q^0) is not a power series");
        let mut out = self.truncate(order).coeffs;
        if out.is_empty() {
            return QPoly::zero();
        }
        out.resize(order + 1, BigInt::zero());
        for e in k..=order {
            let prev = out[e - k].clone();
            out[e] += prev;
        }
        QPoly::new(out)
    }

    /// Multiplies by `1/(q;q)_n`, truncated at `order`.
    pub fn div_qfact_trunc(&self, n: usize, order: usize) -> QPoly {
        let mut out = self.truncate(order);
        for k in 1..=n.min(order.max(1)) {
            out = out.div_one_minus_q_pow_trunc(k, order);
        }
        out
    }

    /// Power-series inverse up to `q^order`. The constant term must be `±1`.
    pub fn inverse_trunc(&self, order: usize) -> Option<QPoly> {
        let c0 = self.coeffs.first()?;
        let sign = if c0.is_one() {
            BigInt::one()
        } else if (-c0).is_one() {
            BigInt::from(-1)
        } else {
            return None;
        };
        let mut inv = vec![BigInt::zero(); order + 1];
        inv[0] = sign.clone();
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[k] * &inv[n - k];
            }
            inv[n] = -(&sign * acc);
        }
        Some(QPoly::new(inv))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `d`; `d` must divide each exactly.
    pub fn div_exact_scalar(&self, d: &BigInt) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    pub fn primitive_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `d` (`lc(d)^k * self mod d`).
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            if t.is_zero() {
                r.pop();
                continue;
            }
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &t * dc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        QPoly::new(r).primitive_part()
    }

    /// Monic-up-to-sign gcd over `Z[q]`: primitive with positive leading
    /// coefficient (integer content gcd included).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        // common power of q first: cheap and very frequent here
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let mut a = self.unshift(v).primitive_part();
        let mut b = other.unshift(v).primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return QPoly::monomial(content, v);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r;
        }
        a.primitive_part().scale(&content).shift(v)
    }

    /// Divides by `q^v`; the low coefficients must vanish.
    fn unshift(&self, v: usize) -> QPoly {
        debug_assert!(self.coeffs.iter().take(v).all(|c| c.is_zero()));
        QPoly::new(self.coeffs.iter().skip(v).cloned().collect())
    }

    /// Exact polynomial division; returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let t = &r[top];
            if t.is_zero() {
                continue;
            }
            let (qc, rem) = t.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &qc * dc;
            }
            quot[shift] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::new(quot))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        QPoly::new(out)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let order = self.coeffs.len() + rhs.coeffs.len() - 2;
        self.mul_trunc(rhs, order)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", abs)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}*q^{}", abs, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let x = QPoly::one_minus_q_pow(1);
        assert_eq!(x.inverse_trunc(3).unwrap(), QPoly::from_i64s(&[1, 1, 1, 1]));
        assert_eq!(QPoly::one().div_one_minus_q_pow_trunc(1, 3), QPoly::from_i64s(&[1, 1, 1, 1]));
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1-q^2)(1-q^3) and (1-q^2)(1-q^5) share exactly (1-q^2)... up to (1-q) factors:
        // gcd = (1-q)(1+q) * (1-q) since both also contain (1-q) from the other factor.
        let a = &QPoly::one_minus_q_pow(2) * &QPoly::one_minus_q_pow(3);
        let b = &QPoly::one_minus_q_pow(2) * &QPoly::one_minus_q_pow(5);
        let g = a.gcd(&b);
        let expect = (&QPoly::one_minus_q_pow(2) * &QPoly::one_minus_q_pow(1)).primitive_part();
        assert_eq!(g, expect);
        assert!(a.div_exact(&g).is_some());
        assert!(b.div_exact(&g).is_some());
    }

    #[test]
    fn gcd_handles_q_powers_and_content() {
        let a = QPoly::from_i64s(&[0, 0, 4, 4]);
        let b = QPoly::from_i64s(&[0, 6]);
        assert_eq!(a.gcd(&b), QPoly::monomial(2, 1));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = QPoly::from_i64s(&[1, 0, 1]);
        assert!(a.div_exact(&QPoly::from_i64s(&[1, 1])).is_none());
        let b = QPoly::from_i64s(&[1, 0, -1]);
        assert_eq!(b.div_exact(&QPoly::from_i64s(&[1, 1])), Some(QPoly::from_i64s(&[1, -1])));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_i64s(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}
