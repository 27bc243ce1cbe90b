use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Param, ParamMonomial};

/// Sparse Laurent polynomial in the registry parameters with big-integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, BigInt>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, ParamMonomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: ParamMonomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn monomial(m: ParamMonomial) -> Self {
        Self::term(1, m)
    }

    pub fn var(p: Param) -> Self {
        Self::monomial(ParamMonomial::var(p))
    }

    /// Elementary symmetric polynomial `e_k(A, B, C, D)`.
    pub fn elementary_abcd(k: usize) -> Self {
        let mut out = ParamPoly::zero();
        for mask in 0u32..16 {
            if mask.count_ones() as usize == k {
                let e = |bit: u32| ((mask >> bit) & 1) as i32;
                out.add_term(ParamMonomial::abcd(e(0), e(1), e(2), e(3)), BigInt::one());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ParamMonomial, BigInt)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &ParamMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// If this is `±m` for a single monomial `m`, returns the sign and `m`.
    pub fn as_signed_monomial(&self) -> Option<(i32, ParamMonomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *m))
        } else if (-c).is_one() {
            Some((-1, *m))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: ParamMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * m * other`
    pub fn add_scaled(&mut self, other: &ParamPoly, c: &BigInt, m: &ParamMonomial) {
        for (mo, co) in &other.terms {
            self.add_term(*mo * *m, co * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ParamMonomial) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(mo, c)| (*mo * *m, c.clone())).collect(),
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&ParamMonomial) -> bool) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Substitutes every monomial by `c * m'` through `map` and collects.
    pub fn map_monomials(&self, mut map: impl FnMut(&ParamMonomial) -> (i32, ParamMonomial)) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let (s, m2) = map(m);
            out.add_term(m2, c * BigInt::from(s));
        }
        out
    }

    /// True when no monomial carries a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_polynomial())
    }

    /// Sets `param` to zero: drops every term that carries it (positively).
    /// Terms with a negative power of `param` are kept untouched.
    pub fn drop_param(&self, param: Param) -> ParamPoly {
        self.filter(|m| m.exp(param) <= 0)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        ParamPoly::constant(c)
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut acc: std::collections::HashMap<ParamMonomial, BigInt> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(*m1 * *m2).or_default() += c1 * c2;
            }
        }
        ParamPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let a = ParamPoly::var(Param::A);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.to_string(), "0");
    }

    #[test]
    fn elementary_symmetric() {
        assert_eq!(ParamPoly::elementary_abcd(0), ParamPoly::one());
        assert_eq!(ParamPoly::elementary_abcd(3).len(), 4);
        assert_eq!(ParamPoly::elementary_abcd(4), ParamPoly::monomial(ParamMonomial::abcd(1, 1, 1, 1)));
    }

    #[test]
    fn signed_monomial_detection() {
        let m = ParamMonomial::abcd(0, 2, 0, 0);
        assert_eq!(ParamPoly::term(-1, m).as_signed_monomial(), Some((-1, m)));
        assert_eq!(ParamPoly::term(2, m).as_signed_monomial(), None);
        let one_plus_a = &ParamPoly::one() + &ParamPoly::var(Param::A);
        assert_eq!(one_plus_a.as_signed_monomial(), None);
    }

    #[test]
    fn display() {
        let p = &(&ParamPoly::var(Param::A) - &ParamPoly::constant(3)) + &ParamPoly::term(2, ParamMonomial::abcd(0, 1, 0, 0));
        assert_eq!(p.to_string(), "-3 + 2*B + A");
    }
}
