use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::{Param, ParamMonomial};
use super::poly::ParamPoly;
use super::qpoly::QPoly;
use super::AlgebraError;

/// Truncated power series in `q` whose coefficients are [`ParamPoly`]s.
///
/// `order` is inclusive: the coefficients of `q^0 ..= q^order` are exact and
/// nothing above is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<ParamPoly>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            order,
            coeffs: vec![ParamPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ParamPoly::one(), order)
    }

    pub fn constant(c: ParamPoly, order: usize) -> Self {
        Self::term(c, 0, order)
    }

    /// `c * q^e`, which is zero when `e > order`.
    pub fn term(c: ParamPoly, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// `m * q^e`
    pub fn monomial(m: ParamMonomial, e: usize, order: usize) -> Self {
        Self::term(ParamPoly::monomial(m), e, order)
    }

    /// Parameter-free series from a dense `q`-polynomial, truncated.
    pub fn from_qpoly(p: &QPoly, order: usize) -> Self {
        Self::from_qpoly_times(p, &ParamMonomial::ONE, order)
    }

    /// `m * p(q)`, truncated.
    pub fn from_qpoly_times(p: &QPoly, m: &ParamMonomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in p.coeffs().iter().enumerate().take(order + 1) {
            s.coeffs[e] = ParamPoly::term(c.clone(), *m);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: usize) -> &ParamPoly {
        &self.coeffs[e]
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, e: usize) -> &mut ParamPoly {
        &mut self.coeffs[e]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ParamPoly::is_zero)
    }

    /// Lowest `q`-exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of `q^e * m` as an integer.
    pub fn coeff_of(&self, e: usize, m: &ParamMonomial) -> BigInt {
        self.coeffs.get(e).map(|p| p.coeff(m)).unwrap_or_default()
    }

    /// The parameter-free part as a dense polynomial.
    pub fn constant_part(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|p| p.coeff(&ParamMonomial::ONE)).collect())
    }

    /// Coefficient of a parameter monomial, as a dense polynomial in `q`.
    pub fn param_coeff(&self, m: &ParamMonomial) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|p| p.coeff(m)).collect())
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let order = order.min(self.order);
        QSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &QSeries) {
        if other.order < self.order {
            *self = self.truncate(other.order);
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &QSeries) {
        if other.order < self.order {
            *self = self.truncate(other.order);
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a -= b;
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order.min(other.order);
        let mut out = QSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                out.coeffs[i + j] += &prod;
            }
        }
        out
    }

    /// Multiplies every coefficient by a parameter polynomial.
    pub fn scale(&self, c: &ParamPoly) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| if p.is_zero() { ParamPoly::zero() } else { p * c }).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ParamMonomial) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.mul_monomial(m)).collect(),
        }
    }

    /// Multiplies by `q^e`, keeping the order.
    pub fn shift_up(&self, e: usize) -> QSeries {
        let mut out = QSeries::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + e > self.order {
                break;
            }
            out.coeffs[i + e] = c.clone();
        }
        out
    }

    /// Multiplies by `q^delta` for any integer `delta`.
    ///
    /// Negative shifts divide by `q^|delta|`; the dropped low coefficients must
    /// vanish and the result loses `|delta|` orders of precision.
    pub fn shift(&self, delta: i64) -> Result<QSeries, AlgebraError> {
        if delta >= 0 {
            return Ok(self.shift_up(delta as usize));
        }
        let k = (-delta) as usize;
        if k > self.order {
            return Err(AlgebraError::InsufficientOrder { needed: k, have: self.order });
        }
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(AlgebraError::NegativeQPower(v as i64 - k as i64));
            }
        }
        Ok(QSeries {
            order: self.order - k,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse up to the order.
    ///
    /// The `q^0` coefficient must be `±m` for a single (Laurent) monomial `m`.
    pub fn invert(&self) -> Result<QSeries, AlgebraError> {
        let (sign, m) = self.coeffs[0]
            .as_signed_monomial()
            .ok_or(AlgebraError::NonUnitConstantTerm)?;
        let c0_inv = ParamPoly::term(sign, m.inverse());
        let mut inv = QSeries::zero(self.order);
        inv.coeffs[0] = c0_inv.clone();
        for n in 1..=self.order {
            let mut acc = ParamPoly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || inv.coeffs[n - k].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[k] * &inv.coeffs[n - k]);
            }
            inv.coeffs[n] = -&(&acc * &c0_inv);
        }
        Ok(inv)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ParamPoly) -> ParamPoly) -> QSeries {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(&mut f).collect(),
        }
    }

    /// Keeps the terms whose parameter monomial satisfies `keep`.
    pub fn filter_monomials(&self, mut keep: impl FnMut(&ParamMonomial) -> bool) -> QSeries {
        self.map_coeffs(|p| p.filter(&mut keep))
    }

    /// Sets `param` to zero.
    pub fn drop_param(&self, param: Param) -> QSeries {
        self.map_coeffs(|p| p.drop_param(param))
    }

    /// True when no coefficient carries a negative parameter exponent.
    pub fn is_polynomial_in_params(&self) -> bool {
        self.coeffs.iter().all(ParamPoly::is_polynomial)
    }

    /// Iterates over nonzero `(q-exponent, monomial, coefficient)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &ParamMonomial, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(e, p)| p.terms().map(move |(m, c)| (e, m, c)))
    }

    /// Dilation and translation: `q -> q^modulus` and each parameter
    /// `X -> q^(-shift_X)` (the parameter disappears), the result truncated
    /// at `new_order`.
    ///
    /// Every input term `q^e X^a ...` lands on `q^(modulus*e - sum shift_X a_X)`.
    /// The caller must make sure the input order is large enough that no term
    /// beyond it can land at or below `new_order`; terms landing on negative
    /// exponents are reported as an error.
    pub fn specialize(&self, modulus: usize, shifts: &[(Param, i64)], new_order: usize) -> Result<QSeries, AlgebraError> {
        let mut out = QSeries::zero(new_order);
        for (e, m, c) in self.terms() {
            let mut target = (modulus * e) as i64;
            let mut rest = *m;
            for &(p, s) in shifts {
                target -= s * m.exp(p) as i64;
                rest = rest.with_exp(p, 0);
            }
            if target < 0 {
                return Err(AlgebraError::NegativeQPower(target));
            }
            if target as usize <= new_order {
                out.coeffs[target as usize].add_term(rest, c.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let single = c.len() == 1;
            match (e, single) {
                (0, _) => write!(f, "({})", c)?,
                (_, true) if c.coeff(&ParamMonomial::ONE).is_one() => write!(f, "q^{}", e)?,
                _ => write!(f, "({})*q^{}", c, e)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// Finite product of series; empty product is one.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a QSeries>, order: usize) -> QSeries {
    let mut acc = QSeries::one(order);
    for f in factors {
        acc = acc.mul(f);
    }
    acc
}

/// Sum of series; empty sum is zero.
pub fn sum<'a>(terms: impl IntoIterator<Item = &'a QSeries>, order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for t in terms {
        acc.add_assign(t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64], order: usize) -> QSeries {
        QSeries::from_qpoly(&QPoly::from_i64s(cs), order)
    }

    #[test]
    fn difference_of_squares() {
        let x = qp(&[1, 1], 3);
        let y = qp(&[1, -1], 3);
        assert_eq!(x.mul(&y), qp(&[1, 0, -1], 3));
    }

    #[test]
    fn additive_identity() {
        let x = qp(&[3, 0, -2, 7], 3);
        assert_eq!(x.add(&QSeries::zero(3)), x);
    }

    #[test]
    fn monomial_product_lands_on_q3() {
        let a = QSeries::monomial(ParamMonomial::var(Param::A), 1, 3);
        let b = QSeries::monomial(ParamMonomial::var(Param::B), 2, 3);
        assert_eq!(a.mul(&b), QSeries::monomial(ParamMonomial::abcd(1, 1, 0, 0), 3, 3));
    }

    #[test]
    fn invert_geometric() {
        assert_eq!(qp(&[1, -1], 3).invert().unwrap(), qp(&[1, 1, 1, 1], 3));
        assert_eq!(QSeries::one(5).invert().unwrap(), QSeries::one(5));
    }

    #[test]
    fn invert_rejects_non_monomial_constant() {
        let c = &ParamPoly::one() + &ParamPoly::var(Param::A);
        let x = QSeries::constant(c, 4);
        assert_eq!(x.invert(), Err(AlgebraError::NonUnitConstantTerm));
        assert_eq!(QSeries::zero(2).invert(), Err(AlgebraError::NonUnitConstantTerm));
    }

    #[test]
    fn invert_laurent_unit() {
        // (-A^-1) * (1 - q) inverted is -A (1 + q + q^2)
        let m = ParamMonomial::var(Param::A).inverse();
        let x = qp(&[1, -1], 2).mul_monomial(&m).scale_int(&BigInt::from(-1));
        let inv = x.invert().unwrap();
        let expect = qp(&[1, 1, 1], 2).mul_monomial(&ParamMonomial::var(Param::A)).scale_int(&BigInt::from(-1));
        assert_eq!(inv, expect);
    }

    #[test]
    fn negative_shift_checks_vanishing() {
        let x = qp(&[0, 0, 1, 1], 5);
        assert_eq!(x.shift(-2).unwrap(), qp(&[1, 1], 3));
        assert!(matches!(x.shift(-3), Err(AlgebraError::NegativeQPower(_))));
    }

    #[test]
    fn specialize_dilates_and_translates() {
        // A q -> q^(15-8) = q^7
        let x = QSeries::monomial(ParamMonomial::var(Param::A), 1, 2);
        let y = x.specialize(15, &[(Param::A, 8)], 10).unwrap();
        assert_eq!(y, QSeries::monomial(ParamMonomial::ONE, 7, 10));
    }
}
