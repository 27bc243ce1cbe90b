//! Triangular numbers, `q`-Pochhammer symbols and Gaussian binomials.

use num_bigint::BigInt;

use super::monomial::ParamMonomial;
use super::poly::ParamPoly;
use super::qpoly::QPoly;
use super::series::QSeries;
use super::AlgebraError;

/// `T_n = n(n+1)/2` for any integer `n`; `T_n = T_{-n-1}`.
pub fn triangular(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// Length of a Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(i64),
    Infinite,
}

/// A Pochhammer base `sign * m * q^qpow`: a signed parameter monomial times a
/// power of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochBase {
    pub sign: i32,
    pub mono: ParamMonomial,
    pub qpow: i64,
}

impl PochBase {
    pub fn new(sign: i32, mono: ParamMonomial, qpow: i64) -> Self {
        assert!(sign == 1 || sign == -1);
        PochBase { sign, mono, qpow }
    }

    /// The base `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::new(1, ParamMonomial::ONE, k)
    }

    pub fn times_q(self, k: i64) -> Self {
        PochBase { qpow: self.qpow + k, ..self }
    }

    /// `q / base`
    pub fn q_over(self) -> Self {
        PochBase {
            sign: self.sign,
            mono: self.mono.inverse(),
            qpow: 1 - self.qpow,
        }
    }

    /// `1 - base * q^j` as a series, or an error when the factor needs a
    /// negative power of `q`.
    fn factor(&self, j: i64, order: usize) -> Result<QSeries, AlgebraError> {
        let e = self.qpow + j;
        if e < 0 {
            return Err(AlgebraError::NegativeQPower(e));
        }
        let mut f = QSeries::one(order);
        if (e as usize) <= order {
            f.coeff_mut(e as usize).add_term(self.mono, BigInt::from(-self.sign));
        }
        Ok(f)
    }
}

/// `(base; q)_n` truncated at `order`, including `n = ∞` and negative `n`.
pub fn poch(base: PochBase, n: PochLen, order: usize) -> Result<QSeries, AlgebraError> {
    poch_step(base, 1, n, order)
}

/// `(base; q^step)_n`.
///
/// Negative lengths are `1/(a p^{-n}; p)_n` when that product has constant
/// term 1, and otherwise the reflection `(a; p)_{-n} = (-1)^n a^{-n} p^{T_n} / (p/a; p)_n`
/// with `p = q^step`, so `p/a` must have a unit constant term.
pub fn poch_step(base: PochBase, step: usize, n: PochLen, order: usize) -> Result<QSeries, AlgebraError> {
    assert!(step > 0);
    match n {
        PochLen::Finite(0) => Ok(QSeries::one(order)),
        PochLen::Finite(n) if n > 0 => {
            let mut acc = QSeries::one(order);
            for j in 0..n {
                let f = base.factor(j * step as i64, order)?;
                acc = mul_binomial(&acc, &f, order);
            }
            Ok(acc)
        }
        PochLen::Finite(n) => {
            let n = -n;
            let shifted = base.times_q(-n * step as i64);
            if shifted.qpow >= 1 {
                // every factor 1 - a q^{-j} already has constant term 1
                return poch_step(shifted, step, PochLen::Finite(n), order)?.invert();
            }
            // (p/a; p)_n
            let qa = PochBase {
                sign: base.sign,
                mono: base.mono.inverse(),
                qpow: step as i64 - base.qpow,
            };
            let den = poch_step(qa, step, PochLen::Finite(n), order)?;
            let inv = den.invert()?;
            let qexp = step as i64 * triangular(n) - n * base.qpow;
            let sign = if n % 2 == 1 { -base.sign.pow(n as u32) } else { base.sign.pow(n as u32) };
            let pre = ParamPoly::term(sign, base.mono.pow(-(n as i32)));
            inv.scale(&pre).shift(qexp)
        }
        PochLen::Infinite => {
            if base.qpow <= 0 {
                return Err(AlgebraError::NonStabilizingProduct);
            }
            let mut acc = QSeries::one(order);
            let mut j = 0i64;
            while base.qpow + j <= order as i64 {
                let f = base.factor(j, order)?;
                acc = mul_binomial(&acc, &f, order);
                j += step as i64;
            }
            Ok(acc)
        }
    }
}

/// Multiplies by a factor of the form `1 + c q^e` in linear time.
fn mul_binomial(acc: &QSeries, f: &QSeries, order: usize) -> QSeries {
    if f.coeff(0) != &ParamPoly::one() {
        return acc.mul(f);
    }
    let e = match f.coeffs().iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()) {
        Some((e, _)) => e,
        None => return acc.clone(),
    };
    let c = f.coeff(e);
    let mut out = acc.clone();
    for i in (e..=order).rev() {
        let src = acc.coeff(i - e);
        if !src.is_zero() {
            let add = src * c;
            *out.coeff_mut(i) += &add;
        }
    }
    out
}

/// `(q; q)_n` as a polynomial, `n >= 0`.
pub fn qfactorial(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, k| &acc * &QPoly::one_minus_q_pow(k))
}

/// Gaussian binomial `[m choose i]_q`; zero unless `0 <= i <= m`.
pub fn qbinomial_poly(m: i64, i: i64) -> QPoly {
    if m < 0 || i < 0 || i > m {
        return QPoly::zero();
    }
    let (m, i) = (m as usize, i.min(m - i) as usize);
    // Pascal-type recurrence on rows keeps everything in Z[q]
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for r in 1..=m {
        let mut next = Vec::with_capacity((r + 1).min(i + 1));
        for k in 0..=r.min(i) {
            // [r,k] = [r-1,k-1] + q^k [r-1,k]
            let left = if k >= 1 { row.get(k - 1).cloned().unwrap_or_default() } else { QPoly::zero() };
            let right = if k <= r - 1 { row.get(k).map(|p| p.shift(k)).unwrap_or_default() } else { QPoly::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row.get(i).cloned().unwrap_or_else(QPoly::zero)
}

/// Gaussian binomial as a parameter-free series (exact for `order >= i(m-i)`).
pub fn qbinomial(m: i64, i: i64, order: usize) -> QSeries {
    QSeries::from_qpoly(&qbinomial_poly(m, i), order)
}

/// `1/(q;q)_n` truncated; zero for negative `n`.
pub fn inv_qfactorial(n: i64, order: usize) -> QPoly {
    if n < 0 {
        return QPoly::zero();
    }
    QPoly::one().div_qfact_trunc(n as usize, order)
}

/// Table of Gaussian binomials `[m choose i]` for `0 <= i <= m`.
pub fn qbinomial_row(m: usize) -> Vec<QPoly> {
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for r in 1..=m {
        let mut next = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let left = if k >= 1 { row[k - 1].clone() } else { QPoly::zero() };
            let right = if k < r { row[k].shift(k) } else { QPoly::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Param;

    #[test]
    fn triangular_values() {
        assert_eq!(triangular(0), 0);
        assert_eq!(triangular(4), 10);
        assert_eq!(triangular(-1), 0);
        assert_eq!(triangular(-5), triangular(4));
    }

    #[test]
    fn empty_product_is_one() {
        let a = PochBase::new(1, ParamMonomial::var(Param::A), 0);
        assert_eq!(poch(a, PochLen::Finite(0), 5).unwrap(), QSeries::one(5));
    }

    #[test]
    fn q_q_2() {
        let p = poch(PochBase::q_pow(1), PochLen::Finite(2), 5).unwrap();
        assert_eq!(p, QSeries::from_qpoly(&QPoly::from_i64s(&[1, -1, -1, 1]), 5));
    }

    #[test]
    fn negative_length_matches_reflection() {
        // (A)_{-1} = -A^{-1} q / (1 - q/A)
        let order = 6;
        let a = PochBase::new(1, ParamMonomial::var(Param::A), 0);
        let lhs = poch(a, PochLen::Finite(-1), order).unwrap();
        let ainv = ParamMonomial::var(Param::A).inverse();
        let one_minus = QSeries::one(order).sub(&QSeries::monomial(ainv, 1, order));
        let rhs = one_minus
            .invert()
            .unwrap()
            .shift_up(1)
            .scale(&ParamPoly::term(-1, ainv));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn infinite_needs_positive_q_power() {
        let a = PochBase::new(-1, ParamMonomial::var(Param::A), 0);
        assert_eq!(poch(a, PochLen::Infinite, 4), Err(AlgebraError::NonStabilizingProduct));
        let aq = a.times_q(1);
        let p = poch(aq, PochLen::Infinite, 4).unwrap();
        // A-linear part of (-Aq)_inf is q + q^2 + q^3 + q^4
        assert_eq!(p.param_coeff(&ParamMonomial::var(Param::A)), QPoly::from_i64s(&[0, 1, 1, 1, 1]));
    }

    #[test]
    fn qbinomial_small_values() {
        assert_eq!(qbinomial_poly(5, 0), QPoly::one());
        assert_eq!(qbinomial_poly(2, 1), QPoly::from_i64s(&[1, 1]));
        assert!(qbinomial_poly(3, 5).is_zero());
        assert!(qbinomial_poly(-1, 0).is_zero());
        assert_eq!(qbinomial_row(4)[2], qbinomial_poly(4, 2));
        // [4,2] = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(qbinomial_poly(4, 2), QPoly::from_i64s(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn qbinomial_agrees_with_factorial_ratio() {
        for m in 0..8usize {
            for i in 0..=m {
                let num = qfactorial(m);
                let den = &qfactorial(i) * &qfactorial(m - i);
                assert_eq!(num.div_exact(&den).unwrap(), qbinomial_poly(m as i64, i as i64));
            }
        }
    }
}
