use std::collections::BTreeMap;

use super::monomial::{Param, ParamMonomial};
use super::series::QSeries;

/// Laurent polynomial in `z` on a finite window `[zmin, zmax]` with
/// [`QSeries`] coefficients sharing one `q`-order.
///
/// The window is bookkeeping: a coefficient outside it is known to be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentZSeries {
    zmin: i32,
    zmax: i32,
    order: usize,
    coeffs: BTreeMap<i32, QSeries>,
}

impl LaurentZSeries {
    pub fn zero(zmin: i32, zmax: i32, order: usize) -> Self {
        assert!(zmin <= zmax, "empty z-window");
        LaurentZSeries {
            zmin,
            zmax,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// `z^e * x`
    pub fn single(e: i32, x: QSeries) -> Self {
        let mut out = Self::zero(e, e, x.order());
        out.set(e, x);
        out
    }

    /// Splits a series whose coefficients carry powers of `z` into a Laurent
    /// series in `z`; the window is the tight range of exponents present
    /// (or `[0, 0]` for the zero series).
    pub fn from_z_series(x: &QSeries) -> Self {
        let order = x.order();
        let mut coeffs: BTreeMap<i32, QSeries> = BTreeMap::new();
        for (e, m, c) in x.terms() {
            let ze = m.exp(Param::Z);
            coeffs
                .entry(ze)
                .or_insert_with(|| QSeries::zero(order))
                .coeff_mut(e)
                .add_term(m.with_exp(Param::Z, 0), c.clone());
        }
        let zmin = coeffs.keys().next().copied().unwrap_or(0);
        let zmax = coeffs.keys().next_back().copied().unwrap_or(0);
        let mut out = LaurentZSeries { zmin, zmax, order, coeffs };
        out.prune();
        out
    }

    /// Folds back into a single series carrying `z` as a parameter.
    pub fn to_z_series(&self) -> QSeries {
        let mut out = QSeries::zero(self.order);
        for (&e, s) in &self.coeffs {
            out.add_assign(&s.mul_monomial(&ParamMonomial::var_pow(Param::Z, e)));
        }
        out
    }

    pub fn window(&self) -> (i32, i32) {
        (self.zmin, self.zmax)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, e: i32, x: QSeries) {
        assert!(self.zmin <= e && e <= self.zmax, "z^{} outside window [{}, {}]", e, self.zmin, self.zmax);
        let x = x.truncate(self.order);
        if x.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, x);
        }
    }

    /// Coefficient of `z^m`; zero when `m` is absent or outside the window.
    pub fn zcoeff(&self, m: i32) -> QSeries {
        self.coeffs.get(&m).cloned().unwrap_or_else(|| QSeries::zero(self.order))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &QSeries)> {
        self.coeffs.iter().map(|(&e, s)| (e, s))
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, s| !s.is_zero());
    }

    pub fn add(&self, other: &LaurentZSeries) -> LaurentZSeries {
        let order = self.order.min(other.order);
        let mut out = LaurentZSeries::zero(self.zmin.min(other.zmin), self.zmax.max(other.zmax), order);
        for (&e, s) in self.coeffs.iter().chain(other.coeffs.iter()) {
            let cur = out.zcoeff(e);
            out.set(e, cur.add(s));
        }
        out
    }

    pub fn sub(&self, other: &LaurentZSeries) -> LaurentZSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentZSeries {
        LaurentZSeries {
            zmin: self.zmin,
            zmax: self.zmax,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&e, s)| (e, s.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentZSeries) -> LaurentZSeries {
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<i32, QSeries> = BTreeMap::new();
        for (&e1, s1) in &self.coeffs {
            for (&e2, s2) in &other.coeffs {
                let prod = s1.mul(s2);
                acc.entry(e1 + e2)
                    .and_modify(|x| x.add_assign(&prod))
                    .or_insert(prod);
            }
        }
        let mut out = LaurentZSeries {
            zmin: self.zmin + other.zmin,
            zmax: self.zmax + other.zmax,
            order,
            coeffs: acc,
        };
        out.prune();
        out
    }

    /// Multiplies every coefficient by a `q`-series (which may itself carry
    /// parameters other than `z`).
    pub fn scale(&self, x: &QSeries) -> LaurentZSeries {
        let mut out = LaurentZSeries::zero(self.zmin, self.zmax, self.order.min(x.order()));
        for (&e, s) in &self.coeffs {
            out.set(e, s.mul(x));
        }
        out
    }

    /// Keeps only the coefficients inside `[zmin, zmax]`.
    pub fn restrict(&self, zmin: i32, zmax: i32) -> LaurentZSeries {
        let mut out = LaurentZSeries::zero(zmin, zmax, self.order);
        for (&e, s) in self.coeffs.range(zmin..=zmax) {
            out.coeffs.insert(e, s.clone());
        }
        out
    }

    /// `[z^m](self * other)` without forming the full product.
    pub fn product_coeff(&self, other: &LaurentZSeries, m: i32) -> QSeries {
        let order = self.order.min(other.order);
        let mut out = QSeries::zero(order);
        for (&e, s) in &self.coeffs {
            if let Some(t) = other.coeffs.get(&(m - e)) {
                out.add_assign(&s.mul(t));
            }
        }
        out
    }

    /// Applies `z -> sign * u * z^-1` coefficientwise, where `u` is a
    /// parameter monomial free of `z`.
    pub fn invert_z(&self, sign: i32, u: &ParamMonomial) -> LaurentZSeries {
        let mut out = LaurentZSeries::zero(-self.zmax, -self.zmin, self.order);
        for (&e, s) in &self.coeffs {
            let factor = u.pow(e);
            let sgn = if sign < 0 && e.rem_euclid(2) == 1 { -1 } else { 1 };
            let mapped = s.mul_monomial(&factor).scale_int(&sgn.into());
            out.set(-e, mapped);
        }
        out
    }
}
