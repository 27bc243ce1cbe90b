//! Jacobi's triple product and the two Euler identities.

use crate::algebra::{poch, triangular, LaurentZSeries, Param, ParamMonomial, PochBase, PochLen, QPoly, QSeries};

use super::report::{compare_counts, compare_laurent, compare_series, IdentityReport};
use super::IdentityError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classical {
    Jacobi,
    Euler1,
    Euler2,
}

impl Classical {
    pub const ALL: [Classical; 3] = [Classical::Jacobi, Classical::Euler1, Classical::Euler2];

    pub fn name(self) -> &'static str {
        match self {
            Classical::Jacobi => "jacobi",
            Classical::Euler1 => "euler1",
            Classical::Euler2 => "euler2",
        }
    }
}

/// Brute-force partition counts for `n = 0..=n_max`, all partitions
/// (`distinct = false`) or distinct parts only.
pub fn partition_counts_oracle(n_max: usize, distinct: bool) -> Vec<u64> {
    fn rec(left: usize, max_part: usize, distinct: bool) -> u64 {
        if left == 0 {
            return 1;
        }
        (1..=max_part.min(left))
            .map(|p| rec(left - p, if distinct { p - 1 } else { p }, distinct))
            .sum()
    }
    (0..=n_max).map(|n| rec(n, n, distinct)).collect()
}

fn base(sign: i32, m: ParamMonomial, qpow: i64) -> PochBase {
    PochBase::new(sign, m, qpow)
}

/// Both sides of the triple product as Laurent series in `z`.
pub(super) fn jacobi_sides(order: usize) -> Result<(LaurentZSeries, LaurentZSeries), IdentityError> {
    let z = ParamMonomial::var(Param::Z);
    // sum over t with T_t <= order
    let mut tmax = 0i64;
    while triangular(tmax + 1) <= order as i64 {
        tmax += 1;
    }
    let (lo, hi) = (-(tmax as i32), tmax as i32 + 1);
    let mut lhs = LaurentZSeries::zero(lo, hi, order);
    for t in -tmax - 1..=tmax {
        lhs.set(-t as i32, QSeries::monomial(ParamMonomial::ONE, triangular(t) as usize, order));
    }
    // (q, -z, -q/z)_inf with (-z)_inf = (1 + z)(-zq)_inf
    let one_plus_z = QSeries::one(order).add(&QSeries::monomial(z, 0, order));
    let rhs = poch(PochBase::q_pow(1), PochLen::Infinite, order)?
        .mul(&one_plus_z)
        .mul(&poch(base(-1, z, 1), PochLen::Infinite, order)?)
        .mul(&poch(base(-1, z.inverse(), 1), PochLen::Infinite, order)?);
    Ok((lhs, LaurentZSeries::from_z_series(&rhs)))
}

/// `sum_n w^n c_n / (q)_n` for `w = m q^shift`, where `c_n = q^{T_n}` when
/// `triangular` is set and 1 otherwise.
fn euler_sum(m: ParamMonomial, shift: usize, triangular_weight: bool, order: usize) -> QSeries {
    assert!(shift > 0 || triangular_weight, "the sum must converge in q");
    let mut out = QSeries::zero(order);
    for n in 0..=order {
        let e = n * shift + if triangular_weight { triangular(n as i64) as usize } else { 0 };
        if e > order {
            break;
        }
        let p = QPoly::monomial(1, e).div_qfact_trunc(n, order);
        out.add_assign(&QSeries::from_qpoly_times(&p, &m.pow(n as i32), order));
    }
    out
}

/// Checks one classical identity up to `order`. The triple product is
/// compared on the `z`-window; the Euler identities track `z` through a
/// parameter (`z = Aq` and `z = q` for the first, `z = A` and `z = 1` for the
/// second) and the parameter-free specializations are also compared with
/// brute-force partition counts.
pub fn classical_checks(which: Classical, order: usize, z_window: (i32, i32)) -> Result<IdentityReport, IdentityError> {
    if order < 1 {
        return Err(IdentityError::Invalid("order must be at least 1".into()));
    }
    let a = ParamMonomial::var(Param::A);
    let mut r = IdentityReport::new(which.name(), order as i64);
    match which {
        Classical::Jacobi => {
            r = r.param("zmin", z_window.0 as i64).param("zmax", z_window.1 as i64);
            let (lhs, rhs) = jacobi_sides(order)?;
            r.record(compare_laurent(&lhs, &rhs, z_window, order));
        }
        Classical::Euler1 => {
            let lhs = euler_sum(a, 1, false, order);
            let rhs = poch(base(1, a, 1), PochLen::Infinite, order)?.invert()?;
            r.record(compare_series(&lhs, &rhs, order));
            let lhs = euler_sum(ParamMonomial::ONE, 1, false, order);
            let rhs = poch(PochBase::q_pow(1), PochLen::Infinite, order)?.invert()?;
            r.record(compare_series(&lhs, &rhs, order));
            r.record(compare_counts(&counts(&rhs), &partition_counts_oracle(order, false), "p(n)"));
        }
        Classical::Euler2 => {
            let lhs = euler_sum(a, 0, true, order);
            let rhs = poch(base(-1, a, 1), PochLen::Infinite, order)?;
            r.record(compare_series(&lhs, &rhs, order));
            let lhs = euler_sum(ParamMonomial::ONE, 0, true, order);
            let rhs = poch(base(-1, ParamMonomial::ONE, 1), PochLen::Infinite, order)?;
            r.record(compare_series(&lhs, &rhs, order));
            r.record(compare_counts(&counts(&rhs), &partition_counts_oracle(order, true), "distinct p(n)"));
        }
    }
    Ok(r)
}

/// Parameter-free coefficients as counts; a negative coefficient shows as
/// `u64::MAX` so it cannot match a count.
fn counts(s: &QSeries) -> Vec<u64> {
    (0..=s.order())
        .map(|e| u64::try_from(s.constant_part().coeff(e)).unwrap_or(u64::MAX))
        .collect()
}
