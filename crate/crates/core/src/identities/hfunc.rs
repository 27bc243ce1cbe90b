//! The three-parameter function whose constant term vanishes when `D = 0`.

use crate::algebra::{poch, LaurentZSeries, Param, ParamMonomial, PochBase, PochLen, QPoly, QSeries};

use super::report::{compare_laurent, compare_series, IdentityReport};
use super::IdentityError;

fn abc() -> ParamMonomial {
    ParamMonomial::abcd(1, 1, 1, 0)
}

/// The `z`-window that holds every term of `H` up to `q^order`: the product
/// in `1/z` reaches `z^{-k}` only at weight `k(k+3)/2`, the one in `z`
/// likewise, and the prefactor moves one step further out on each side.
pub fn h_window(order: usize) -> (i32, i32) {
    let mut k = 0i64;
    while (k + 1) * (k + 4) / 2 <= order as i64 {
        k += 1;
    }
    (-(k as i32) - 1, k as i32 + 1)
}

/// `H(A,B,C,z)` up to `q^order`, using
/// `(x)_inf / (x)_n = (x q^n)_inf` to fold the denominators of the
/// basic hypergeometric sum into the two infinite products.
pub fn h_function(order: usize) -> Result<LaurentZSeries, IdentityError> {
    let z = ParamMonomial::var(Param::Z);
    let mut sum = QSeries::zero(order);
    for n in 0..=order {
        let nn = n as i64;
        let mut t = QSeries::from_qpoly(&QPoly::monomial(1, n).div_qfact_trunc(n, order), order);
        for &p in &[Param::A, Param::B, Param::C] {
            t = t.mul(&poch(PochBase::new(-1, ParamMonomial::var(p), 1), PochLen::Finite(nn), order)?);
        }
        t = t
            .mul(&poch(PochBase::new(-1, z.inverse(), nn + 2), PochLen::Infinite, order)?)
            .mul(&poch(PochBase::new(1, abc() * z, nn + 2), PochLen::Infinite, order)?);
        sum.add_assign(&t);
    }
    let prefactor = QSeries::monomial(z.inverse(), 0, order).add(&QSeries::monomial(abc() * z, 0, order));
    Ok(LaurentZSeries::from_z_series(&prefactor.mul(&sum)))
}

/// `[z^0] H = 0` and `H(z) = -H(-1/(ABCz))` up to `q^order`. A caller
/// window, when given, must contain the window the order needs.
pub fn h_function_check(order: usize, window: Option<(i32, i32)>) -> Result<IdentityReport, IdentityError> {
    if order < 1 {
        return Err(IdentityError::Invalid("order must be at least 1".into()));
    }
    let need = h_window(order);
    let have = window.unwrap_or(need);
    if have.0 > need.0 || have.1 < need.1 {
        return Err(IdentityError::WindowTooSmall {
            need_lo: need.0,
            need_hi: need.1,
            have_lo: have.0,
            have_hi: have.1,
        });
    }
    let h = h_function(order)?;
    let (lo, hi) = h.window();
    assert!(lo >= need.0 && hi <= need.1, "H reaches outside the derived window");
    let mirrored = h.invert_z(-1, &abc().inverse()).neg();
    let mut r = IdentityReport::new("hfunc", order as i64)
        .param("zmin", have.0 as i64)
        .param("zmax", have.1 as i64);
    r.record(compare_series(&h.zcoeff(0), &QSeries::zero(order), order));
    r.record(compare_laurent(&h, &mirrored, have, order));
    Ok(r)
}
