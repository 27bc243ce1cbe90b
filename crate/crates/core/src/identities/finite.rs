//! The finitized constant-term identity `S(m) = σ(m)` and the recurrence
//! chain behind it.

use crate::algebra::{
    poch, qbinomial_row, triangular, LaurentZSeries, Param, ParamMonomial, ParamPoly, PochBase, PochLen, QPoly, QSeries,
};

use super::battery::{NoCache, SeriesCache};
use super::report::{check, compare_laurent, compare_series, IdentityReport};
use super::IdentityError;

fn f_mono() -> ParamMonomial {
    ParamMonomial::abcd(1, 1, 1, 1)
}

fn z_pow(e: i32) -> ParamMonomial {
    ParamMonomial::var_pow(Param::Z, e)
}

/// Symmetric expansion of `R(A,B,C,D,z)` as a Laurent series in `z` on
/// `[0, zmax]`:
/// `1 - F z^3 + e1 sum_{L>=1} F^L z^{2L+1} + e3 sum_{L>=0} F^L z^{2L+2}`.
pub fn r_expansion(zmax: i32, order: usize) -> LaurentZSeries {
    let e1 = ParamPoly::elementary_abcd(1);
    let e3 = ParamPoly::elementary_abcd(3);
    let mut terms: Vec<(i32, ParamPoly)> = vec![(0, ParamPoly::one()), (3, ParamPoly::term(-1, f_mono()))];
    for l in 1.. {
        if 2 * l + 1 > zmax {
            break;
        }
        terms.push((2 * l + 1, e1.mul_monomial(&f_mono().pow(l))));
    }
    for l in 0.. {
        if 2 * l + 2 > zmax {
            break;
        }
        terms.push((2 * l + 2, e3.mul_monomial(&f_mono().pow(l))));
    }
    let mut out = LaurentZSeries::zero(0, zmax.max(0), order);
    for (e, p) in terms {
        if e <= zmax {
            let cur = out.zcoeff(e);
            out.set(e, cur.add(&QSeries::constant(p, order)));
        }
    }
    out
}

/// Per-`m` data shared by the finitization checks.
#[derive(Clone, Debug)]
pub struct SmContext {
    pub m: u32,
    pub f: ParamMonomial,
    /// `R` truncated at `z^{2m}`, the highest power any partner term can
    /// pair with at `z^0`.
    pub r_expansion: LaurentZSeries,
    /// `L_n(m)` for `n = -2m-1 ..= 2`.
    pub l_values: Vec<(i64, QSeries)>,
}

impl SmContext {
    pub fn new(m: u32, order: usize) -> Self {
        let l_values = (-2 * m as i64 - 1..=2).map(|n| (n, l_value(n, m, order))).collect();
        SmContext {
            m,
            f: f_mono(),
            r_expansion: r_expansion(2 * m as i32, order),
            l_values,
        }
    }

    pub fn l(&self, n: i64) -> QSeries {
        self.l_values
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| QSeries::zero(self.r_expansion.order()))
    }

    /// Checks `R (1 - F z^2)` against the polynomial numerator of the
    /// rational form on the expansion's window.
    pub fn check_r(&self) -> IdentityReport {
        let order = self.r_expansion.order();
        let zmax = self.r_expansion.window().1;
        let poly = |terms: &[(i32, ParamPoly)]| {
            let mut x = LaurentZSeries::zero(0, 0, order);
            for (e, p) in terms {
                x = x.add(&LaurentZSeries::single(*e, QSeries::constant(p.clone(), order)));
            }
            x
        };
        let var = |p: Param| ParamPoly::var(p);
        let mono = |a, b, c, d| ParamPoly::monomial(ParamMonomial::abcd(a, b, c, d));
        let one_minus_fz2 = poly(&[(0, ParamPoly::one()), (2, -&mono(1, 1, 1, 1))]);
        let lhs = self.r_expansion.mul(&one_minus_fz2);
        let rhs = poly(&[(0, ParamPoly::one()), (1, -&var(Param::A))])
            .mul(&poly(&[(0, ParamPoly::one()), (2, mono(0, 1, 1, 1))]))
            .mul(&one_minus_fz2)
            .add(
                &poly(&[(1, var(Param::A))])
                    .mul(&poly(&[(0, ParamPoly::one()), (1, mono(0, 1, 1, 0))]))
                    .mul(&poly(&[(0, ParamPoly::one()), (1, mono(0, 1, 0, 1))]))
                    .mul(&poly(&[(0, ParamPoly::one()), (1, mono(0, 0, 1, 1))])),
            );
        IdentityReport::new("r_expansion", order as i64)
            .param("m", self.m)
            .with(compare_laurent(&lhs, &rhs, (0, zmax), order))
    }
}

/// `F^{n-1} q^n z^{2n-4} (q/(Az), q/(Bz), q/(Cz), q/(Dz))_{n-1}` from the
/// Pochhammer products directly, carrying negative exponents.
pub fn pochhammer_block(n: u32, order: usize) -> Result<QSeries, IdentityError> {
    let z = ParamMonomial::var(Param::Z);
    let mut acc = QSeries::monomial(f_mono().pow(n as i32 - 1) * z_pow(2 * n as i32 - 4), n as usize, order);
    for &p in &Param::ABCD {
        let base = PochBase::new(1, (ParamMonomial::var(p) * z).inverse(), 1);
        acc = acc.mul(&poch(base, PochLen::Finite(n as i64 - 1), order)?);
    }
    Ok(acc)
}

/// The same block expanded through the `q`-binomial theorem:
/// `sum q^{T_{n-1-i}+...+n} A^i B^j C^k D^l (-z)^{i+j+k+l-2n} prod [n-1, .]`.
pub fn pochhammer_block_expanded(n: u32, order: usize) -> QSeries {
    let top = n as i64 - 1;
    let row = qbinomial_row(top as usize);
    let mut out = QSeries::zero(order);
    for_four(top, |idx| {
        let e: i64 = idx.iter().map(|&x| triangular(top - x)).sum::<i64>() + n as i64;
        let s: i64 = idx.iter().sum();
        let zexp = (s - 2 * n as i64) as i32;
        let sign = if zexp.rem_euclid(2) == 1 { -1 } else { 1 };
        let mono = ParamMonomial::abcd(idx[0] as i32, idx[1] as i32, idx[2] as i32, idx[3] as i32) * z_pow(zexp);
        let p = binomial_product(&row, idx, order.saturating_sub(e.max(0) as usize));
        if e as usize <= order {
            out.add_assign(&QSeries::from_qpoly_times(&p.shift(e as usize).scale(&sign.into()), &mono, order));
        }
    });
    out
}

fn for_four(top: i64, mut f: impl FnMut([i64; 4])) {
    for i in 0..=top {
        for j in 0..=top {
            for k in 0..=top {
                for l in 0..=top {
                    f([i, j, k, l]);
                }
            }
        }
    }
}

fn binomial_product(row: &[QPoly], idx: [i64; 4], order: usize) -> QPoly {
    let mut p = QPoly::one();
    for &x in &idx {
        if x < 0 || x as usize >= row.len() {
            return QPoly::zero();
        }
        p = p.mul_trunc(&row[x as usize], order);
    }
    p
}

/// The partner of `R` in the `n`-th term of `S(m)`.
fn partner(n: u32, m: u32, order: usize) -> Result<QSeries, IdentityError> {
    let z = ParamMonomial::var(Param::Z);
    let z_plus = QSeries::monomial(z, 0, order).add(&QSeries::monomial(ParamMonomial::ONE, 2 * n as usize, order));
    let mut acc = pochhammer_block(n, order)?.mul(&z_plus);
    for &p in &Param::ABCD {
        let base = PochBase::new(-1, ParamMonomial::var(p), n as i64 + 1);
        acc = acc.mul(&poch(base, PochLen::Finite((m - n) as i64), order)?);
    }
    Ok(acc)
}

/// `S(m)`: the `z^0` coefficient of `R` times the finite sum, up to `order`.
pub fn compute_s(m: u32, order: usize) -> Result<QSeries, IdentityError> {
    let r = r_expansion(2 * m as i32, order);
    let mut s = QSeries::zero(order);
    for n in 1..=m {
        let p = LaurentZSeries::from_z_series(&partner(n, m, order)?);
        assert!(p.window().0 >= -(2 * m as i32));
        s.add_assign(&r.product_coeff(&p, 0));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma {
    pub sigma0: QSeries,
    pub sigma1: QSeries,
    pub sigma: QSeries,
}

/// `sum q^{shift + T_i+T_j+T_k+T_l} A^i B^j C^k D^l prod [top, .]` over the
/// index tuples accepted by `keep`, times `extra`.
fn binomial_sum(top: i64, order: usize, keep: impl Fn(i64) -> bool, shift: i64, extra: ParamMonomial) -> QSeries {
    let row = qbinomial_row(top.max(0) as usize);
    let mut out = QSeries::zero(order);
    if top < 0 {
        return out;
    }
    for_four(top, |idx| {
        if !keep(idx.iter().sum()) {
            return;
        }
        let e = shift + idx.iter().map(|&x| triangular(x)).sum::<i64>();
        assert!(e >= 0);
        if e as usize > order {
            return;
        }
        let p = binomial_product(&row, idx, order - e as usize).shift(e as usize);
        let mono = ParamMonomial::abcd(idx[0] as i32, idx[1] as i32, idx[2] as i32, idx[3] as i32) * extra;
        out.add_assign(&QSeries::from_qpoly_times(&p, &mono, order));
    });
    out
}

/// `σ0(m)`, `σ1(m)` and `σ(m) = σ0(m) - σ1(m)` up to `order`.
pub fn compute_sigma(m: u32, order: usize) -> Sigma {
    let m64 = m as i64;
    let sigma0 = binomial_sum(m64, order, |s| s > 2 * m64, 0, ParamMonomial::ONE);
    let mut sigma1 = QSeries::zero(order);
    for l in 1..=m64 {
        let shift = 2 * l * (m64 + 1);
        sigma1.add_assign(&binomial_sum(m64, order, |s| s == 2 * m64 - 2 * l, shift, f_mono().pow(l as i32)));
    }
    let sigma = sigma0.sub(&sigma1);
    Sigma { sigma0, sigma1, sigma }
}

/// `L_n(m) = sum_{i+j+k+l = 2(m-1)+n} q^{T_{m-1-i}+...+m} A^i... prod [m-1, .]`
pub fn l_value(n: i64, m: u32, order: usize) -> QSeries {
    let top = m as i64 - 1;
    let row = qbinomial_row(top.max(0) as usize);
    let mut out = QSeries::zero(order);
    if top < 0 {
        return out;
    }
    let target = 2 * top + n;
    for_four(top, |idx| {
        if idx.iter().sum::<i64>() != target {
            return;
        }
        let e = idx.iter().map(|&x| triangular(top - x)).sum::<i64>() + m as i64;
        if e as usize > order {
            return;
        }
        let p = binomial_product(&row, idx, order - e as usize).shift(e as usize);
        let mono = ParamMonomial::abcd(idx[0] as i32, idx[1] as i32, idx[2] as i32, idx[3] as i32);
        out.add_assign(&QSeries::from_qpoly_times(&p, &mono, order));
    });
    out
}

/// The second form without its prefactor:
/// `sum_{i+j+k+l = 2(m-1)+n} q^{T_i+...} A^i... prod [m-1, .]`, so that
/// `L_n(m) = q^{-m(n-1)}` times this.
pub fn l_value_shifted(n: i64, m: u32, order: usize) -> QSeries {
    let top = m as i64 - 1;
    binomial_sum(top, order, |s| s == 2 * top + n, 0, ParamMonomial::ONE)
}

/// Degree bound for every polynomial built from `[m-1, .]` or `[m, .]` here.
fn exact_order(m: u32) -> usize {
    let m = m as usize;
    4 * m * m + 8 * m + 8
}

/// Compares the two forms of `L_n(m)` as exact polynomials.
pub fn l_form_consistency(m: u32, ns: &[i64]) -> IdentityReport {
    let order = exact_order(m);
    let mut r = IdentityReport::new("l_forms", order as i64).param("m", m);
    for &n in ns {
        let direct = l_value(n, m, order);
        let shifted = l_value_shifted(n, m, order);
        let k = m as i64 * (n - 1);
        // q^{m(n-1)} L_n = shifted, or L_n = q^{-m(n-1)} shifted
        let (lhs, rhs) = if k >= 0 { (direct.shift_up(k as usize), shifted) } else { (direct, shifted.shift_up((-k) as usize)) };
        r.record(compare_series(&lhs, &rhs, order));
    }
    r
}

fn product_1_plus_xqm(m: u32, order: usize) -> Result<QSeries, IdentityError> {
    let mut acc = QSeries::one(order);
    for &p in &Param::ABCD {
        let base = PochBase::new(-1, ParamMonomial::var(p), m as i64);
        acc = acc.mul(&poch(base, PochLen::Finite(1), order)?);
    }
    Ok(acc)
}

fn cached_s(m: u32, order: usize, cache: &dyn SeriesCache) -> Result<QSeries, IdentityError> {
    cache.get_or_compute(&format!("S/m={}", m), order, &|| compute_s(m, order))
}

fn cached_sigma(m: u32, order: usize, cache: &dyn SeriesCache) -> Result<Sigma, IdentityError> {
    let sigma0 = cache.get_or_compute(&format!("sigma0/m={}", m), order, &|| Ok(compute_sigma(m, order).sigma0))?;
    let sigma1 = cache.get_or_compute(&format!("sigma1/m={}", m), order, &|| Ok(compute_sigma(m, order).sigma1))?;
    let sigma = sigma0.sub(&sigma1);
    Ok(Sigma { sigma0, sigma1, sigma })
}

/// Compares precomputed `S(m)` and `σ(m)`, and checks that `S(m)` is free of
/// negative parameter exponents.
pub fn compare_sm_sigma(m: u32, order: usize, s: &QSeries, sigma: &QSeries) -> IdentityReport {
    let mut r = IdentityReport::new("sm_sigma", order as i64).param("m", m);
    r.record(compare_series(s, sigma, order));
    r.record(check(s.is_polynomial_in_params(), || format!("S({}) has negative parameter exponents", m)));
    r
}

/// `S(m) = σ(m)` up to `order`, plus the two internal consistency checks of
/// the `S(m)` construction: the expansion of `R` and the `q`-binomial
/// expansion of each Pochhammer block.
pub fn verify_sm_sigma(m: u32, order: usize) -> Result<IdentityReport, IdentityError> {
    verify_sm_sigma_with(m, order, &NoCache)
}

pub fn verify_sm_sigma_with(m: u32, order: usize, cache: &dyn SeriesCache) -> Result<IdentityReport, IdentityError> {
    let s = cached_s(m, order, cache)?;
    let sigma = cached_sigma(m, order, cache)?;
    let mut r = compare_sm_sigma(m, order, &s, &sigma.sigma);
    let ctx = SmContext::new(m, order);
    r.record(ctx.check_r().first_mismatch);
    for n in 1..=m {
        r.record(compare_series(&pochhammer_block(n, order)?, &pochhammer_block_expanded(n, order), order));
    }
    Ok(r)
}

/// One step of the recurrence chain at `m >= 1`: the two `σ` recurrences,
/// the vanishing combination of `L`-values and the recurrence for
/// `S(m) - σ(m)`.
pub fn verify_recurrence_step(m: u32, order: usize) -> Result<IdentityReport, IdentityError> {
    verify_recurrence_step_with(m, order, &NoCache)
}

pub fn verify_recurrence_step_with(m: u32, order: usize, cache: &dyn SeriesCache) -> Result<IdentityReport, IdentityError> {
    if m < 1 {
        return Err(IdentityError::Invalid("the recurrence starts at m = 1".into()));
    }
    let mm = m as usize;
    // L-values carry m extra orders for the one negative shift below
    let ctx = SmContext::new(m, order + mm);
    let l = |n: i64| ctx.l(n);
    let up = |x: &QSeries, k: usize| x.shift_up(k).truncate(order);
    let tr = |x: QSeries| x.truncate(order);
    let e1 = ParamPoly::elementary_abcd(1);
    let e3 = ParamPoly::elementary_abcd(3);
    let f = ParamPoly::monomial(f_mono());
    let f_pow = |k: i64| ParamPoly::monomial(f_mono().pow(k as i32));
    let prod = product_1_plus_xqm(m, order)?;

    let now = cached_sigma(m, order, cache)?;
    let before = cached_sigma(m - 1, order, cache)?;
    let mut r = IdentityReport::new("recurrence", order as i64).param("m", m);

    // σ0
    let lhs = now.sigma0.sub(&prod.mul(&before.sigma0));
    let rhs = tr(l(1).neg())
        .sub(&up(&l(2), mm))
        .sub(&up(&l(1), mm).scale(&e1))
        .add(&up(&l(0), 2 * mm).scale(&e3))
        .add(&up(&l(0), 3 * mm).scale(&f))
        .add(&up(&l(-1), 2 * mm).scale(&f));
    r.record(compare_series(&lhs, &rhs, order));

    // σ1
    let lhs = now.sigma1.sub(&prod.mul(&before.sigma1));
    let mut rhs = up(&l(0), 3 * mm).scale(&f);
    for big_l in 1..=m as i64 {
        let fl = f_pow(big_l);
        let a = up(&l(1 - 2 * big_l), 2 * mm).sub(&tr(l(-2 * big_l)));
        let b = up(&l(-2 * big_l), 2 * mm).sub(&tr(l(-2 * big_l - 1)));
        rhs = rhs.add(&a.scale(&(&e1 * &fl))).sub(&b.scale(&(&e3 * &fl)));
    }
    rhs = rhs.sub(&l(-2).shift(-(m as i64))?.truncate(order).scale(&f));
    r.record(compare_series(&lhs, &rhs, order));

    // the combination that must vanish
    let one_plus = |x: &QSeries| x.add(&x.shift_up(mm));
    let comb = up(&l(1), mm)
        .scale(&e1)
        .sub(&tr(l(-1)).scale(&e3))
        .add(&tr(one_plus(&l(2).shift_up(mm))))
        .sub(&tr(one_plus(&l(-2).shift(-(m as i64))?)).scale(&f));
    r.record(compare_series(&comb, &QSeries::zero(order), order));

    // S(m) - σ(m) = prod (S(m-1) - σ(m-1))
    let diff_now = cached_s(m, order, cache)?.sub(&now.sigma);
    let diff_before = cached_s(m - 1, order, cache)?.sub(&before.sigma);
    r.record(compare_series(&diff_now, &prod.mul(&diff_before), order));
    Ok(r)
}

/// Thresholds below which `σ0(m)` and `σ1(m)` have no terms.
pub fn support_thresholds(m: u32) -> (usize, usize) {
    let t = triangular(m as i64 + 1) as usize;
    (t, t + (m as usize + 2) / 2)
}

/// `[q^n] σ0(m) = 0` for `n < T_{m+1}` and `[q^n] σ1(m) = 0` for
/// `n < T_{m+1} + floor((m+2)/2)`.
pub fn support_check(m: u32) -> IdentityReport {
    let (t0, t1) = support_thresholds(m);
    let s = compute_sigma(m, t1);
    let zero = QSeries::zero(t1);
    let mut r = IdentityReport::new("support", t1 as i64).param("m", m);
    if t0 > 0 {
        r.record(compare_series(&s.sigma0.truncate(t0 - 1), &zero, t0 - 1));
    }
    r.record(compare_series(&s.sigma1.truncate(t1 - 1), &zero, t1 - 1));
    r
}

/// For every `n <= n_max` and `m <= m_max` with `T_{m+1} > n`,
/// `[q^n] σ(m) = 0`.
pub fn limit_check(n_max: usize, m_max: u32) -> IdentityReport {
    let mut r = IdentityReport::new("limit", n_max as i64).param("m_max", m_max);
    for m in 0..=m_max {
        let t = triangular(m as i64 + 1) as usize;
        let s = compute_sigma(m, n_max).sigma;
        for n in 0..=n_max.min(t.saturating_sub(1)) {
            let ok = s.coeff(n).is_zero();
            r.record(check(ok, || format!("[q^{}] sigma({}) is nonzero", n, m)));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e3_q3(order: usize) -> QSeries {
        QSeries::term(ParamPoly::elementary_abcd(3), 3, order)
    }

    #[test]
    fn s_and_sigma_small_m() {
        let order = 10;
        assert!(compute_s(0, order).unwrap().is_zero());
        assert!(compute_sigma(0, order).sigma.is_zero());
        assert_eq!(compute_s(1, order).unwrap(), e3_q3(order));
        let s1 = compute_sigma(1, order);
        assert_eq!(s1.sigma, e3_q3(order));
        assert_eq!(s1.sigma1, QSeries::monomial(f_mono(), 4, order));
        assert_eq!(s1.sigma0, e3_q3(order).add(&QSeries::monomial(f_mono(), 4, order)));
    }

    #[test]
    fn sm_sigma_m2() {
        let r = verify_sm_sigma(2, 14).unwrap();
        assert!(r.passed(), "{}", r);
    }

    #[test]
    fn recurrence_small() {
        for m in 1..=2 {
            let r = verify_recurrence_step(m, 12).unwrap();
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn l_forms_agree() {
        for m in 1..=3 {
            let r = l_form_consistency(m, &[-2, -1, 0, 1, 2]);
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn support_small() {
        for m in 0..=3 {
            assert!(support_check(m).passed());
        }
        assert_eq!(support_thresholds(1), (3, 4));
        assert!(limit_check(8, 4).passed());
    }

    #[test]
    fn r_expansion_low_terms() {
        let r = r_expansion(4, 0);
        assert!(r.zcoeff(1).is_zero());
        assert_eq!(r.zcoeff(2), QSeries::constant(ParamPoly::elementary_abcd(3), 0));
        assert!(SmContext::new(3, 2).check_r().passed());
    }
}
