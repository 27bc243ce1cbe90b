//! The bounded Göllnitz identity, the quadruple product, Capparelli's
//! products and the dilation transforms of the product side.

use crate::algebra::{
    poch, poch_step, qbinomial_poly, triangular, Param, ParamMonomial, ParamPoly, PochBase, PochLen, QPoly, QSeries,
};
use crate::partitions::{capparelli_refined, capparelli_table, CapparelliSide, ConstraintSolution, PartProfile};

use super::classical::jacobi_sides;
use super::key::{distinct_parts_side, goellnitz_summand};
use super::report::{compare_counts, compare_qpoly, compare_series, IdentityReport};
use super::IdentityError;

fn bin(m: i64, i: i64) -> QPoly {
    qbinomial_poly(m, i)
}

fn product(ps: &[QPoly]) -> QPoly {
    ps.iter().fold(QPoly::one(), |acc, p| &acc * p)
}

/// Both sides of the bounded Göllnitz identity for `(i, j, k)` as exact
/// polynomials.
pub fn bounded_sides(l: u32, profile: [u32; 3]) -> (QPoly, QPoly) {
    let big_l = l as i64;
    let mut lhs = QPoly::zero();
    for f in ConstraintSolution::solutions_for(&PartProfile::new(&profile)) {
        let (a, b, c) = (f.a as i64, f.b as i64, f.c as i64);
        let (ab, ac, bc) = (f.ab as i64, f.ac as i64, f.bc as i64);
        let s = a + b + c + ab + ac + bc;
        let r = big_l - s;
        let e = triangular(s) + triangular(ab) + triangular(ac) + triangular(bc - 1);
        let first = product(&[bin(r + a, a), bin(r + b, b), bin(r + c, c), bin(r, ab), bin(r, ac), bin(r, bc)]).shift(bc as usize);
        let second = product(&[bin(r + a - 1, a - 1), bin(r + b, b), bin(r + c, c), bin(r, ab), bin(r, ac), bin(r, bc - 1)]);
        lhs = &lhs + &(&first + &second).shift(e as usize);
    }
    let [i, j, k] = profile.map(|x| x as i64);
    let rhs = product(&[bin(big_l - i, j), bin(big_l - j, k), bin(big_l - k, i)])
        .shift((triangular(i) + triangular(j) + triangular(k)) as usize);
    (lhs, rhs)
}

fn profile_label(p: [u32; 3]) -> ParamMonomial {
    ParamMonomial::abcd(p[0] as i32, p[1] as i32, p[2] as i32, 0)
}

fn bounded_report(id: &str, l: Option<u32>, p: [u32; 3], order: i64) -> IdentityReport {
    let mut r = IdentityReport::new(id, order);
    if let Some(l) = l {
        r = r.param("L", l);
    }
    r.param("i", p[0]).param("j", p[1]).param("k", p[2])
}

/// Exact polynomial equality of the bounded identity.
pub fn bounded_goellnitz(l: u32, profile: [u32; 3]) -> IdentityReport {
    let (lhs, rhs) = bounded_sides(l, profile);
    bounded_report("bounded", Some(l), profile, 0).with(compare_qpoly(&lhs, &rhs, None, &profile_label(profile)))
}

/// With `L` large enough that no bound is felt below `q^order`, both sides
/// reduce to the unbounded cell of the three-parameter identity.
pub fn bounded_limit(profile: [u32; 3], order: usize) -> IdentityReport {
    let l = order as u32 + profile.iter().sum::<u32>() + 1;
    let (lhs, rhs) = bounded_sides(l, profile);
    let p = PartProfile::new(&profile);
    let cell = ConstraintSolution::solutions_for(&p)
        .iter()
        .fold(QPoly::zero(), |acc, f| &acc + &goellnitz_summand(f, order));
    let label = profile_label(profile);
    let mut r = bounded_report("bounded_limit", None, profile, order as i64);
    r.record(compare_qpoly(&lhs.truncate(order), &cell, Some(order), &label));
    r.record(compare_qpoly(&rhs.truncate(order), &distinct_parts_side(&p, order), Some(order), &label));
    r
}

/// `(B^{l+1} + B^{-l}) / (B + 1) = sum_{t=-l}^{l} (-1)^{l-t} B^t`
fn b_fraction(l: i64) -> ParamPoly {
    let mut out = ParamPoly::zero();
    for t in -l..=l {
        let sign = if (l - t) % 2 == 0 { 1 } else { -1 };
        out.add_term(ParamMonomial::var_pow(Param::B, t as i32), sign.into());
    }
    out
}

fn max_index(order: usize, weight: impl Fn(i64) -> i64) -> i64 {
    let mut n = 0;
    while weight(n + 1) <= order as i64 {
        n += 1;
    }
    n
}

/// Both sum sides of the quadruple product with `A`-degree at most `a_deg`.
fn quadruple_lhs(order: usize, a_deg: u32) -> QSeries {
    let a_deg = a_deg as i64;
    let mut out = QSeries::zero(order);
    let l_top = max_index(order, triangular);
    // smallest exponents: 2n^2+n from the second sum, 2T_m - floor(m^2/4) over k
    let n_top = max_index(order, |n| 2 * n * n + n).min(a_deg);
    let m_top = max_index(order, |m| 2 * triangular(m) - (m / 2) * ((m + 1) / 2)).min(a_deg);
    for n in 0..=n_top {
        for m in 0..=m_top.min(a_deg - n) {
            for k in 0..=m {
                let core = 4 * triangular(n) + 2 * triangular(m) + k * k - m * k;
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let denom = |e: i64| -> QPoly {
                    QPoly::monomial(sign, e as usize)
                        .div_qfact_trunc(n as usize, order)
                        .div_qfact_trunc(k as usize, order)
                        .div_qfact_trunc((m - k) as usize, order)
                };
                let b = ParamMonomial::var_pow(Param::B, (2 * k - m) as i32);
                for l in 0..=l_top {
                    let e = triangular(l) + core + 2 * n * (l + m) + m * l;
                    assert!(e >= 0);
                    // first sum
                    if e as usize <= order {
                        let mono = ParamMonomial::var_pow(Param::A, (n + m) as i32) * b;
                        let s = QSeries::from_qpoly_times(&denom(e), &mono, order);
                        out.add_assign(&s.scale(&b_fraction(l)));
                    }
                    // second sum
                    if l >= 1 && n + m + l <= a_deg && (e - n) as usize <= order {
                        let mono = ParamMonomial::var_pow(Param::A, (l + n + m) as i32) * b;
                        out.add_assign(&QSeries::from_qpoly_times(&denom(e - n), &mono, order));
                    }
                }
            }
        }
    }
    out
}

fn neg_base(m: ParamMonomial) -> PochBase {
    PochBase::new(-1, m, 1)
}

/// `sum_l q^{T_l} (B^{l+1} + B^{-l}) / (B + 1)`
fn theta_sum(order: usize) -> QSeries {
    let mut out = QSeries::zero(order);
    for l in 0..=max_index(order, triangular) {
        out.add_assign(&QSeries::term(b_fraction(l), triangular(l) as usize, order));
    }
    out
}

/// `z -> B` on a series in `z`.
fn z_as_b(x: &QSeries) -> QSeries {
    x.map_coeffs(|p| p.map_monomials(|m| (1, m.with_exp(Param::Z, 0).with_exp(Param::B, m.exp(Param::Z)))))
}

/// The quadruple product identity with `A`-degree at most `a_deg`, compared
/// on `B`-exponents in `b_window`; its `A = 0` part against the theta sum,
/// and the theta sum times `1 + B` against the triple product with `z = B`.
pub fn quadruple_product(order: usize, b_window: (i32, i32), a_deg: u32) -> Result<IdentityReport, IdentityError> {
    if order < 1 {
        return Err(IdentityError::Invalid("order must be at least 1".into()));
    }
    let a = ParamMonomial::var(Param::A);
    let b = ParamMonomial::var(Param::B);
    let in_window = |m: &ParamMonomial| {
        let e = m.exp(Param::B);
        m.exp(Param::A) <= a_deg as i32 && b_window.0 <= e && e <= b_window.1
    };
    let lhs = quadruple_lhs(order, a_deg).filter_monomials(in_window);
    let rhs = poch(neg_base(a), PochLen::Infinite, order)?
        .mul(&poch(neg_base(b), PochLen::Infinite, order)?)
        .mul(&poch(neg_base(b.inverse()), PochLen::Infinite, order)?)
        .mul(&poch(PochBase::q_pow(1), PochLen::Infinite, order)?)
        .filter_monomials(in_window);
    let mut r = IdentityReport::new("quadruple", order as i64)
        .param("bmin", b_window.0 as i64)
        .param("bmax", b_window.1 as i64)
        .param("max_a_degree", a_deg);
    r.record(compare_series(&lhs, &rhs, order));

    let theta = theta_sum(order);
    r.record(compare_series(&lhs.drop_param(Param::A), &theta.filter_monomials(in_window), order));
    let theta_rhs = poch(neg_base(b), PochLen::Infinite, order)?
        .mul(&poch(neg_base(b.inverse()), PochLen::Infinite, order)?)
        .mul(&poch(PochBase::q_pow(1), PochLen::Infinite, order)?);
    r.record(compare_series(&theta, &theta_rhs, order));
    let one_plus_b = QSeries::one(order).add(&QSeries::monomial(b, 0, order));
    let (jl, jr) = jacobi_sides(order)?;
    let (jl, jr) = (z_as_b(&jl.to_z_series()), z_as_b(&jr.to_z_series()));
    r.record(compare_series(&theta.mul(&one_plus_b), &jl, order));
    r.record(compare_series(&theta_rhs.mul(&one_plus_b), &jr, order));
    Ok(r)
}

fn counts_of(s: &QSeries) -> Vec<u64> {
    (0..=s.order())
        .map(|e| u64::try_from(s.constant_part().coeff(e)).unwrap_or(u64::MAX))
        .collect()
}

/// `prod_{(sign, m, r)} (sign... ; q^step)_inf` over the given bases.
fn step_product(bases: &[(i32, ParamMonomial, i64)], step: usize, order: usize) -> Result<QSeries, IdentityError> {
    let mut acc = QSeries::one(order);
    for &(sign, m, r) in bases {
        acc = acc.mul(&poch_step(PochBase::new(sign, m, r), step, PochLen::Infinite, order)?);
    }
    Ok(acc)
}

/// `(-Aq^2, -q^3, -Bq^4, -q^6; q^6)_inf`, whose `A^i B^j q^n` coefficient
/// is `C(n; i, j)`.
pub fn capparelli_product(order: usize) -> Result<QSeries, IdentityError> {
    let one = ParamMonomial::ONE;
    let (a, b) = (ParamMonomial::var(Param::A), ParamMonomial::var(Param::B));
    step_product(&[(-1, a, 2), (-1, one, 3), (-1, b, 4), (-1, one, 6)], 6, order)
}

/// Capparelli's theorem on both sides, three product forms of its
/// generating function, and the two-parameter refinement against refined
/// brute-force counts.
pub fn capparelli_check(n_refined: usize, n_total: usize) -> Result<IdentityReport, IdentityError> {
    let one = ParamMonomial::ONE;
    let mut r = IdentityReport::new("capparelli", n_total as i64).param("n_refined", n_refined);
    let c_star = capparelli_table(CapparelliSide::CStar, n_total as u64);
    let d = capparelli_table(CapparelliSide::D, n_total as u64);
    r.record(compare_counts(&c_star, &d, "C*(n) vs D(n)"));

    let quotient = step_product(&[(1, one, 2), (1, one, 3), (1, one, 9), (1, one, 10)], 12, n_total)?.invert()?;
    r.record(compare_counts(&counts_of(&quotient), &c_star, "modulus 12 product"));
    let distinct = step_product(&[(-1, one, 2), (-1, one, 3), (-1, one, 4), (-1, one, 6)], 6, n_total)?;
    r.record(compare_counts(&counts_of(&distinct), &c_star, "modulus 6 product"));

    let refined = capparelli_product(n_refined)?;
    let mut brute = QSeries::zero(n_refined);
    for ((n, i, j), c) in capparelli_refined(n_refined as u64) {
        let m = ParamMonomial::abcd(i as i32, j as i32, 0, 0);
        brute.coeff_mut(n as usize).add_term(m, c.into());
    }
    r.record(compare_series(&refined, &brute, n_refined));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transform {
    /// `q -> q^6`, `A -> A q^-4`, `B -> B q^-2`, `C -> C q^-3`, `D -> D`.
    Capparelli6,
    /// `q -> q^5`, `A -> A q^-4`, `B -> B q^-3`, `C -> C q^-2`, `D -> D q^-1`.
    Abo5,
}

impl Transform {
    pub const ALL: [Transform; 2] = [Transform::Capparelli6, Transform::Abo5];

    pub fn name(self) -> &'static str {
        match self {
            Transform::Capparelli6 => "capparelli6",
            Transform::Abo5 => "abo5",
        }
    }

    fn modulus(self) -> usize {
        match self {
            Transform::Capparelli6 => 6,
            Transform::Abo5 => 5,
        }
    }

    fn shifts(self) -> [i64; 4] {
        match self {
            Transform::Capparelli6 => [4, 2, 3, 0],
            Transform::Abo5 => [4, 3, 2, 1],
        }
    }
}

/// `q -> q^modulus`, `X -> X q^{-shift_X}`, keeping the parameters. Every
/// term of a product of `(-Xq)_inf` factors lands at or above its own
/// exponent, so the input order can equal the output order.
fn dilate_keeping(x: &QSeries, modulus: usize, shifts: &[i64; 4], order: usize) -> QSeries {
    let mut out = QSeries::zero(order);
    for (e, m, c) in x.terms() {
        let target = (modulus * e) as i64 - (0..4).map(|t| shifts[t] * m.exp(Param::ABCD[t]) as i64).sum::<i64>();
        assert!(target >= e as i64);
        if target as usize <= order {
            out.coeff_mut(target as usize).add_term(*m, c.clone());
        }
    }
    out
}

/// The transformed four-parameter product side against the target product
/// computed directly; for the modulus 6 transform also its `C = D = 1`
/// specialization against the refined Capparelli product.
pub fn product_transform_check(which: Transform, order: usize) -> Result<IdentityReport, IdentityError> {
    let mut key = QSeries::one(order);
    for &p in &Param::ABCD {
        key = key.mul(&poch(neg_base(ParamMonomial::var(p)), PochLen::Infinite, order)?);
    }
    let m = which.modulus();
    let shifts = which.shifts();
    let lhs = dilate_keeping(&key, m, &shifts, order);
    let bases: Vec<(i32, ParamMonomial, i64)> = (0..4)
        .map(|t| (-1, ParamMonomial::var(Param::ABCD[t]), m as i64 - shifts[t]))
        .collect();
    let rhs = step_product(&bases, m, order)?;
    let mut r = IdentityReport::new("transform", order as i64).param("kind", which.name());
    r.record(compare_series(&lhs, &rhs, order));
    if which == Transform::Capparelli6 {
        let collapsed = rhs.map_coeffs(|p| p.map_monomials(|x| (1, x.with_exp(Param::C, 0).with_exp(Param::D, 0))));
        let refined = capparelli_product(order)?;
        r.record(compare_series(&collapsed, &refined, order));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_trivial_and_small() {
        for l in 0..4 {
            let (lhs, rhs) = bounded_sides(l, [0, 0, 0]);
            assert_eq!((lhs, rhs), (QPoly::one(), QPoly::one()));
        }
        assert!(bounded_goellnitz(3, [1, 1, 1]).passed());
        for l in 0..=4 {
            for p in [[1, 0, 0], [1, 1, 0], [2, 1, 0], [1, 2, 1], [0, 2, 2]] {
                let r = bounded_goellnitz(l, p);
                assert!(r.passed(), "{}", r);
            }
        }
        assert!(bounded_limit([2, 1, 1], 15).passed());
    }

    #[test]
    fn b_fraction_small() {
        assert_eq!(b_fraction(0), ParamPoly::one());
        let b = |e| ParamMonomial::var_pow(Param::B, e);
        let mut want = ParamPoly::monomial(b(1));
        want.add_term(b(0), (-1).into());
        want.add_term(b(-1), 1.into());
        assert_eq!(b_fraction(1), want);
    }

    #[test]
    fn quadruple_small() {
        let r = quadruple_product(8, (-8, 8), 2).unwrap();
        assert!(r.passed(), "{}", r);
    }

    #[test]
    fn capparelli_small() {
        let r = capparelli_check(20, 30).unwrap();
        assert!(r.passed(), "{}", r);
    }

    #[test]
    fn transforms_small() {
        for t in Transform::ALL {
            let r = product_transform_check(t, 15).unwrap();
            assert!(r.passed(), "{}", r);
        }
    }
}
