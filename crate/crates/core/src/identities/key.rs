//! The key identity cell by cell and as a generating function, and its two-
//! and three-parameter reductions.

use std::collections::BTreeMap;

use crate::algebra::{poch, triangular, Param, ParamMonomial, PochBase, PochLen, QPoly, QSeries};
use crate::partitions::{ConstraintSolution, PartProfile};

use super::report::{compare_qpoly, compare_series, IdentityReport};
use super::IdentityError;

fn t(x: u32) -> i64 {
    triangular(x as i64)
}

/// `q^e` truncated at `order`; `e` must be nonnegative.
fn q_pow(e: i64, order: usize) -> QPoly {
    assert!(e >= 0, "negative q-exponent {}", e);
    if e as usize > order {
        QPoly::zero()
    } else {
        QPoly::monomial(1, e as usize)
    }
}

fn divide_factorials(mut p: QPoly, ns: &[u32], order: usize) -> QPoly {
    for &n in ns {
        p = p.div_qfact_trunc(n as usize, order);
    }
    p
}

/// Exponent of the four-parameter summand.
pub fn key_exponent(f: &ConstraintSolution) -> i64 {
    let tau = f.tau() as i64;
    let q = f.q as i64;
    t(f.tau()) + t(f.ab) + t(f.ac) + t(f.ad) + t(f.bc) + t(f.bd) + t(f.cd) - (f.bc + f.bd + f.cd) as i64
        + 4 * triangular(q - 1)
        + 3 * q
        + 2 * q * tau
}

/// One summand of the finite seven-fold sum, truncated at `order`.
pub fn key_summand(f: &ConstraintSolution, order: usize) -> QPoly {
    let e = key_exponent(f);
    if e as usize > order {
        return QPoly::zero();
    }
    let (a, b) = (f.a as i64, f.b as i64);
    let s = a + (f.bc + f.bd + f.q) as i64;
    let brace = &(&(&q_pow(0, order) - &q_pow(a, order)) + &(&q_pow(s, order) - &q_pow(s + b, order)))
        + &q_pow(s + b + f.cd as i64, order);
    let num = QPoly::monomial(1, e as usize).mul_trunc(&brace, order);
    divide_factorials(num, &[f.a, f.b, f.c, f.d, f.ab, f.ac, f.ad, f.bc, f.bd, f.cd, f.q], order)
}

/// Summand of the three-parameter identity.
pub fn goellnitz_summand(f: &ConstraintSolution, order: usize) -> QPoly {
    let s = (f.a + f.b + f.c + f.ab + f.ac + f.bc) as i64;
    let e = triangular(s) + t(f.ab) + t(f.ac) + triangular(f.bc as i64 - 1);
    if e as usize > order {
        return QPoly::zero();
    }
    let a = f.a as i64;
    let brace = &(&q_pow(0, order) - &q_pow(a, order)) + &q_pow(a + f.bc as i64, order);
    let num = QPoly::monomial(1, e as usize).mul_trunc(&brace, order);
    divide_factorials(num, &[f.a, f.b, f.c, f.ab, f.ac, f.bc], order)
}

/// Summand of the two-parameter identity.
pub fn schur_summand(f: &ConstraintSolution, order: usize) -> QPoly {
    let e = triangular((f.a + f.b + f.ab) as i64) + t(f.ab);
    divide_factorials(q_pow(e, order), &[f.a, f.b, f.ab], order)
}

/// `q^{T_i + T_j + ...} / ((q)_i (q)_j ...)`
pub fn distinct_parts_side(profile: &PartProfile, order: usize) -> QPoly {
    let e: i64 = profile.counts().iter().map(|&x| t(x)).sum();
    divide_factorials(q_pow(e, order), profile.counts(), order)
}

fn profile_monomial(p: &PartProfile) -> ParamMonomial {
    ParamMonomial::abcd(p.get(0) as i32, p.get(1) as i32, p.get(2) as i32, p.get(3) as i32)
}

fn profile_report(id: &str, p: &PartProfile, order: usize) -> IdentityReport {
    let names = ["i", "j", "k", "l"];
    let mut r = IdentityReport::new(id, order as i64);
    for (n, &c) in names.iter().zip(p.counts()) {
        r = r.param(n, c);
    }
    r
}

fn check_order(p: &PartProfile, order: usize) -> Result<(), IdentityError> {
    let floor: i64 = p.counts().iter().map(|&x| t(x)).sum();
    if (order as i64) < floor {
        return Err(IdentityError::Invalid(format!("order {} is below the profile floor {}", order, floor)));
    }
    Ok(())
}

/// Checks one `A^i B^j C^k D^l` coefficient of the key identity up to `order`.
pub fn key_identity_cell(profile: &PartProfile, order: usize) -> Result<IdentityReport, IdentityError> {
    let p = profile.widen(4);
    check_order(&p, order)?;
    let lhs = ConstraintSolution::solutions_for(&p)
        .iter()
        .fold(QPoly::zero(), |acc, f| &acc + &key_summand(f, order));
    let rhs = distinct_parts_side(&p, order);
    Ok(profile_report("key_cell", &p, order).with(compare_qpoly(&lhs, &rhs, Some(order), &profile_monomial(&p))))
}

/// Every frequency vector over the first `primaries` primaries whose
/// primary totals are at most `max_deg` and whose summand exponent is at
/// most `order`. The exponent grows strictly with every count, so the
/// search prunes on partial vectors.
pub fn frequency_vectors(primaries: usize, max_deg: u32, order: usize, exponent: fn(&ConstraintSolution) -> i64) -> Vec<ConstraintSolution> {
    // color slots in ConstraintSolution field order, with the primaries each one uses
    const SLOTS: [(usize, &[usize]); 11] = [
        (0, &[0]),
        (1, &[1]),
        (2, &[2]),
        (3, &[3]),
        (4, &[0, 1]),
        (5, &[0, 2]),
        (6, &[0, 3]),
        (7, &[1, 2]),
        (8, &[1, 3]),
        (9, &[2, 3]),
        (10, &[0, 1, 2, 3]),
    ];
    fn set(f: &mut ConstraintSolution, slot: usize, v: u32) {
        let x = match slot {
            0 => &mut f.a,
            1 => &mut f.b,
            2 => &mut f.c,
            3 => &mut f.d,
            4 => &mut f.ab,
            5 => &mut f.ac,
            6 => &mut f.ad,
            7 => &mut f.bc,
            8 => &mut f.bd,
            9 => &mut f.cd,
            _ => &mut f.q,
        };
        *x = v;
    }
    struct Search<'a> {
        slots: Vec<(usize, &'a [usize])>,
        max_deg: u32,
        order: i64,
        exponent: fn(&ConstraintSolution) -> i64,
        out: Vec<ConstraintSolution>,
    }
    impl Search<'_> {
        fn rec(&mut self, pos: usize, f: &mut ConstraintSolution, totals: &mut [u32; 4]) {
            if pos == self.slots.len() {
                self.out.push(*f);
                return;
            }
            let (slot, uses) = self.slots[pos];
            let mut v = 0;
            loop {
                set(f, slot, v);
                if (self.exponent)(f) > self.order {
                    break;
                }
                self.rec(pos + 1, f, totals);
                if uses.iter().any(|&p| totals[p] >= self.max_deg) {
                    break;
                }
                for &p in uses {
                    totals[p] += 1;
                }
                v += 1;
            }
            for &p in uses {
                totals[p] -= v;
            }
            set(f, slot, 0);
        }
    }
    let slots = SLOTS
        .iter()
        .copied()
        .filter(|(_, uses)| uses.iter().all(|&p| p < primaries))
        .collect();
    let mut s = Search {
        slots,
        max_deg,
        order: order as i64,
        exponent,
        out: Vec::new(),
    };
    s.rec(0, &mut ConstraintSolution::default(), &mut [0; 4]);
    s.out.sort();
    s.out
}

fn goellnitz_exponent(f: &ConstraintSolution) -> i64 {
    triangular((f.a + f.b + f.c + f.ab + f.ac + f.bc) as i64) + t(f.ab) + t(f.ac) + triangular(f.bc as i64 - 1)
}

fn schur_exponent(f: &ConstraintSolution) -> i64 {
    triangular((f.a + f.b + f.ab) as i64) + t(f.ab)
}

/// Sum side of a generating-function identity: each frequency vector
/// contributes `A^i B^j C^k D^l` times its summand.
fn sum_side(fs: &[ConstraintSolution], summand: fn(&ConstraintSolution, usize) -> QPoly, order: usize) -> QSeries {
    let mut by_profile: BTreeMap<[u32; 4], QPoly> = BTreeMap::new();
    for f in fs {
        let s = summand(f, order);
        let slot = by_profile.entry(f.primary_totals()).or_default();
        *slot = &*slot + &s;
    }
    let mut out = QSeries::zero(order);
    for ([i, j, k, l], p) in by_profile {
        out.add_assign(&QSeries::from_qpoly_times(&p, &ParamMonomial::abcd(i as i32, j as i32, k as i32, l as i32), order));
    }
    out
}

/// `(-Xq)_inf` over the first `primaries` parameters, keeping parameter
/// degrees at most `max_deg`.
pub fn product_side(primaries: usize, max_deg: u32, order: usize) -> Result<QSeries, IdentityError> {
    let mut acc = QSeries::one(order);
    for &p in &Param::ABCD[..primaries] {
        let f = poch(PochBase::new(-1, ParamMonomial::var(p), 1), PochLen::Infinite, order)?;
        acc = acc.mul(&f).filter_monomials(|m| within(m, max_deg));
    }
    Ok(acc)
}

fn within(m: &ParamMonomial, max_deg: u32) -> bool {
    Param::ABCD.iter().all(|&p| m.exp(p) <= max_deg as i32)
}

/// Sum side of the key identity over all frequency vectors that can reach
/// `q^order` with parameter degrees at most `max_deg`.
pub fn key_sum_side(max_deg: u32, order: usize) -> QSeries {
    sum_side(&frequency_vectors(4, max_deg, order, key_exponent), key_summand, order)
}

/// The key identity as a generating function, restricted to parameter
/// degrees at most `max_deg` in each of `A, B, C, D`.
pub fn key_identity_genfun(order: usize, max_deg: u32) -> Result<IdentityReport, IdentityError> {
    if order < 1 {
        return Err(IdentityError::Invalid("order must be at least 1".into()));
    }
    let lhs = key_sum_side(max_deg, order);
    let rhs = product_side(4, max_deg, order)?;
    Ok(IdentityReport::new("key_genfun", order as i64)
        .param("max_param_degree", max_deg)
        .with(compare_series(&lhs, &rhs, order)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reduction {
    /// Three parameters, `D` forced to zero.
    Goellnitz3,
    /// Two parameters, `C` and `D` forced to zero.
    Schur2,
}

impl Reduction {
    pub fn name(self) -> &'static str {
        match self {
            Reduction::Goellnitz3 => "goellnitz3",
            Reduction::Schur2 => "schur2",
        }
    }

    pub fn primaries(self) -> usize {
        match self {
            Reduction::Goellnitz3 => 3,
            Reduction::Schur2 => 2,
        }
    }

    fn summand(self) -> fn(&ConstraintSolution, usize) -> QPoly {
        match self {
            Reduction::Goellnitz3 => goellnitz_summand,
            Reduction::Schur2 => schur_summand,
        }
    }

    fn exponent(self) -> fn(&ConstraintSolution) -> i64 {
        match self {
            Reduction::Goellnitz3 => goellnitz_exponent,
            Reduction::Schur2 => schur_exponent,
        }
    }
}

/// One cell of a reduced identity: its own summands against the distinct-
/// parts side, and summand by summand against the key summands with the
/// missing parameters' colors empty.
pub fn reduction_cell(target: Reduction, profile: &PartProfile, order: usize) -> Result<IdentityReport, IdentityError> {
    assert_eq!(profile.primaries(), target.primaries());
    check_order(profile, order)?;
    let label = profile_monomial(profile);
    let summand = target.summand();
    let mut lhs = QPoly::zero();
    let mut report = profile_report(&format!("reduction_cell_{}", target.name()), profile, order);
    for f in ConstraintSolution::solutions_for(profile) {
        let s = summand(&f, order);
        report.record(compare_qpoly(&key_summand(&f, order), &s, Some(order), &label));
        lhs = &lhs + &s;
    }
    report.record(compare_qpoly(&lhs, &distinct_parts_side(profile, order), Some(order), &label));
    Ok(report)
}

/// The reduced identity as a generating function: its sum side against the
/// product side, and against the key identity's sum side with the missing
/// parameters set to zero.
pub fn reduction_genfun(target: Reduction, order: usize, max_deg: u32) -> Result<IdentityReport, IdentityError> {
    let k = target.primaries();
    let fs = frequency_vectors(k, max_deg, order, target.exponent());
    let lhs = sum_side(&fs, target.summand(), order);
    let mut report = IdentityReport::new(&format!("reduction_genfun_{}", target.name()), order as i64)
        .param("max_param_degree", max_deg);
    report.record(compare_series(&lhs, &product_side(k, max_deg, order)?, order));
    let mut key = key_sum_side(max_deg, order);
    for &p in &Param::ABCD[k..] {
        key = key.drop_param(p);
    }
    report.record(compare_series(&key, &lhs, order));
    Ok(report)
}

/// All reduction checks: cells up to `max_total` parts and the generating
/// functions at `order` with degrees at most `max_deg`.
pub fn reduction_check(target: Reduction, max_total: u32, order: usize, max_deg: u32) -> Result<Vec<IdentityReport>, IdentityError> {
    let mut out = Vec::new();
    for p in PartProfile::all_up_to(target.primaries(), max_total) {
        let floor: i64 = p.counts().iter().map(|&x| t(x)).sum();
        out.push(reduction_cell(target, &p, floor as usize + order)?);
    }
    out.push(reduction_genfun(target, order, max_deg)?);
    Ok(out)
}
