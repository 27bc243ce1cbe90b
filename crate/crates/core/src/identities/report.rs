use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentZSeries, ParamMonomial, QPoly, QRational, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A report parameter: an integer or a short label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{}", v),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// The first coefficient where the two sides disagree. Coefficients are
/// decimal strings so nothing is lost in JSON.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mismatch {
    pub q: i64,
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

impl Mismatch {
    pub fn new(q: i64, monomial: impl fmt::Display, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Mismatch {
            q,
            monomial: monomial.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, ParamValue>,
    pub status: Status,
    pub order: i64,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn new(identity: &str, order: i64) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            order,
            first_mismatch: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records a mismatch unless one is already recorded.
    pub fn record(&mut self, m: Option<Mismatch>) {
        if self.first_mismatch.is_none() {
            if let Some(m) = m {
                self.first_mismatch = Some(m);
                self.status = Status::Fail;
            }
        }
    }

    pub fn with(mut self, m: Option<Mismatch>) -> Self {
        self.record(m);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `identity[k=v,...]`, the sort and display key.
    pub fn label(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        format!("{}[{}]", self.identity, ps.join(","))
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} {} order={}", status, self.label(), self.order)?;
        if let Some(m) = &self.first_mismatch {
            write!(f, " first mismatch at q^{} [{}]: lhs={} rhs={}", m.q, m.monomial, m.lhs, m.rhs)?;
        }
        Ok(())
    }
}

/// Sorts reports by identity id, then parameters.
pub fn sort_reports(reports: &mut [IdentityReport]) {
    reports.sort_by(|a, b| (&a.identity, &a.params, a.order).cmp(&(&b.identity, &b.params, b.order)));
}

thread_local! {
    static FAULT: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with a fault armed on this thread: the next comparison adds one
/// to a single right-hand coefficient before comparing.
pub fn with_injected_fault<T>(f: impl FnOnce() -> T) -> T {
    FAULT.with(|c| c.set(true));
    let out = f();
    FAULT.with(|c| c.set(false));
    out
}

fn take_fault() -> bool {
    FAULT.with(|c| c.replace(false))
}

/// Compares two series coefficientwise on `q^0..=upto`, visiting monomials
/// in sorted order.
pub fn compare_series(lhs: &QSeries, rhs: &QSeries, upto: usize) -> Option<Mismatch> {
    let upto = upto.min(lhs.order()).min(rhs.order());
    let mut rhs = rhs.clone();
    if take_fault() {
        rhs.coeff_mut(0).add_term(ParamMonomial::ONE, BigInt::one());
    }
    for e in 0..=upto {
        let (l, r) = (lhs.coeff(e), rhs.coeff(e));
        if l == r {
            continue;
        }
        let monos: BTreeSet<ParamMonomial> = l.terms().chain(r.terms()).map(|(m, _)| *m).collect();
        for m in monos {
            let (a, b) = (l.coeff(&m), r.coeff(&m));
            if a != b {
                return Some(Mismatch::new(e as i64, m, a, b));
            }
        }
    }
    None
}

/// Compares two `q`-polynomials on `q^0..=upto` (all of them when `None`),
/// labelling a mismatch with `label`.
pub fn compare_qpoly(lhs: &QPoly, rhs: &QPoly, upto: Option<usize>, label: &ParamMonomial) -> Option<Mismatch> {
    let mut rhs = rhs.clone();
    if take_fault() {
        rhs = &rhs + &QPoly::one();
    }
    let top = lhs.coeffs().len().max(rhs.coeffs().len());
    let top = upto.map_or(top, |u| top.min(u + 1));
    (0..top).find_map(|e| {
        let (a, b) = (lhs.coeff(e), rhs.coeff(e));
        (a != b).then(|| Mismatch::new(e as i64, label, a, b))
    })
}

/// Compares two Laurent series in `z` on the given window and on
/// `q^0..=upto`.
pub fn compare_laurent(lhs: &LaurentZSeries, rhs: &LaurentZSeries, window: (i32, i32), upto: usize) -> Option<Mismatch> {
    let mut rhs = rhs.clone();
    if take_fault() {
        let bumped = rhs.zcoeff(0).add(&QSeries::one(rhs.order()));
        let (lo, hi) = rhs.window();
        let mut wide = LaurentZSeries::zero(lo.min(0), hi.max(0), rhs.order());
        for (e, s) in rhs.iter() {
            wide.set(e, s.clone());
        }
        wide.set(0, bumped);
        rhs = wide;
    }
    let (lo, hi) = window;
    for z in lo..=hi {
        let (a, b) = (lhs.zcoeff(z), rhs.zcoeff(z));
        if let Some(mut m) = compare_series(&a, &b, upto) {
            m.monomial = with_z(&m.monomial, z);
            return Some(m);
        }
    }
    None
}

fn with_z(mono: &str, z: i32) -> String {
    let zs = match z {
        0 => return mono.to_string(),
        1 => "z".to_string(),
        _ => format!("z^{}", z),
    };
    if mono == "1" {
        zs
    } else {
        format!("{} {}", mono, zs)
    }
}

/// Compares two rational functions by cross-multiplication; a mismatch
/// reports the first differing coefficient of `lhs_num * rhs_den` against
/// `rhs_num * lhs_den`.
pub fn compare_rational(lhs: &QRational, rhs: &QRational, label: &ParamMonomial) -> Option<Mismatch> {
    let mut rhs = rhs.clone();
    if take_fault() {
        rhs = rhs.add(&QRational::one());
    }
    let l = lhs.numerator() * rhs.denominator();
    let r = rhs.numerator() * lhs.denominator();
    if l == r {
        return None;
    }
    let top = l.coeffs().len().max(r.coeffs().len());
    (0..top).find_map(|e| {
        let (a, b) = (l.coeff(e), r.coeff(e));
        (a != b).then(|| Mismatch::new(e as i64, label, a, b))
    })
}

/// Compares integer tables indexed by `n`.
pub fn compare_counts(lhs: &[u64], rhs: &[u64], label: &str) -> Option<Mismatch> {
    let mut rhs = rhs.to_vec();
    if take_fault() {
        if let Some(x) = rhs.first_mut() {
            *x += 1;
        }
    }
    let top = lhs.len().max(rhs.len());
    (0..top).find_map(|n| {
        let a = lhs.get(n).copied().unwrap_or(0);
        let b = rhs.get(n).copied().unwrap_or(0);
        (a != b).then(|| Mismatch::new(n as i64, label, a, b))
    })
}

/// A single boolean assertion; the mismatch carries a description.
pub fn check(ok: bool, what: impl FnOnce() -> String) -> Option<Mismatch> {
    let ok = ok && !take_fault();
    (!ok).then(|| Mismatch::new(0, what(), "false", "true"))
}
