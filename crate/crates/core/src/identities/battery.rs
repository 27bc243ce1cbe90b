//! Work items for the full battery and a parallel runner with deterministic
//! output order.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{triangular, QSeries};
use crate::partitions::PartProfile;

use super::bridge::theorem_genfun_bridge;
use super::classical::{classical_checks, Classical};
use super::finite::{l_form_consistency, limit_check, support_check, verify_recurrence_step_with, verify_sm_sigma_with};
use super::hfunc::h_function_check;
use super::key::{key_identity_cell, key_identity_genfun, reduction_cell, reduction_genfun, Reduction};
use super::prospects::{bounded_goellnitz, bounded_limit, capparelli_check, product_transform_check, quadruple_product, Transform};
use super::report::{sort_reports, with_injected_fault, IdentityReport, Mismatch};
use super::rho::{case_analysis_check, rho_check, RhoKind};
use super::IdentityError;

/// Memoizes expensive series by key and order.
pub trait SeriesCache: Sync {
    fn get_or_compute(
        &self,
        key: &str,
        order: usize,
        compute: &dyn Fn() -> Result<QSeries, IdentityError>,
    ) -> Result<QSeries, IdentityError>;
}

/// Always recomputes.
pub struct NoCache;

impl SeriesCache for NoCache {
    fn get_or_compute(
        &self,
        _key: &str,
        _order: usize,
        compute: &dyn Fn() -> Result<QSeries, IdentityError>,
    ) -> Result<QSeries, IdentityError> {
        compute()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    KeyCells,
    KeyGenfun,
    Reductions,
    Classical,
    SmSigma,
    Recurrences,
    Rho,
    Cases,
    Support,
    Bounded,
    Quadruple,
    Hfunc,
    Bridge,
}

impl Target {
    pub const ALL: [Target; 13] = [
        Target::KeyCells,
        Target::KeyGenfun,
        Target::Reductions,
        Target::Classical,
        Target::SmSigma,
        Target::Recurrences,
        Target::Rho,
        Target::Cases,
        Target::Support,
        Target::Bounded,
        Target::Quadruple,
        Target::Hfunc,
        Target::Bridge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::KeyCells => "key-cells",
            Target::KeyGenfun => "key-genfun",
            Target::Reductions => "reductions",
            Target::Classical => "classical",
            Target::SmSigma => "sm-sigma",
            Target::Recurrences => "recurrences",
            Target::Rho => "rho",
            Target::Cases => "cases",
            Target::Support => "support",
            Target::Bounded => "bounded",
            Target::Quadruple => "quadruple",
            Target::Hfunc => "hfunc",
            Target::Bridge => "bridge",
        }
    }

    pub fn from_name(s: &str) -> Option<Target> {
        Target::ALL.iter().copied().find(|t| t.name() == s)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Overrides for the battery's ranges. Unset fields take per-target
/// defaults; for cell checks `order` is the margin above the cell's lowest
/// exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub order: Option<usize>,
    pub max_total: Option<u32>,
    pub max_param_degree: Option<u32>,
    pub m_max: Option<u32>,
    pub l_max: Option<u32>,
    pub n_max: Option<u32>,
}

impl BatteryConfig {
    fn order(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }
    fn max_total(&self, default: u32) -> u32 {
        self.max_total.unwrap_or(default)
    }
    fn degree(&self, default: u32) -> u32 {
        self.max_param_degree.unwrap_or(default)
    }
    fn m_max(&self, default: u32) -> u32 {
        self.m_max.unwrap_or(default)
    }
    fn l_max(&self, default: u32) -> u32 {
        self.l_max.unwrap_or(default)
    }
    fn n_max(&self, default: u32) -> u32 {
        self.n_max.unwrap_or(default)
    }
}

type Job = dyn Fn(&dyn SeriesCache) -> Result<Vec<IdentityReport>, IdentityError> + Send + Sync;

/// One independent unit of work.
pub struct BatteryItem {
    pub name: String,
    run: Box<Job>,
}

impl BatteryItem {
    pub fn new(
        name: impl Into<String>,
        run: impl Fn(&dyn SeriesCache) -> Result<Vec<IdentityReport>, IdentityError> + Send + Sync + 'static,
    ) -> Self {
        BatteryItem {
            name: name.into(),
            run: Box::new(run),
        }
    }

    fn single(name: impl Into<String>, run: impl Fn() -> Result<IdentityReport, IdentityError> + Send + Sync + 'static) -> Self {
        BatteryItem::new(name, move |_| run().map(|r| vec![r]))
    }

    pub fn run(&self, cache: &dyn SeriesCache) -> Result<Vec<IdentityReport>, IdentityError> {
        (self.run)(cache)
    }
}

/// Folds many reports into one, keeping the first failure and naming the
/// failing report in its monomial.
fn merged(base: IdentityReport, parts: impl IntoIterator<Item = IdentityReport>) -> IdentityReport {
    let mut out = base;
    for r in parts {
        if let Some(m) = r.first_mismatch.clone() {
            let monomial = format!("{}: {}", r.label(), m.monomial);
            out.record(Some(Mismatch { monomial, ..m }));
        }
    }
    out
}

fn floor(p: &PartProfile) -> usize {
    p.counts().iter().map(|&x| triangular(x as i64)).sum::<i64>() as usize
}

fn rho_item(kind: RhoKind, m: u32, max_index: u32) -> BatteryItem {
    BatteryItem::single(format!("{}/m={}", kind.name(), m), move || {
        let mut parts = Vec::new();
        let mut idx = vec![0u32; kind.arity()];
        loop {
            if !idx.contains(&m) {
                parts.push(rho_check(kind, &idx, m)?);
            }
            // odometer over 0..=max_index
            let mut t = 0;
            while t < idx.len() && idx[t] == max_index {
                idx[t] = 0;
                t += 1;
            }
            if t == idx.len() {
                break;
            }
            idx[t] += 1;
        }
        let base = IdentityReport::new(kind.name(), 0).param("m", m).param("max_index", max_index);
        Ok(merged(base, parts))
    })
}

/// The work items for one target.
pub fn items_for(target: Target, config: &BatteryConfig) -> Vec<BatteryItem> {
    let mut out = Vec::new();
    match target {
        Target::KeyCells => {
            let margin = config.order(40);
            for p in PartProfile::all_up_to(4, config.max_total(10)) {
                out.push(BatteryItem::single(format!("key-cell/{}", p), move || {
                    key_identity_cell(&p, floor(&p) + margin)
                }));
            }
        }
        Target::KeyGenfun => {
            let (order, deg) = (config.order(25), config.degree(4));
            out.push(BatteryItem::single("key-genfun", move || key_identity_genfun(order, deg)));
        }
        Target::Reductions => {
            let (order, deg) = (config.order(25), config.degree(4));
            for (target, total) in [(Reduction::Goellnitz3, config.max_total(10)), (Reduction::Schur2, config.max_total(12))] {
                for p in PartProfile::all_up_to(target.primaries(), total) {
                    out.push(BatteryItem::single(format!("reduction/{}/{}", target.name(), p), move || {
                        reduction_cell(target, &p, floor(&p) + order)
                    }));
                }
                out.push(BatteryItem::single(format!("reduction/{}", target.name()), move || {
                    reduction_genfun(target, order, deg)
                }));
            }
        }
        Target::Classical => {
            let order = config.order(30);
            for which in Classical::ALL {
                out.push(BatteryItem::single(which.name(), move || classical_checks(which, order, (-7, 7))));
            }
        }
        Target::SmSigma => {
            let order = config.order(30);
            for m in 0..=config.m_max(5) {
                out.push(BatteryItem::new(format!("sm-sigma/m={}", m), move |cache| {
                    Ok(vec![verify_sm_sigma_with(m, order, cache)?])
                }));
            }
        }
        Target::Recurrences => {
            let order = config.order(30);
            let m_max = config.m_max(5);
            for m in 1..=m_max {
                out.push(BatteryItem::new(format!("recurrence/m={}", m), move |cache| {
                    Ok(vec![verify_recurrence_step_with(m, order, cache)?])
                }));
            }
            for m in 1..=m_max.min(4) {
                out.push(BatteryItem::single(format!("l-forms/m={}", m), move || {
                    Ok(l_form_consistency(m, &[-2, -1, 0, 1, 2]))
                }));
            }
        }
        Target::Rho => {
            for m in 1..=config.m_max(12) {
                out.push(rho_item(RhoKind::Rho1, m, 6));
                out.push(rho_item(RhoKind::Rho2, m, 6));
            }
        }
        Target::Cases => {
            for m in 1..=config.m_max(6) {
                out.push(BatteryItem::single(format!("cases/m={}", m), move || case_analysis_check(m)));
            }
        }
        Target::Support => {
            let m_max = config.m_max(8);
            for m in 0..=m_max {
                out.push(BatteryItem::single(format!("support/m={}", m), move || Ok(support_check(m))));
            }
            let n_max = config.n_max(20) as usize;
            out.push(BatteryItem::single("limit", move || Ok(limit_check(n_max, m_max))));
        }
        Target::Bounded => {
            let total = config.max_total(8);
            let profiles: Vec<[u32; 3]> = PartProfile::all_up_to(3, total)
                .iter()
                .map(|p| [p.get(0), p.get(1), p.get(2)])
                .collect();
            for l in 0..=config.l_max(8) {
                let ps = profiles.clone();
                out.push(BatteryItem::single(format!("bounded/L={}", l), move || {
                    let base = IdentityReport::new("bounded", 0).param("L", l).param("max_total", total);
                    Ok(merged(base, ps.iter().map(|&p| bounded_goellnitz(l, p))))
                }));
            }
            let order = config.order(15);
            out.push(BatteryItem::single("bounded-limit", move || {
                let base = IdentityReport::new("bounded_limit", order as i64).param("max_total", total);
                Ok(merged(base, profiles.iter().map(|&p| bounded_limit(p, order))))
            }));
        }
        Target::Quadruple => {
            let order = config.order(20);
            let deg = config.degree(4);
            let w = order as i32;
            out.push(BatteryItem::single("quadruple", move || quadruple_product(order, (-w, w), deg)));
        }
        Target::Hfunc => {
            let order = config.order(10);
            out.push(BatteryItem::single("hfunc", move || h_function_check(order, None)));
        }
        Target::Bridge => {
            for (theorem, default) in [(1, 100), (2, 100), (3, 160), (4, 40), (5, 40), (6, 30)] {
                let n = config.n_max(default);
                out.push(BatteryItem::single(format!("bridge/{}", theorem), move || theorem_genfun_bridge(theorem, n)));
            }
            let (refined, total) = (config.n_max(40) as usize, config.n_max(60) as usize);
            out.push(BatteryItem::single("capparelli", move || capparelli_check(refined, total)));
            let order = config.order(30);
            for t in Transform::ALL {
                out.push(BatteryItem::single(format!("transform/{}", t.name()), move || product_transform_check(t, order)));
            }
        }
    }
    out
}

/// Runs the items on `jobs` threads and returns the reports sorted by
/// identity and parameters. With `inject_fault` the first item runs with a
/// single perturbed coefficient.
pub fn run_items(
    items: &[BatteryItem],
    jobs: usize,
    cache: &dyn SeriesCache,
    inject_fault: bool,
) -> Result<Vec<IdentityReport>, IdentityError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| IdentityError::Invalid(e.to_string()))?;
    let results: Vec<Result<Vec<IdentityReport>, IdentityError>> = pool.install(|| {
        items
            .par_iter()
            .enumerate()
            .map(|(i, item)| {
                if inject_fault && i == 0 {
                    with_injected_fault(|| item.run(cache))
                } else {
                    item.run(cache)
                }
            })
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    sort_reports(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> BatteryConfig {
        BatteryConfig {
            order: Some(6),
            max_total: Some(2),
            max_param_degree: Some(1),
            m_max: Some(2),
            l_max: Some(2),
            n_max: Some(10),
        }
    }

    #[test]
    fn tiny_battery_passes_and_is_order_independent() {
        let items: Vec<BatteryItem> = Target::ALL.iter().flat_map(|&t| items_for(t, &tiny())).collect();
        let one = run_items(&items, 1, &NoCache, false).unwrap();
        let four = run_items(&items, 4, &NoCache, false).unwrap();
        assert_eq!(one, four);
        for r in &one {
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn fault_fails_one_report() {
        let items = items_for(Target::Cases, &tiny());
        let reports = run_items(&items, 2, &NoCache, true).unwrap();
        assert_eq!(reports.iter().filter(|r| !r.passed()).count(), 1);
    }

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(Target::from_name(t.name()), Some(t));
        }
    }
}
