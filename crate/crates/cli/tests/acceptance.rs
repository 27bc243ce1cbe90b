//! One check per acceptance criterion, each at its full range with exact
//! arithmetic. Prints a PASS/FAIL line per criterion and fails if any failed.

use std::collections::BTreeSet;
use std::process::Command;

use qlab_core::algebra::{ParamPoly, QSeries};
use qlab_core::identities::*;
use qlab_core::partitions::{enumerate_type1, ColorScheme, PartProfile};
use serde_json::Value;

type Outcome = Result<String, String>;

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs the battery items whose names satisfy `keep` and requires every
/// report to pass.
fn battery(target: Target, config: &BatteryConfig, keep: impl Fn(&str) -> bool) -> Outcome {
    let items: Vec<BatteryItem> = items_for(target, config).into_iter().filter(|i| keep(&i.name)).collect();
    if items.is_empty() {
        return Err(format!("no {} items selected", target));
    }
    let reports = run_items(&items, jobs(), &NoCache, false).map_err(|e| e.to_string())?;
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_string()),
        None => Ok(format!("{} items, {} reports", items.len(), reports.len())),
    }
}

fn all(_: &str) -> bool {
    true
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Ok(format!("{}; {}", a?, b?))
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn weight_six() -> Outcome {
    let want: BTreeSet<BTreeSet<&str>> = [
        "ABCD_6",
        "AB_2+CD_4",
        "AC_2+BD_4",
        "AD_2+BC_4",
        "BC_2+AD_4",
        "BD_2+AC_4",
        "CD_2+AB_4",
        "A_1+B_2+CD_3",
        "A_1+BC_2+D_3",
        "A_1+BD_2+C_3",
    ]
    .iter()
    .map(|s| s.split('+').collect())
    .collect();
    let profile = PartProfile::new(&[1, 1, 1, 1]);
    let found: Vec<String> = enumerate_type1(6, &ColorScheme::abcd())
        .into_iter()
        .filter(|p| p.solution().profile(4) == profile)
        .map(|p| p.to_string())
        .collect();
    let got: BTreeSet<BTreeSet<&str>> = found.iter().map(|s| s.split('+').collect()).collect();
    ensure(found.len() == 10, &format!("{} partitions, expected 10", found.len()))?;
    ensure(got == want, "partitions differ from the expected list")?;
    let p = distinct_parts_side(&profile, 6).coeff(6);
    ensure(p == 10.into(), &format!("P(6;1,1,1,1) = {}", p))?;
    Ok("10 partitions, P = 10".into())
}

fn finitization() -> Outcome {
    let cfg = BatteryConfig { m_max: Some(5), order: Some(30), ..Default::default() };
    let a = battery(Target::SmSigma, &cfg, all)?;
    let b = battery(Target::Recurrences, &cfg, all)?;
    let c = battery(Target::Support, &BatteryConfig { m_max: Some(8), ..Default::default() }, all)?;
    ensure(compute_s(0, 30).map_err(|e| e.to_string())?.is_zero(), "S(0) != 0")?;
    ensure(compute_sigma(0, 30).sigma.is_zero(), "sigma(0) != 0")?;
    let e3 = QSeries::term(ParamPoly::elementary_abcd(3), 3, 30);
    ensure(compute_s(1, 30).map_err(|e| e.to_string())? == e3, "S(1) != q^3 e3")?;
    ensure(compute_sigma(1, 30).sigma == e3, "sigma(1) != q^3 e3")?;
    Ok(format!("S=sigma {}; recurrences {}; support {}", a, b, c))
}

fn classical() -> Outcome {
    let r = battery(Target::Classical, &BatteryConfig { order: Some(30), ..Default::default() }, all)?;
    let p = partition_counts_oracle(5, false);
    ensure(p == [1, 1, 2, 3, 5, 7], &format!("p(0..5) = {:?}", p))?;
    Ok(r)
}

fn key_cells() -> Outcome {
    let cfg = BatteryConfig { order: Some(40), max_total: Some(10), ..Default::default() };
    let n = items_for(Target::KeyCells, &cfg).len();
    ensure(n == 1001, &format!("{} cells, expected 1001", n))?;
    battery(Target::KeyCells, &cfg, all)
}

fn reductions() -> Outcome {
    let cfg = BatteryConfig { order: Some(25), max_param_degree: Some(4), ..Default::default() };
    battery(Target::Reductions, &cfg, all)
}

fn bridge(keep: &'static [&'static str]) -> Outcome {
    battery(Target::Bridge, &BatteryConfig::default(), |name| keep.contains(&name))
}

fn strip_time(stdout: &[u8]) -> Result<Value, String> {
    let mut v: Value = serde_json::from_slice(stdout).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("report is not an object")?.remove("wall_time_seconds");
    Ok(v)
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qlab");
    let run = |extra: &[&str]| {
        Command::new(bin).args(["verify", "all", "--format", "json"]).args(extra).output().map_err(|e| e.to_string())
    };
    let one = run(&["--jobs", "1"])?;
    let eight = run(&["--jobs", "8"])?;
    ensure(one.status.code() == Some(0), "jobs 1 run did not exit 0")?;
    ensure(eight.status.code() == Some(0), "jobs 8 run did not exit 0")?;
    let (a, b) = (strip_time(&one.stdout)?, strip_time(&eight.stdout)?);
    ensure(serde_json::to_vec(&a).unwrap() == serde_json::to_vec(&b).unwrap(), "JSON differs between job counts")?;
    let total = a["summary"]["total"].clone();
    let faulty = Command::new(bin)
        .args(["verify", "key-cells", "--format", "json", "--inject-fault"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(faulty.status.code() == Some(1), "fault did not give exit code 1")?;
    let f = strip_time(&faulty.stdout)?;
    ensure(f["summary"]["failed"] == 1, "fault did not fail exactly one report")?;
    Ok(format!("{} reports identical under jobs 1 and 8; fault exits 1", total))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("weight six in all four colors", Box::new(weight_six)),
        ("key identity cells", Box::new(key_cells)),
        (
            "key identity generating form",
            Box::new(|| battery(Target::KeyGenfun, &BatteryConfig { order: Some(25), max_param_degree: Some(4), ..Default::default() }, all)),
        ),
        ("reductions", Box::new(reductions)),
        ("four-, five- and six-color bridges", Box::new(|| bridge(&["bridge/4", "bridge/5", "bridge/6"]))),
        ("uncolored theorems", Box::new(|| bridge(&["bridge/1", "bridge/2", "bridge/3"]))),
        ("finitization", Box::new(finitization)),
        (
            "rho lemmas",
            Box::new(|| both(battery(Target::Rho, &BatteryConfig { m_max: Some(12), ..Default::default() }, all),
                battery(Target::Cases, &BatteryConfig { m_max: Some(6), ..Default::default() }, all))),
        ),
        (
            "bounded identity",
            Box::new(|| battery(Target::Bounded, &BatteryConfig { l_max: Some(8), max_total: Some(8), ..Default::default() }, all)),
        ),
        (
            "quadruple product",
            Box::new(|| battery(Target::Quadruple, &BatteryConfig { order: Some(20), max_param_degree: Some(4), ..Default::default() }, all)),
        ),
        ("capparelli", Box::new(|| bridge(&["capparelli"]))),
        ("classical inputs", Box::new(classical)),
        ("constant term", Box::new(|| battery(Target::Hfunc, &BatteryConfig { order: Some(10), ..Default::default() }, all))),
        ("determinism and fault injection", Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        match run() {
            Ok(detail) => println!("PASS criterion {}: {} ({})", n, name, detail),
            Err(why) => {
                println!("FAIL criterion {}: {} ({})", n, name, why);
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
