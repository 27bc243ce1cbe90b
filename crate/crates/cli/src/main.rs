mod cache;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qlab_core::algebra::ParamMonomial;
use qlab_core::identities::{
    capparelli_product, items_for, run_items, BatteryConfig, BatteryItem, IdentityReport, NoCache, SeriesCache, Target,
};
use qlab_core::partitions::{
    apply_dilation, capparelli_refined, capparelli_table, count_uncolored_table, enumerate_type1, CapparelliSide,
    ColorScheme, DilationMap, PartProfile, Side, Theorem,
};
use serde::Serialize;

use cache::FsCache;

#[derive(Parser)]
#[command(name = "qlab", version, about = "Exact checks of a four-parameter partition identity and its relatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one group of checks, or all of them.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// q-order; for cell checks, the margin above each cell's lowest exponent
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: Option<u64>,
        #[arg(long)]
        max_total: Option<u32>,
        #[arg(long)]
        max_param_degree: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        l_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = default_jobs(), value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Cache directory for expensive series; defaults to $QLAB_CACHE
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Tabulate both sides of an uncolored partition theorem.
    Count {
        #[arg(value_enum)]
        what: CountTarget,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        /// `i,j` for the refined Capparelli counts
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List Type-1 colored partitions of n.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "abcd")]
        scheme: String,
        /// Keep partitions with these numbers of parts per primary color
        #[arg(long)]
        profile: Option<String>,
        /// Also print the image under a dilation: schur, goellnitz or mod15
        #[arg(long)]
        dilate: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyTarget {
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
    All,
}

impl VerifyTarget {
    fn targets(self) -> Vec<Target> {
        match self {
            VerifyTarget::All => Target::ALL.to_vec(),
            other => {
                let name = other.to_possible_value().unwrap().get_name().to_string();
                vec![Target::from_name(&name).expect("every verify target maps to a battery target")]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CountTarget {
    Schur,
    Goellnitz,
    Thm3,
    Capparelli,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

fn default_jobs() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ConfigEcho {
    target: String,
    #[serde(flatten)]
    ranges: BatteryConfig,
}

#[derive(Serialize)]
struct BatteryReport {
    reports: Vec<IdentityReport>,
    summary: Summary,
    config: ConfigEcho,
    wall_time_seconds: f64,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn pass_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    target: VerifyTarget,
    config: BatteryConfig,
    format: Format,
    jobs: usize,
    cache_dir: Option<PathBuf>,
    inject_fault: bool,
) -> ExitCode {
    let start = Instant::now();
    let cache: Box<dyn SeriesCache> = match cache::default_dir(cache_dir.as_deref()) {
        Some(dir) => match FsCache::new(&dir) {
            Ok(c) => Box::new(c),
            Err(e) => return usage_error(format!("cannot use cache directory {}: {}", dir.display(), e)),
        },
        None => Box::new(NoCache),
    };
    let items: Vec<BatteryItem> = target.targets().into_iter().flat_map(|t| items_for(t, &config)).collect();
    log::info!("running {} items on {} threads", items.len(), jobs);
    let reports = match run_items(&items, jobs, cache.as_ref(), inject_fault) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let passed = reports.iter().filter(|r| r.passed()).count();
    let summary = Summary {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
    };
    let ok = summary.failed == 0;
    match format {
        Format::Text => {
            for r in &reports {
                println!("{}", r);
            }
            println!("{} passed, {} failed", summary.passed, summary.failed);
        }
        Format::Json => {
            let target_name = target.to_possible_value().unwrap().get_name().to_string();
            let out = BatteryReport {
                reports,
                summary,
                config: ConfigEcho {
                    target: target_name,
                    ranges: config,
                },
                wall_time_seconds: start.elapsed().as_secs_f64(),
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serializes"));
        }
    }
    pass_code(ok)
}

#[derive(Serialize)]
struct CountRow {
    n: u32,
    lhs: u64,
    rhs: u64,
    equal: bool,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad profile {:?}", s))?;
    match v[..] {
        [i, j] => Ok((i, j)),
        _ => Err(format!("the refined counts take a profile i,j, got {:?}", s)),
    }
}

fn count(what: CountTarget, n_max: u32, profile: Option<String>, format: Format) -> ExitCode {
    let n = n_max as u64;
    let (header, lhs, rhs): ((&str, &str), Vec<u64>, Vec<u64>) = match (what, &profile) {
        (CountTarget::Capparelli, Some(p)) => {
            let (i, j) = match parse_pair(p) {
                Ok(x) => x,
                Err(e) => return usage_error(e),
            };
            let product = match capparelli_product(n_max as usize) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let coeffs = product.param_coeff(&ParamMonomial::abcd(i as i32, j as i32, 0, 0));
            let lhs = (0..=n_max as usize).map(|e| u64::try_from(coeffs.coeff(e)).unwrap_or(u64::MAX)).collect();
            let refined = capparelli_refined(n);
            let rhs = (0..=n).map(|k| refined.get(&(k, i, j)).copied().unwrap_or(0)).collect();
            (("C(n;i,j)", "D(n;i,j)"), lhs, rhs)
        }
        (_, Some(_)) => return usage_error("--profile only applies to capparelli"),
        (CountTarget::Capparelli, None) => (
            ("C*(n)", "D(n)"),
            capparelli_table(CapparelliSide::CStar, n),
            capparelli_table(CapparelliSide::D, n),
        ),
        (t, None) => {
            let theorem = match t {
                CountTarget::Schur => Theorem::Schur,
                CountTarget::Goellnitz => Theorem::Goellnitz,
                _ => Theorem::Mod15,
            };
            (
                ("P(n)", "G(n)"),
                count_uncolored_table(theorem, Side::P, n),
                count_uncolored_table(theorem, Side::G, n),
            )
        }
    };
    let rows: Vec<CountRow> = (0..=n_max)
        .map(|k| {
            let (a, b) = (lhs[k as usize], rhs[k as usize]);
            CountRow { n: k, lhs: a, rhs: b, equal: a == b }
        })
        .collect();
    let ok = rows.iter().all(|r| r.equal);
    match format {
        Format::Text => {
            println!("n\t{}\t{}\tequal", header.0, header.1);
            for r in &rows {
                println!("{}\t{}\t{}\t{}", r.n, r.lhs, r.rhs, r.equal);
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize")),
    }
    pass_code(ok)
}

#[derive(Serialize)]
struct EnumRow {
    partition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<String>,
}

fn enumerate(n: u32, scheme: &str, profile: Option<String>, dilate: Option<String>, format: Format) -> ExitCode {
    let scheme = match ColorScheme::from_name(scheme) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let profile = match profile.map(|p| p.parse::<PartProfile>()) {
        Some(Ok(p)) if p.primaries() > scheme.primaries() => {
            return usage_error(format!("profile {} has more entries than scheme {}", p, scheme.name()))
        }
        Some(Ok(p)) => Some(p.widen(4)),
        Some(Err(e)) => return usage_error(e),
        None => None,
    };
    let map = match dilate.map(|d| DilationMap::from_name(&d)) {
        Some(Ok(m)) if m.scheme() != scheme => {
            return usage_error(format!("dilation {} needs scheme {}", m, m.scheme().name()))
        }
        Some(Ok(m)) => Some(m),
        Some(Err(e)) => return usage_error(e),
        None => None,
    };
    let mut rows = Vec::new();
    for p in enumerate_type1(n, &scheme) {
        if let Some(want) = &profile {
            if p.solution().primary_totals() != want.counts()[..4] {
                continue;
            }
        }
        let image = map.as_ref().map(|m| {
            let parts = apply_dilation(&p, m).expect("scheme matches the dilation");
            if parts.is_empty() {
                "(empty)".to_string()
            } else {
                parts.iter().map(u64::to_string).collect::<Vec<_>>().join("+")
            }
        });
        rows.push(EnumRow {
            partition: p.to_string(),
            image,
        });
    }
    match format {
        Format::Text => {
            for r in &rows {
                match &r.image {
                    Some(img) => println!("{} -> {}", r.partition, img),
                    None => println!("{}", r.partition),
                }
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize")),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            target,
            order,
            max_total,
            max_param_degree,
            m_max,
            l_max,
            n_max,
            format,
            jobs,
            cache,
            inject_fault,
        } => {
            let config = BatteryConfig {
                order: order.map(|o| o as usize),
                max_total,
                max_param_degree,
                m_max,
                l_max,
                n_max,
            };
            verify(target, config, format, jobs as usize, cache, inject_fault)
        }
        Command::Count {
            what,
            n_max,
            profile,
            format,
        } => count(what, n_max, profile, format),
        Command::Enumerate {
            n,
            scheme,
            profile,
            dilate,
            format,
        } => enumerate(n, &scheme, profile, dilate, format),
    }
}
