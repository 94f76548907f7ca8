//! The `regpart` command-line front end.
//!
//! Subcommands: `table` (stream one p_k table), `reproduce` (diff a
//! computation against the bundled golden tables), and `verify`
//! (bo / logconc / bounds / campaign scans).
//!
//! Exit codes are frozen for scripting:
//! 0 ok, 1 mismatch or violation, 2 invalid configuration, 3 cache
//! corruption, 4 precision exhaustion.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::cache::TableStore;
use crate::arith::KIndex;
use crate::bo::{
    self, enumerate_exceptions, induction_campaign, CampaignOptions, CampaignReport,
    ExceptionReport, VerificationParams,
};
use crate::bounds::{self, LowerBoundVariant};
use crate::error::{Error, Result};
use crate::golden;
use crate::logconc;
use crate::report::{self, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CACHE: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

/// Default cache directory when neither `REGPART_CACHE` nor `--cache-dir`
/// is set.
pub const DEFAULT_CACHE_DIR: &str = ".regpart-cache";

#[derive(Debug, Parser)]
#[command(
    name = "regpart",
    about = "Exact k-regular partition tables and verification scans",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Markdown)]
    format: FormatArg,

    /// Cache directory for p_k tables (env REGPART_CACHE overrides this).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for the scans (default: one per cpu).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Markdown => OutputFormat::Markdown,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build (or load) one table and stream `n p_k(n)` lines.
    Table {
        /// Modulus class: an integer >= 2 or "inf".
        #[arg(long)]
        k: String,
        #[arg(long)]
        n_max: usize,
    },
    /// Recompute a bundled reference table and diff against it.
    Reproduce {
        #[arg(value_enum)]
        which: ReproduceTarget,
    },
    /// Run a verification scan.
    Verify {
        #[command(subcommand)]
        scope: VerifyScope,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReproduceTarget {
    /// Exception sets for 2 <= k <= 6.
    Table1,
    /// Exception sets for 7 <= k <= 10.
    Table2,
    /// Log-concavity failure grid, 2 <= k <= 20, n <= 45.
    Table3,
    /// Exception sets of the plain partition function.
    Theorem1,
    /// The (n_k, m_k) threshold table for 2 <= k <= 6.
    Thresholds,
}

#[derive(Debug, Subcommand)]
enum VerifyScope {
    /// Bessenrodt-Ono exceptions: single k against the reference sets, or a
    /// k-range (all >= 10) for the stabilization scan.
    Bo {
        /// "2".."10", "inf", or a range "10..60".
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 200)]
        sum_bound: usize,
    },
    /// Log-concavity failures: single k reports them, a k-range runs the
    /// stabilization conjecture scan.
    Logconc {
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
    },
    /// Certified analytic bound checks.
    Bounds {
        /// Caps every horizon in the suite; the g_k scan tops out at 10^4,
        /// the p_k lower-bound scans at 2000, and the final-expression scan
        /// runs from 1470 up to this value.
        #[arg(long, default_value_t = 100_000)]
        n_max: usize,
    },
    /// The exhaustive induction campaign over all three k-classes.
    Campaign {
        /// Override the verification horizon N0.
        #[arg(long)]
        n0: Option<usize>,
        #[arg(long, default_value_t = 50)]
        k_max: usize,
    },
}

/// A `--k` argument: one class or an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KSpec {
    Single(KIndex),
    Range(usize, usize),
}

fn parse_k_spec(s: &str) -> Result<KSpec> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo
            .parse()
            .map_err(|_| Error::Config(format!("bad k range start {lo:?}")))?;
        let hi: usize = hi
            .parse()
            .map_err(|_| Error::Config(format!("bad k range end {hi:?}")))?;
        if lo < 2 || hi < lo {
            return Err(Error::Config(format!("empty or invalid k range {s:?}")));
        }
        return Ok(KSpec::Range(lo, hi));
    }
    Ok(KSpec::Single(KIndex::from_str(s)?))
}

/// Parsed and validated run configuration.
#[derive(Debug)]
pub struct RunConfig {
    format: OutputFormat,
    store: TableStore,
    jobs: Option<usize>,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.jobs == Some(0) {
            return Err(Error::Config("--jobs must be at least 1".into()));
        }
        let dir = std::env::var_os("REGPART_CACHE")
            .map(PathBuf::from)
            .or_else(|| cli.cache_dir.clone())
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Ok(RunConfig {
            format: cli.format.into(),
            store: TableStore::with_dir(dir),
            jobs: cli.jobs,
        })
    }
}

/// Entry point: parses `args` (not including the program name) and runs.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("regpart".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return EXIT_CONFIG;
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return EXIT_OK;
        }
    };
    let config = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };

    let dispatch = || match dispatch(&cli.command, &config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    match config.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool");
            pool.install(dispatch)
        }
        None => dispatch(),
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Cache(_) => EXIT_CACHE,
        Error::PrecisionExhausted { .. } => EXIT_PRECISION,
        _ => EXIT_CONFIG,
    }
}

fn dispatch(cmd: &Command, config: &RunConfig) -> Result<i32> {
    match cmd {
        Command::Table { k, n_max } => cmd_table(k, *n_max, config),
        Command::Reproduce { which } => cmd_reproduce(*which, config),
        Command::Verify { scope } => cmd_verify(scope, config),
    }
}

fn cmd_table(k: &str, n_max: usize, config: &RunConfig) -> Result<i32> {
    let k: KIndex = k.parse()?;
    let table = config.store.get(k, n_max)?;
    match config.format {
        OutputFormat::Json => {
            let values: Vec<String> = table.values().iter().map(|v| v.to_string()).collect();
            let obj = serde_json::json!({ "k": k, "n_max": n_max, "values": values });
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
        OutputFormat::Csv => {
            for (n, v) in table.values().iter().enumerate() {
                println!("{n},{v}");
            }
        }
        OutputFormat::Markdown => {
            for (n, v) in table.values().iter().enumerate() {
                println!("{n} {v}");
            }
        }
    }
    Ok(EXIT_OK)
}

/// Scan bound used when reproducing the exception tables; far beyond every
/// listed pair, so the diff also catches spurious extra exceptions.
const REPRODUCE_SUM_BOUND: usize = 200;

fn cmd_reproduce(which: ReproduceTarget, config: &RunConfig) -> Result<i32> {
    match which {
        ReproduceTarget::Theorem1 => reproduce_exceptions(&[KIndex::Infinity], config),
        ReproduceTarget::Table1 => reproduce_exceptions(
            &[2, 3, 4, 5, 6].map(KIndex::Finite),
            config,
        ),
        ReproduceTarget::Table2 => reproduce_exceptions(
            &[7, 8, 9, 10].map(KIndex::Finite),
            config,
        ),
        ReproduceTarget::Table3 => reproduce_table3(config),
        ReproduceTarget::Thresholds => reproduce_thresholds(config),
    }
}

/// Compares one computed exception report against the golden sets; returns
/// the first difference as text.
fn diff_exceptions(rep: &ExceptionReport, gold: &golden::GoldenExceptions) -> Option<String> {
    let fams: Vec<(usize, usize)> = rep
        .infinite_families
        .iter()
        .map(|f| (f.a0, f.b_from))
        .collect();
    if fams != gold.reversed_families {
        return Some(format!(
            "k={}: families {fams:?} vs reference {:?}",
            rep.k, gold.reversed_families
        ));
    }
    for (name, got, want) in [
        ("E", &rep.equality_pairs, &gold.equality),
        ("F", &rep.reversed_pairs, &gold.reversed),
    ] {
        for p in got {
            if !want.contains(p) {
                return Some(format!("k={}: extra {name} pair {p}", rep.k));
            }
        }
        for p in want {
            if !got.contains(p) {
                return Some(format!("k={}: missing {name} pair {p}", rep.k));
            }
        }
    }
    None
}

fn reproduce_exceptions(ks: &[KIndex], config: &RunConfig) -> Result<i32> {
    let mut reports = Vec::new();
    for &k in ks {
        let table = config.store.get(k, REPRODUCE_SUM_BOUND)?;
        reports.push(enumerate_exceptions(&table, REPRODUCE_SUM_BOUND)?);
    }
    print_exception_reports(&reports, config);
    for rep in &reports {
        let gold = golden::bo_exceptions(rep.k).ok_or_else(|| {
            Error::Config(format!("no reference exception sets for k={}", rep.k))
        })?;
        if let Some(diff) = diff_exceptions(rep, gold) {
            eprintln!("MISMATCH: first difference: {diff}");
            return Ok(EXIT_VIOLATION);
        }
    }
    eprintln!("match: computed exception sets equal the reference tables");
    Ok(EXIT_OK)
}

fn print_exception_reports(reports: &[ExceptionReport], config: &RunConfig) {
    match config.format {
        OutputFormat::Json => println!("{}", report::to_json(&reports)),
        OutputFormat::Csv => {
            println!("k,set,a,b");
            for rep in reports {
                for f in &rep.infinite_families {
                    println!("{},F_family,{},{}+", rep.k, f.a0, f.b_from);
                }
                for p in &rep.equality_pairs {
                    println!("{},E,{},{}", rep.k, p.a(), p.b());
                }
                for p in &rep.reversed_pairs {
                    println!("{},F,{},{}", rep.k, p.a(), p.b());
                }
            }
        }
        OutputFormat::Markdown => print!("{}", report::exception_table_markdown(reports)),
    }
}

fn reproduce_table3(config: &RunConfig) -> Result<i32> {
    let gold = golden::table3();
    let grid = logconc::emit_table3(gold.k_from, gold.k_to, gold.n_max, &config.store)?;
    match config.format {
        OutputFormat::Json => println!("{}", report::to_json(&grid)),
        OutputFormat::Csv => print!("{}", grid.to_csv()),
        OutputFormat::Markdown => print!("{}", grid.to_markdown()),
    }
    if let Some((n, k)) = grid.diff(gold) {
        eprintln!(
            "MISMATCH: first differing cell at n={n}, k={k}: computed {}, reference {}",
            grid.cell(n, k),
            gold.cell(n, k)
        );
        return Ok(EXIT_VIOLATION);
    }
    eprintln!("match: failure grid equals the reference table cell-for-cell");
    Ok(EXIT_OK)
}

/// Reproducing the threshold table means checking both directions: no
/// violation at or above `(n_k, m_k)`, and a nonpositive witness just below
/// `m_k` (so the listed threshold is sharp).
fn reproduce_thresholds(config: &RunConfig) -> Result<i32> {
    const BOUND: usize = 500;
    let mut reports = Vec::new();
    for k in 2..=6 {
        let table = config.store.get(KIndex::Finite(k), BOUND)?;
        reports.push(bo::check_thresholds(&table, BOUND)?);
    }
    match config.format {
        OutputFormat::Json => println!("{}", report::to_json(&reports)),
        _ => print!("{}", report::threshold_table_markdown(&reports)),
    }
    for rep in &reports {
        if !rep.passed() {
            println!(
                "MISMATCH: k={} has a violation above its threshold: {}",
                rep.k, rep.violations[0].0
            );
            return Ok(EXIT_VIOLATION);
        }
        let k = match rep.k {
            KIndex::Finite(k) => k,
            KIndex::Infinity => unreachable!("thresholds are for finite k"),
        };
        let table = config.store.get(rep.k, BOUND)?;
        let frontier = rep.m_k - 1;
        let witness = (rep.n_k..=frontier / 2).find_map(|a| {
            let b = frontier - a;
            if b < a {
                return None;
            }
            let pair = bo::Pair::new(a, b).ok()?;
            match bo::delta(&table, pair).ok()?.1 {
                bo::DeltaSign::Positive => None,
                _ => Some(pair),
            }
        });
        match witness {
            Some(p) => eprintln!("k={k}: sharp at m_k={}, witness {p}", rep.m_k),
            None => {
                eprintln!("MISMATCH: k={k}: no nonpositive pair at a+b={frontier}; m_k would not be sharp");
                return Ok(EXIT_VIOLATION);
            }
        }
    }
    eprintln!("match: thresholds verified and sharp");
    Ok(EXIT_OK)
}

fn cmd_verify(scope: &VerifyScope, config: &RunConfig) -> Result<i32> {
    match scope {
        VerifyScope::Bo { k, sum_bound } => verify_bo(k, *sum_bound, config),
        VerifyScope::Logconc { k, n_max } => verify_logconc(k, *n_max, config),
        VerifyScope::Bounds { n_max } => verify_bounds(*n_max, config),
        VerifyScope::Campaign { n0, k_max } => verify_campaign(*n0, *k_max, config),
    }
}

fn verify_bo(k: &str, sum_bound: usize, config: &RunConfig) -> Result<i32> {
    match parse_k_spec(k)? {
        KSpec::Range(lo, hi) => {
            let rep = bo::stabilization_scan(lo, hi, sum_bound, &config.store)?;
            match config.format {
                OutputFormat::Json => println!("{}", report::to_json(&rep)),
                OutputFormat::Csv => {
                    println!("k,matches");
                    for e in &rep.per_k {
                        println!("{},{}", e.k, e.matches);
                    }
                }
                OutputFormat::Markdown => print!("{}", report::stabilization_markdown(&rep)),
            }
            Ok(if rep.all_match() { EXIT_OK } else { EXIT_VIOLATION })
        }
        KSpec::Single(k) => {
            let table = config.store.get(k, sum_bound)?;
            let rep = enumerate_exceptions(&table, sum_bound)?;
            print_exception_reports(std::slice::from_ref(&rep), config);
            let gold = golden::expected_exceptions(k);
            match diff_exceptions(&rep, gold) {
                None => {
                    eprintln!("ok: exception sets match the expected sets");
                    Ok(EXIT_OK)
                }
                Some(diff) => {
                    eprintln!("VIOLATION: {diff}");
                    Ok(EXIT_VIOLATION)
                }
            }
        }
    }
}

fn verify_logconc(k: &str, n_max: usize, config: &RunConfig) -> Result<i32> {
    match parse_k_spec(k)? {
        KSpec::Range(lo, hi) => {
            let rep = logconc::conjecture_scan(lo, hi, n_max, &config.store)?;
            match config.format {
                OutputFormat::Json => println!("{}", report::to_json(&rep)),
                OutputFormat::Csv => {
                    println!("k,matches_stable_set");
                    for e in &rep.entries {
                        println!("{},{}", e.k, e.matches_stable_set);
                    }
                }
                OutputFormat::Markdown => {
                    println!("| k | failures = odd 1..25 |");
                    println!("|---|---|");
                    for e in &rep.entries {
                        println!("| {} | {} |", e.k, if e.matches_stable_set { "yes" } else { "no" });
                    }
                }
            }
            if !rep.conjecture_holds() {
                eprintln!("VIOLATION: conjecture contradicted at k = {:?}", rep.contradictions);
                return Ok(EXIT_VIOLATION);
            }
            Ok(EXIT_OK)
        }
        KSpec::Single(k) => {
            let table = config.store.get(k, n_max + 1)?;
            let rep = logconc::enumerate_failures(&table, n_max)?;
            match config.format {
                OutputFormat::Json => println!("{}", report::to_json(&rep)),
                OutputFormat::Csv => {
                    println!("k,n_max,estimated_N_k,failures");
                    println!(
                        "{},{},{},{}",
                        rep.k,
                        rep.n_max,
                        rep.estimated_n_k,
                        rep.failures.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")
                    );
                }
                OutputFormat::Markdown => {
                    println!("k = {}, horizon {}", rep.k, rep.n_max);
                    println!("failures: {:?}", rep.failures);
                    println!("estimated N_k = {} (exact only up to the horizon)", rep.estimated_n_k);
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// The fixed bound-check suite: k-classes and horizons chosen to exercise
/// both small-k and stabilized behavior.
fn verify_bounds(n_max: usize, config: &RunConfig) -> Result<i32> {
    let g_bound_to = n_max.min(10_000);
    let p_bound_to = n_max.min(2000);
    let final_scan_to = n_max.max(1470);

    let mut reports = Vec::new();
    for k in [KIndex::Finite(2), KIndex::Finite(3), KIndex::Finite(5), KIndex::Infinity] {
        reports.push(bounds::check_g_bound(k, g_bound_to)?);
    }
    for k in [KIndex::Finite(2), KIndex::Finite(4), KIndex::Finite(10), KIndex::Infinity] {
        let table = config.store.get(k, p_bound_to)?;
        reports.push(bounds::check_p_lower_bound(&table, p_bound_to, LowerBoundVariant::StrictReal)?);
        reports.push(bounds::check_p_lower_bound(&table, p_bound_to, LowerBoundVariant::FlooredExponent)?);
    }
    let (sign, bits) = bounds::final_expression_sign(1470)?;
    reports.push(bounds::BoundsReport {
        check: "final_expression_sign",
        range: "a=1470".into(),
        result: if sign == crate::bo::DeltaSign::Positive {
            bounds::CheckOutcome::Pass
        } else {
            bounds::CheckOutcome::Fail
        },
        first_failure: None,
        max_precision_bits_used: bits,
    });
    reports.push(bounds::final_expression_scan(1470, final_scan_to)?);

    match config.format {
        OutputFormat::Json => println!("{}", report::to_json(&reports)),
        _ => {
            println!("| check | range | result | max bits |");
            println!("|---|---|---|---|");
            for r in &reports {
                println!(
                    "| {} | {} | {} | {} |",
                    r.check,
                    r.range,
                    if r.passed() { "pass" } else { "FAIL" },
                    r.max_precision_bits_used
                );
            }
        }
    }
    let ok = reports.iter().all(|r| r.passed());
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn verify_campaign(n0: Option<usize>, k_max: usize, config: &RunConfig) -> Result<i32> {
    if k_max < 2 {
        return Err(Error::Config(format!("--k-max must be >= 2 (got {k_max})")));
    }
    let mut all: Vec<CampaignReport> = Vec::new();
    for params in [VerificationParams::k2(), VerificationParams::k3(), VerificationParams::k_gt3()] {
        let opts = CampaignOptions {
            k_max,
            n0_override: n0,
            time_budget: None,
        };
        all.push(induction_campaign(&params, &opts, &config.store)?);
    }
    match config.format {
        OutputFormat::Json => println!("{}", report::to_json(&all)),
        _ => {
            println!("| class | k | pairs | exact checks | violations (main/below) | unexpected |");
            println!("|---|---|---|---|---|---|");
            for rep in &all {
                for kr in &rep.per_k {
                    println!(
                        "| {:?} | {} | {} | {} | {}/{} | {} |",
                        rep.k_class,
                        kr.k,
                        kr.pairs_scanned,
                        kr.exact_checks,
                        kr.main_region.violations.len(),
                        kr.below_threshold.violations.len(),
                        kr.main_region.unexpected.len() + kr.below_threshold.unexpected.len()
                    );
                }
            }
        }
    }
    let ok = all.iter().all(|r| r.passed());
    if ok {
        eprintln!("campaign ok: no unexpected nonpositive delta");
    } else {
        for rep in &all {
            for kr in &rep.per_k {
                for p in kr.main_region.unexpected.iter().chain(&kr.below_threshold.unexpected) {
                    eprintln!("VIOLATION: k={} unexpected nonpositive pair {p}", kr.k);
                }
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}
