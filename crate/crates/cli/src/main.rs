//! `mu-cycles`: tables, checks, per-cycle statistics, the partition
//! construction and plots.

mod cache;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mu_cycles::charge::indices;
use mu_cycles::contraction::consecutive_runs;
use mu_cycles::nmplot::{construction_trace, ferrers_shape, nm_plot};
use mu_cycles::poly::series::{cnt_distribution, CntSlice, CNT_MAX_N};
use mu_cycles::poly::{distributions, PolynomialRecord};
use mu_cycles::verify::{all_checks_pass, default_jobs, Budget, Verifier, CHECK_NAMES};
use mu_cycles::{
    contract, is_incontractible, Cycle, Partition, Permutation, QPolynomial, Statistic,
};
use serde::Serialize;

/// Largest length scanned without `--allow-large`.
const DEFAULT_MAX_N: usize = 11;
/// Largest length scanned at all.
const LARGE_MAX_N: usize = 12;
/// Rough single-thread scan rate used for refusal estimates.
const CYCLES_PER_SEC: f64 = 2.0e6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Budget(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Core(mu_cycles::Error),
}

impl From<mu_cycles::Error> for CliError {
    fn from(e: mu_cycles::Error) -> Self {
        match e {
            mu_cycles::Error::InvalidInput(msg) => CliError::Invalid(msg),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Cache(_) | CliError::Io(_) | CliError::Core(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "mu-cycles",
    version,
    about = "Exact mu-pattern statistics on n-cycles"
)]
struct Cli {
    /// Cache file (default: $MU_CYCLES_CACHE or ./mu-cache.json)
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the distribution of a statistic over all n-cycles
    Table(TableArgs),
    /// Run named checks (or `all`)
    Verify(VerifyArgs),
    /// Inspect a single cycle
    Stat {
        /// Comma-separated cycle, any rotation
        cycle: String,
    },
    /// Build the n-cycle whose non-match plot is a given Ferrers diagram
    Construct {
        /// Comma-separated parts, e.g. "3,3,2,1"; empty for the empty partition
        #[arg(long, allow_hyphen_values = true)]
        partition: String,
        #[arg(long)]
        n: usize,
        /// Also print the intermediate cycles
        #[arg(long)]
        trace: bool,
    },
    /// Render a non-match grid or a charge path
    Plot(PlotArgs),
    /// Inspect or remove the cache file
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableStat {
    Nt,
    Nti,
    Nm,
    Cnt,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
struct TableArgs {
    statistic: TableStat,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "pretty")]
    format: TableFormat,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Recompute even if cached, and compare with any cached value
    #[arg(long)]
    no_cache: bool,
    /// Permit n = 12 (requires --jobs > 1)
    #[arg(long)]
    allow_large: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ReportFormat {
    Line,
    Json,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check name or `all`
    check: String,
    /// Cap every swept length
    #[arg(long)]
    max_n: Option<usize>,
    /// Largest odd length for the Catalan check
    #[arg(long)]
    max_odd: Option<usize>,
    /// Largest even length for the conjecture check
    #[arg(long)]
    max_even: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "line")]
    format: ReportFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PlotTarget {
    Nm,
    Charge,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PlotFormat {
    Ascii,
    Svg,
}

#[derive(Args, Debug)]
struct PlotArgs {
    target: PlotTarget,
    #[arg(long, conflicts_with = "perm")]
    cycle: Option<String>,
    /// One-line permutation (charge plots only)
    #[arg(long)]
    perm: Option<String>,
    #[arg(long, value_enum, default_value = "ascii")]
    format: PlotFormat,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Info,
    Clear,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("mu-cycles: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, CliError> {
    let cache_path = cache::resolve_path(cli.cache.as_deref());
    match cli.command {
        Command::Table(args) => table(&args, &cache_path, out),
        Command::Verify(args) => verify(&args, out),
        Command::Stat { cycle } => stat(&cycle, out),
        Command::Construct {
            partition,
            n,
            trace,
        } => construct(&partition, n, trace, out),
        Command::Plot(args) => plot(&args, out),
        Command::Cache { action } => cache_command(action, &cache_path, out),
    }
}

fn parse_values(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::Invalid(format!("not a positive integer: {s:?}")))
        })
        .collect()
}

fn parse_cycle(text: &str) -> Result<Cycle, CliError> {
    Ok(Cycle::new(parse_values(text)?)?)
}

fn joined(values: &[usize]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

// ---- table ----

fn statistic_of(s: TableStat) -> Option<Statistic> {
    match s {
        TableStat::Nt => Some(Statistic::Nt),
        TableStat::Nti => Some(Statistic::Nti),
        TableStat::Nm => Some(Statistic::Nm),
        TableStat::Cnt => None,
    }
}

fn check_budget(args: &TableArgs) -> Result<(), CliError> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::Invalid("--n must be at least 1".into()));
    }
    if args.statistic == TableStat::Cnt {
        if n > CNT_MAX_N {
            let perms = (1..=n as u64).try_fold(1u64, |a, k| a.checked_mul(k));
            let shown = perms.map_or("more than 2^64".to_string(), |p| p.to_string());
            return Err(CliError::Budget(format!(
                "refusing cnt for n = {n}: {shown} permutations; the limit is n = {CNT_MAX_N}"
            )));
        }
        return Ok(());
    }
    if n <= DEFAULT_MAX_N {
        return Ok(());
    }
    let cycles = (1..n as u64).try_fold(1u64, |a, k| a.checked_mul(k));
    let estimate = match cycles {
        Some(c) => format!(
            "{c} cycles, roughly {:.0} s single-threaded",
            c as f64 / CYCLES_PER_SEC
        ),
        None => "more than 2^64 cycles".to_string(),
    };
    if n > LARGE_MAX_N {
        return Err(CliError::Budget(format!(
            "refusing n = {n} ({estimate}); the largest supported length is {LARGE_MAX_N}"
        )));
    }
    if !args.allow_large || args.jobs < 2 {
        return Err(CliError::Budget(format!(
            "refusing n = {n} ({estimate}); pass --allow-large with --jobs > 1"
        )));
    }
    Ok(())
}

fn table(args: &TableArgs, cache_path: &Path, out: &mut impl Write) -> Result<u8, CliError> {
    check_budget(args)?;
    let Some(statistic) = statistic_of(args.statistic) else {
        let slice = cnt_distribution(args.n)?;
        out.write_all(render_cnt(&slice, args.format).as_bytes())?;
        return Ok(0);
    };
    let poly = cached_polynomial(
        statistic,
        args.n,
        args.jobs.max(1),
        args.no_cache,
        cache_path,
    )?;
    out.write_all(render_polynomial(statistic, args.n, &poly, args.format).as_bytes())?;
    Ok(0)
}

fn cached_polynomial(
    statistic: Statistic,
    n: usize,
    jobs: usize,
    no_cache: bool,
    path: &Path,
) -> Result<QPolynomial, CliError> {
    let mut file = cache::load(path)?;
    if !no_cache {
        if let Some(p) = file.get(statistic, n) {
            return Ok(p);
        }
    }
    let d = distributions(n, jobs)?;
    if no_cache {
        for s in Statistic::ALL {
            if let Some(cached) = file.get(s, n) {
                if cached != *d.get(s) {
                    return Err(CliError::Cache(format!(
                        "{} holds {s} n={n} = {cached}, recomputed {}",
                        path.display(),
                        d.get(s)
                    )));
                }
            }
        }
    } else {
        file.insert(&d);
        cache::store(path, &file)?;
    }
    Ok(d.get(statistic).clone())
}

fn render_polynomial(
    statistic: Statistic,
    n: usize,
    poly: &QPolynomial,
    format: TableFormat,
) -> String {
    match format {
        TableFormat::Pretty => format!("{poly}\n"),
        TableFormat::Json => {
            let record = PolynomialRecord::new(statistic, n, poly);
            serde_json::to_string(&record).expect("record serializes") + "\n"
        }
        TableFormat::Csv => {
            if poly.is_zero() {
                return "0,0\n".to_string();
            }
            poly.coeffs()
                .iter()
                .enumerate()
                .fold(String::new(), |mut s, (k, c)| {
                    let _ = writeln!(s, "{k},{c}");
                    s
                })
        }
    }
}

#[derive(Serialize)]
struct CntRecord<'a> {
    statistic: &'static str,
    n: usize,
    by_cycles: Vec<&'a [u64]>,
}

fn render_cnt(slice: &CntSlice, format: TableFormat) -> String {
    let rows = &slice.by_cycles()[1..];
    let mut s = String::new();
    match format {
        TableFormat::Pretty => {
            for (k, p) in rows.iter().enumerate() {
                let _ = writeln!(s, "cyc={}: {p}", k + 1);
            }
        }
        TableFormat::Csv => {
            for (k, p) in rows.iter().enumerate() {
                for (power, c) in p.coeffs().iter().enumerate() {
                    let _ = writeln!(s, "{},{power},{c}", k + 1);
                }
            }
        }
        TableFormat::Json => {
            let record = CntRecord {
                statistic: "cnt",
                n: slice.n,
                by_cycles: rows.iter().map(QPolynomial::coeffs).collect(),
            };
            s = serde_json::to_string(&record).expect("record serializes") + "\n";
        }
    }
    s
}

// ---- verify ----

fn verify(args: &VerifyArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let mut budget = Budget::default().with_jobs(args.jobs.unwrap_or_else(default_jobs));
    if let Some(max_n) = args.max_n {
        budget = budget.capped(max_n);
    }
    if let Some(odd) = args.max_odd {
        budget = budget.with_max_odd(odd);
    }
    if let Some(even) = args.max_even {
        budget = budget.with_max_even(even);
    }
    let names: Vec<&str> = if args.check == "all" {
        CHECK_NAMES.to_vec()
    } else {
        vec![args.check.as_str()]
    };
    let mut verifier = Verifier::new(budget.jobs);
    let mut reports = Vec::new();
    for name in names {
        let report = verifier.run(name, &budget)?;
        if args.format == ReportFormat::Line {
            writeln!(out, "{}", report.to_line())?;
            if let Some(note) = &report.note {
                writeln!(out, "  note: {note}")?;
            }
            out.flush()?;
        }
        reports.push(report);
    }
    if args.format == ReportFormat::Json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        writeln!(out, "{text}")?;
    }
    Ok(if all_checks_pass(&reports) { 0 } else { 1 })
}

// ---- stat ----

fn stat(text: &str, out: &mut impl Write) -> Result<u8, CliError> {
    let c = parse_cycle(text)?;
    let n = c.len();
    let mut s = String::new();
    let _ = writeln!(s, "cycle={c}");
    let _ = writeln!(s, "n={n}");
    let _ = writeln!(s, "N_mu={}", c.mu_count());
    let _ = writeln!(s, "NT={}", c.nontrivial_mu_count());
    let _ = writeln!(s, "NM={}", c.nm_count());
    let incontractible = is_incontractible(&c);
    let _ = writeln!(s, "incontractible={incontractible}");
    let _ = writeln!(s, "runs={}", consecutive_runs(&c));
    let _ = writeln!(s, "contraction={}", contract(&c));
    if incontractible && n % 2 == 1 {
        let path = indices(&c.as_word());
        let _ = writeln!(s, "charge_path={}", joined(path.levels()));
        let _ = writeln!(s, "dyck={}", path.is_dyck_path());
    }
    match ferrers_shape(&nm_plot(&c)) {
        Some(p) => {
            let _ = writeln!(s, "partition={p}");
        }
        None => {
            let _ = writeln!(s, "partition=none");
        }
    }
    out.write_all(s.as_bytes())?;
    Ok(0)
}

// ---- construct ----

fn construct(partition: &str, n: usize, trace: bool, out: &mut impl Write) -> Result<u8, CliError> {
    let lambda = Partition::new(parse_values(partition)?)?;
    let steps = construction_trace(&lambda, n)?;
    if trace {
        for c in &steps {
            writeln!(out, "C_{}={}", c.len(), joined(c.elems()))?;
        }
    }
    let last = steps.last().expect("trace is non-empty");
    writeln!(out, "{}", joined(last.elems()))?;
    Ok(0)
}

// ---- plot ----

fn plot(args: &PlotArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let rendered = match args.target {
        PlotTarget::Nm => {
            let Some(text) = &args.cycle else {
                return Err(CliError::Invalid("plot nm needs --cycle".into()));
            };
            let g = nm_plot(&parse_cycle(text)?);
            match args.format {
                PlotFormat::Ascii => g.render_ascii(),
                PlotFormat::Svg => g.render_svg(),
            }
        }
        PlotTarget::Charge => {
            let word = match (&args.cycle, &args.perm) {
                (Some(c), None) => parse_cycle(c)?.as_word(),
                (None, Some(p)) => Permutation::new(parse_values(p)?)?,
                _ => {
                    return Err(CliError::Invalid(
                        "plot charge needs --cycle or --perm".into(),
                    ))
                }
            };
            let path = indices(&word);
            match args.format {
                PlotFormat::Ascii => path.render_ascii(),
                PlotFormat::Svg => path.render_svg(),
            }
        }
    };
    match &args.out {
        Some(path) => fs::write(path, rendered)?,
        None => out.write_all(rendered.as_bytes())?,
    }
    Ok(0)
}

// ---- cache ----

fn cache_command(action: CacheAction, path: &Path, out: &mut impl Write) -> Result<u8, CliError> {
    match action {
        CacheAction::Info => {
            let exists = path.exists();
            let file = cache::load(path)?;
            writeln!(out, "path={}", path.display())?;
            writeln!(out, "exists={exists}")?;
            writeln!(out, "version={}", file.version)?;
            writeln!(out, "order={}", file.order)?;
            writeln!(out, "entries={}", file.entries.len())?;
            for key in file.entries.keys() {
                writeln!(out, "  {key}")?;
            }
        }
        CacheAction::Clear => {
            let removed = cache::clear(path)?;
            let verb = if removed { "removed" } else { "no cache at" };
            writeln!(out, "{verb} {}", path.display())?;
        }
    }
    Ok(0)
}
