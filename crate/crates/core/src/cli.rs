//! The `frobsum` command line.
//!
//! Exit codes: 0 success, 1 failed check or computation error, 2 usage error.
//! `FROBSUM_THREADS` caps the worker pool.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::char_calculus::{nabla_mults, tilting_char, tilting_digits, tilting_dim};
use crate::decomposition::{
    decompose_grassmannian, decompose_invariants, duality_violations, summand_inventory,
    tabulated_sheaf_count, Level, SummandList,
};
use crate::error::Error;
use crate::fusion::{a_polynomials, fusion_product};
use crate::hilbert::{verify_identities, Oracle, VerifyOptions};
use crate::ncr::ncr_analysis;
use crate::output::{csv_row, pretty, render_summands, render_tables, text_row, Format, Table};
use crate::params::{check_prime, pow, Params};
use crate::{bruteforce, par};

#[derive(Debug, Parser)]
#[command(name = "frobsum", version, about = "Frobenius summands of Gr(2, n) and its coordinate ring")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Suppress log messages
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Invariants,
    Ring,
    Sheaf,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Invariants => Level::Invariants,
            LevelArg::Ring => Level::Ring,
            LevelArg::Sheaf => Level::Sheaf,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    Character,
    Bruteforce,
    Both,
}

impl From<OracleArg> for Oracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Character => Oracle::Character,
            OracleArg::Bruteforce => Oracle::Bruteforce,
            OracleArg::Both => Oracle::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tilting characters, digit expansions and good-filtration multiplicities
    Char {
        /// Characteristic (a prime)
        #[arg(long)]
        p: u32,
        /// Highest weight or range, e.g. `7` or `0..20`
        #[arg(long, default_value = "0..20")]
        u: String,
    },
    /// Fusion products at level p-2 and the a-polynomials
    Fusion {
        /// Characteristic (a prime)
        #[arg(long)]
        p: u32,
        /// Also print a_0 and a_{p-2} for this n
        #[arg(long)]
        n: Option<u32>,
    },
    /// Summands at one level
    Decompose {
        #[command(flatten)]
        np: NP,
        #[arg(long, value_enum, default_value_t = LevelArg::Sheaf)]
        level: LevelArg,
    },
    /// Certify a decomposition by Hilbert series and the brute-force oracle
    Verify {
        #[command(flatten)]
        np: NP,
        /// Truncation degree (default max(4p(n-1), 40))
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = OracleArg::Both)]
        oracle: OracleArg,
        /// Memory budget in bytes per brute-force instance
        #[arg(long, default_value_t = bruteforce::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Hom-Hilbert matrix of the candidate NCR and polynomiality of its inverse
    Ncr {
        /// Dimension of F, at least 4
        #[arg(long)]
        n: u32,
        /// Truncation degree of the Hom series
        #[arg(long, default_value_t = 80)]
        trunc: usize,
        /// Length of the zero tail required (default trunc/4)
        #[arg(long)]
        guard: Option<usize>,
        /// Include both matrices in JSON output
        #[arg(long)]
        matrices: bool,
    },
    /// Summand counts over a grid of (n, p)
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct NP {
    /// Dimension of F, so the Grassmannian is Gr(2, n)
    #[arg(long)]
    n: u32,
    /// Characteristic (a prime)
    #[arg(long)]
    p: u32,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Values of n: `4..8` (inclusive), `4,6,8` or `5`
    #[arg(long, default_value = "4..8")]
    n: String,
    /// Values of p, same syntax
    #[arg(long, default_value = "2,3")]
    p: String,
    #[arg(long, value_enum, default_value_t = LevelArg::Sheaf)]
    level: LevelArg,
}

/// Parses `a..b`, `a..=b` (both inclusive), `a,b,c` or a single number.
pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let bad = || format!("cannot parse {s:?} as a list or range");
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

enum Failure {
    Usage(String),
    Check(String),
    Compute(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

macro_rules! compute {
    ($e:expr) => {
        $e.map_err(|e| Failure::Compute(Error::from(e)))?
    };
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let level = if cli.quiet { log::LevelFilter::Off } else { log::LevelFilter::Info };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_env("FROBSUM_LOG")
        .format_timestamp(None)
        .try_init();
    if let Ok(t) = std::env::var("FROBSUM_THREADS") {
        match t.parse::<usize>() {
            Ok(t) => par::init_threads(Some(t)),
            Err(_) => {
                eprintln!("error: FROBSUM_THREADS must be a positive integer, got {t:?}");
                return 2;
            }
        }
    }

    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return 1;
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let start = Instant::now();
    let result = dispatch(&cli, &mut sink).and_then(|()| sink.flush().map_err(Failure::Io));
    log::info!("finished in {:.2?}", start.elapsed());
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `frobsum --help` for usage.");
            2
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            1
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error [{}]: {e}", e.kind());
            1
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn params(n: u32, p: u32) -> Result<Params, Failure> {
    Ok(compute!(Params::new(n, p)))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let format: Format = cli.format.into();
    match &cli.command {
        Command::Char { p, u } => {
            compute!(check_prime(*p));
            let us = parse_list(u).map_err(Failure::Usage)?;
            write!(out, "{}", char_output(*p, &us, format))?;
        }
        Command::Fusion { p, n } => {
            compute!(check_prime(*p));
            write!(out, "{}", fusion_output(*p, *n, format)?)?;
        }
        Command::Decompose { np, level } => {
            let params = params(np.n, np.p)?;
            let list = decompose(&params, (*level).into())?;
            log::info!(
                "{} distinct summands, rank sum {}",
                list.distinct_count(),
                list.rank_sum()
            );
            write!(out, "{}", render_summands(&list, format))?;
        }
        Command::Verify {
            np,
            degree,
            oracle,
            budget,
        } => {
            let params = match degree {
                Some(d) => compute!(Params::with_truncation(np.n, np.p, *d)),
                None => params(np.n, np.p)?,
            };
            let options = VerifyOptions {
                oracle: (*oracle).into(),
                budget: *budget,
            };
            let report = compute!(verify_identities(&params, options));
            match format {
                Format::Json => write!(out, "{}", pretty(&report))?,
                _ => {
                    let mut t = Table::new(
                        format!("n = {}, p = {}, D = {}", report.n, report.p, report.trunc),
                        &["check", "status", "first_failing_degree", "detail"],
                    );
                    for c in &report.checks {
                        t.push(vec![
                            c.name.clone(),
                            if c.ok { "OK" } else { "FAIL" }.into(),
                            c.first_failing_degree.map(|d| d.to_string()).unwrap_or_default(),
                            c.detail.clone(),
                        ]);
                    }
                    write!(out, "{}", render_tables(&[t], format))?;
                }
            }
            if !report.all_ok() {
                let failed: Vec<_> = report
                    .checks
                    .iter()
                    .filter(|c| !c.ok)
                    .map(|c| c.name.as_str())
                    .collect();
                return Err(Failure::Check(failed.join(", ")));
            }
        }
        Command::Ncr {
            n,
            trunc,
            guard,
            matrices,
        } => {
            let guard = guard.unwrap_or(trunc / 4);
            if guard >= *trunc {
                return Err(Failure::Usage(format!(
                    "--guard {guard} must be smaller than --trunc {trunc}"
                )));
            }
            let (h, g, report) = compute!(ncr_analysis(*n, *trunc, guard));
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serialisable");
                    if *matrices {
                        v["hom_matrix"] = json!(h
                            .entries
                            .iter()
                            .map(|row| row
                                .iter()
                                .map(|s| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
                                .collect::<Vec<_>>())
                            .collect::<Vec<_>>());
                        let m = g.size();
                        v["inverse"] = json!((0..m)
                            .map(|u| (0..m)
                                .map(|w| g.entry_coeffs(u, w).iter().map(|c| c.to_string()).collect::<Vec<_>>())
                                .collect::<Vec<_>>())
                            .collect::<Vec<_>>());
                    }
                    write!(out, "{}", pretty(&v))?;
                }
                _ => {
                    let mut summary = Table::new(format!("n = {n}, D = {trunc}, guard = {guard}"), &["check", "value"]);
                    let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
                    summary.push(vec!["polynomial inverse".into(), yes(report.polynomiality.polynomial)]);
                    summary.push(vec![
                        "max degree of inverse".into(),
                        report.polynomiality.max_degree.map(|d| d.to_string()).unwrap_or("-".into()),
                    ]);
                    summary.push(vec!["H * H^-1 = 1".into(), yes(report.product_is_identity)]);
                    summary.push(vec!["integral inverse".into(), yes(report.integral)]);
                    summary.push(vec!["diagonal constant terms 1".into(), yes(report.diagonal_constant_terms_one)]);
                    summary.push(vec!["(K{1},K{1}) constant term".into(), report.k1_k1_constant.clone()]);
                    let headers: Vec<&str> = std::iter::once("degree")
                        .chain(report.labels.iter().map(String::as_str))
                        .collect();
                    let mut degrees = Table::new("max degree per entry of the inverse", &headers);
                    for (label, row) in report.labels.iter().zip(&report.polynomiality.entry_max_degrees) {
                        degrees.push(
                            std::iter::once(label.clone())
                                .chain(row.iter().map(|d| d.map(|d| d.to_string()).unwrap_or("-".into())))
                                .collect(),
                        );
                    }
                    write!(out, "{}", render_tables(&[summary, degrees], format))?;
                }
            }
            if !report.ok() {
                return Err(Failure::Check("the inverse Hom-Hilbert matrix is not an integral polynomial matrix".into()));
            }
        }
        Command::Sweep(args) => sweep(args, format, out)?,
    }
    Ok(())
}

fn decompose(params: &Params, level: Level) -> Result<SummandList, Failure> {
    Ok(match level {
        Level::Invariants => compute!(decompose_invariants(params)),
        Level::Ring => compute!(decompose_invariants(params)).relabel(Level::Ring),
        Level::Sheaf => compute!(decompose_grassmannian(params)),
    })
}

fn char_output(p: u32, us: &[u64], format: Format) -> String {
    let mut t = Table::new(format!("tilting modules, p = {p}"), &["u", "digits", "dim", "nabla", "character"]);
    for &u in us {
        let digits = tilting_digits(p, u);
        let nabla = nabla_mults(p, u)
            .iter()
            .map(|(v, c)| if *c == 1 { format!("∇({v})") } else { format!("{c}∇({v})") })
            .collect::<Vec<_>>()
            .join(" + ");
        let ch = tilting_char(p, u)
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect::<Vec<_>>()
            .join(" ");
        t.push(vec![
            u.to_string(),
            digits.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            tilting_dim(p, u).to_string(),
            nabla,
            ch,
        ]);
    }
    render_tables(&[t], format)
}

fn fusion_output(p: u32, n: Option<u32>, format: Format) -> Result<String, Failure> {
    let mut table = Table::new(format!("fusion products, p = {p}"), &["a", "b", "product"]);
    for a in 0..=p - 2 {
        for b in 0..=a {
            let prod = compute!(fusion_product(p, a, b));
            let s = prod
                .iter()
                .map(|((q, _), _)| format!("L({q})"))
                .collect::<Vec<_>>()
                .join(" + ");
            table.push(vec![a.to_string(), b.to_string(), if s.is_empty() { "0".into() } else { s }]);
        }
    }
    let mut tables = vec![table];
    if let Some(n) = n {
        let a = a_polynomials(p, n);
        let mut t = Table::new(format!("a-polynomials, p = {p}, n = {n}"), &["degree", "a_0", "a_p-2"]);
        for d in 0..=a.a0.trunc() {
            t.push(vec![d.to_string(), a.a0.coeff(d).to_string(), a.a_p2.coeff(d).to_string()]);
        }
        tables.push(t);
    }
    Ok(render_tables(&tables, format))
}

struct SweepRow {
    cells: Vec<String>,
    problem: Option<String>,
}

const SWEEP_HEADERS: [&str; 9] = [
    "n", "p", "level", "distinct", "rank_sum", "expected_rank", "closed_count", "matches_closed", "seconds",
];

fn sweep_cell(n: u32, p: u32, level: Level) -> Result<SweepRow, Error> {
    let start = Instant::now();
    let params = Params::new(n, p)?;
    let list = match level {
        Level::Sheaf => decompose_grassmannian(&params)?,
        Level::Invariants => decompose_invariants(&params)?,
        Level::Ring => decompose_invariants(&params)?.relabel(Level::Ring),
    };
    let expected = match level {
        Level::Sheaf => pow(p, 2 * (n - 2)),
        _ => pow(p, 2 * n - 3),
    };
    let mut problems = Vec::new();
    if list.rank_sum() != expected {
        problems.push(format!("rank sum {} != {expected}", list.rank_sum()));
    }
    if let Err(e) = summand_inventory(&list) {
        problems.push(e.to_string());
    }
    if level != Level::Sheaf {
        problems.extend(duality_violations(&list));
    }
    let closed = if level == Level::Sheaf { tabulated_sheaf_count(n, p) } else { None };
    let matches = closed.map(|c| c == list.distinct_count() as u64);
    Ok(SweepRow {
        cells: vec![
            n.to_string(),
            p.to_string(),
            level.as_str().into(),
            list.distinct_count().to_string(),
            list.rank_sum().to_string(),
            expected.to_string(),
            closed.map(|c| c.to_string()).unwrap_or("-".into()),
            matches.map(|m| if m { "yes" } else { "no" }.to_string()).unwrap_or("-".into()),
            format!("{:.3}", start.elapsed().as_secs_f64()),
        ],
        problem: (!problems.is_empty()).then(|| format!("(n, p) = ({n}, {p}): {}", problems.join("; "))),
    })
}

/// Streams one row per cell in grid order. Disagreement with the closed-form counts is
/// reported in the table but is not a failure; rank sums, ranges and duality are.
fn sweep(args: &SweepArgs, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let ns = parse_list(&args.n).map_err(Failure::Usage)?;
    let ps = parse_list(&args.p).map_err(Failure::Usage)?;
    let level: Level = args.level.into();
    let mut cells = Vec::new();
    for &n in &ns {
        for &p in &ps {
            compute!(Params::new(n as u32, p as u32));
            cells.push((n as u32, p as u32));
        }
    }
    let headers: Vec<String> = SWEEP_HEADERS.iter().map(|h| h.to_string()).collect();
    let widths = [3, 3, 10, 8, 24, 24, 12, 14, 8];
    match format {
        Format::Text => write!(out, "{}", text_row(&headers, &widths))?,
        Format::Csv => write!(out, "{}", csv_row(&headers))?,
        Format::Json => {}
    }
    out.flush()?;
    let mut first_error: Option<Failure> = None;
    let mut problems = Vec::new();
    par::for_each_ordered(
        &cells,
        |&(n, p)| sweep_cell(n, p, level),
        |row| {
            if first_error.is_some() {
                return;
            }
            let row = match row {
                Ok(r) => r,
                Err(e) => {
                    first_error = Some(Failure::Compute(e));
                    return;
                }
            };
            let line = match format {
                Format::Text => text_row(&row.cells, &widths),
                Format::Csv => csv_row(&row.cells),
                Format::Json => {
                    let obj: serde_json::Map<String, Value> = headers
                        .iter()
                        .cloned()
                        .zip(row.cells.iter().map(|c| Value::String(c.clone())))
                        .collect();
                    format!("{}\n", Value::Object(obj))
                }
            };
            if let Err(e) = out.write_all(line.as_bytes()).and_then(|()| out.flush()) {
                first_error = Some(Failure::Io(e));
            }
            problems.extend(row.problem);
        },
    );
    if let Some(e) = first_error {
        return Err(e);
    }
    if !problems.is_empty() {
        return Err(Failure::Check(problems.join("\n")));
    }
    Ok(())
}
