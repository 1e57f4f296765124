//! `crank` — command-line front end for the crank-parity tables and
//! certifiers.
//!
//! Exit codes: 0 proved, 1 violations found (listed on stdout),
//! 2 usage/io/hypothesis errors, 3 indeterminate.

use clap::{Parser, Subcommand, ValueEnum};
use crank_core::certify::{
    certify_higher_turan_analytic, certify_log_concavity_analytic, check_convexity, check_d_excess,
    check_envelope_containment, check_equidistribution, check_higher_turan, check_log_concavity,
    check_sign_alternation, Certificate, Status,
};
use crank_core::report::{build_report, render_csv, render_json, render_text, ReportOptions};
use crank_core::{CrankParityTable, Error, MIN_PRECISION};
use sha2::{Digest, Sha256};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "crank",
    version,
    about = "Exact crank-parity partition tables and certified inequality checks"
)]
struct Cli {
    /// Directory for cached tables (overrides CRANK_CACHE_DIR; default .crank-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the exact table up to --max-n and write the cache file
    Table {
        #[arg(long)]
        max_n: u64,
        /// Write the table here instead of the cache directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact finite-range checks over the table
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        #[arg(long, value_enum, default_value = "both")]
        k: KSelect,
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
        /// Excess parameter for the dexcess check
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analytic certificates in the asymptotic regime
    Certify {
        #[arg(value_enum)]
        target: CertifyTarget,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 256)]
        precision: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Consolidated per-n data, error-bound ratios and verdicts
    Report {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyCheck {
    Sign,
    Dexcess,
    Convexity,
    Logconcave,
    Turan,
    Equidist,
    Envelope,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertifyTarget {
    Logconcave,
    Turan,
    Envelope,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KSelect {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Text,
}

const EXIT_PROVED: u8 = 0;
const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INDETERMINATE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                CliError::Core(Error::HypothesisUndecided { .. })
                | CliError::Core(Error::IndeterminateCeiling { .. }) => EXIT_INDETERMINATE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cache_dir = resolve_cache_dir(cli.cache_dir.as_deref());
    match cli.command {
        Command::Table { max_n, out } => cmd_table(&cache_dir, max_n, out.as_deref()),
        Command::Verify {
            check,
            k,
            from,
            to,
            d,
            precision,
            format,
            out,
        } => cmd_verify(
            &cache_dir,
            check,
            k,
            from,
            to,
            d,
            precision,
            format,
            out.as_deref(),
        ),
        Command::Certify {
            target,
            from,
            to,
            precision,
            format,
            out,
        } => cmd_certify(
            &cache_dir,
            target,
            from,
            to,
            precision,
            format,
            out.as_deref(),
        ),
        Command::Report {
            from,
            to,
            precision,
            format,
            out,
        } => cmd_report(&cache_dir, from, to, precision, format, out.as_deref()),
    }
}

fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(env) = std::env::var_os("CRANK_CACHE_DIR") {
        return PathBuf::from(env);
    }
    PathBuf::from(".crank-cache")
}

fn cache_path(cache_dir: &Path, max_n: u64) -> PathBuf {
    cache_dir.join(format!("table-{max_n}.txt"))
}

/// Loads the smallest cached table covering `need`, or builds and caches
/// one. Writes go through a temp file and an atomic rename, so concurrent
/// builders cannot corrupt a cache file.
fn load_or_build(cache_dir: &Path, need: u64) -> Result<CrankParityTable, Error> {
    let mut candidates: Vec<u64> = Vec::new();
    if let Ok(entries) = fs::read_dir(cache_dir) {
        for entry in entries.flatten() {
            let name = entry.file_name();
            let name = name.to_string_lossy();
            if let Some(num) = name
                .strip_prefix("table-")
                .and_then(|s| s.strip_suffix(".txt"))
            {
                if let Ok(n) = num.parse::<u64>() {
                    if n >= need {
                        candidates.push(n);
                    }
                }
            }
        }
    }
    candidates.sort_unstable();
    for n in candidates {
        match fs::File::open(cache_path(cache_dir, n))
            .map_err(Error::from)
            .and_then(CrankParityTable::read_from)
        {
            Ok(t) => return Ok(t),
            Err(e) => eprintln!("warning: ignoring unreadable cache table-{n}.txt: {e}"),
        }
    }
    let table = CrankParityTable::build(need)?;
    write_table_atomic(&table, &cache_path(cache_dir, need))?;
    Ok(table)
}

fn write_table_atomic(table: &CrankParityTable, path: &Path) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        table.write_to(&mut f)?;
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn delta_checksum(table: &CrankParityTable) -> String {
    let mut hasher = Sha256::new();
    for n in 0..=table.max_n() {
        hasher.update(table.delta(n).to_string().as_bytes());
        hasher.update(b"\n");
    }
    format!("{:x}", hasher.finalize())
}

fn cmd_table(cache_dir: &Path, max_n: u64, out: Option<&Path>) -> Result<u8, CliError> {
    let table = CrankParityTable::build(max_n)?;
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| cache_path(cache_dir, max_n));
    write_table_atomic(&table, &path)?;
    println!("table built: max_n={max_n}");
    println!("delta sha256: {}", delta_checksum(&table));
    println!("written: {}", path.display());
    Ok(EXIT_PROVED)
}

struct RangeSpec {
    from: u64,
    to: u64,
}

fn clamp_range(
    requested_from: u64,
    requested_to: u64,
    min_from: u64,
    max_to: u64,
) -> Result<RangeSpec, CliError> {
    let from = requested_from.max(min_from);
    let to = requested_to.min(max_to);
    if from != requested_from || to != requested_to {
        eprintln!("warning: range clamped to {from}..{to}");
    }
    if from > to {
        return Err(CliError::Usage(format!(
            "range {requested_from}..{requested_to} is empty after clamping to {min_from}..{max_to}"
        )));
    }
    Ok(RangeSpec { from, to })
}

fn ks(k: KSelect) -> Vec<u8> {
    match k {
        KSelect::Zero => vec![0],
        KSelect::One => vec![1],
        KSelect::Both => vec![0, 1],
    }
}

fn require_precision(precision: u32) -> Result<(), CliError> {
    if precision < MIN_PRECISION {
        return Err(CliError::Usage(format!(
            "--precision must be at least {MIN_PRECISION} bits"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    cache_dir: &Path,
    check: VerifyCheck,
    k: KSelect,
    from: Option<u64>,
    to: Option<u64>,
    d: Option<u64>,
    precision: u32,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    require_precision(precision)?;
    if check == VerifyCheck::Dexcess {
        let d = d.ok_or_else(usage_missing("--d"))?;
        if d < 1 {
            return Err(CliError::Usage("--d must be at least 1".into()));
        }
        let table = load_or_build(cache_dir, to.unwrap_or(5000))?;
        let result = check_d_excess(&table, d)?;
        println!("d-excess threshold: n0({}) = {}", result.d, result.n0);
        return finish(vec![result.certificate], format, out);
    }
    let from = from.ok_or_else(usage_missing("--from"))?;
    let to = to.ok_or_else(usage_missing("--to"))?;
    let (table_need, min_from, tail) = match check {
        VerifyCheck::Sign => (to, 0, 0),
        VerifyCheck::Convexity | VerifyCheck::Logconcave => (to + 1, 1, 1),
        VerifyCheck::Turan => (to + 2, 1, 2),
        VerifyCheck::Equidist => (to, 4, 0),
        VerifyCheck::Envelope => (to, 1, 0),
        VerifyCheck::Dexcess => unreachable!(),
    };
    let table = load_or_build(cache_dir, table_need)?;
    let range = clamp_range(from, to, min_from, table.max_n().saturating_sub(tail))?;
    let mut certs = Vec::new();
    match check {
        VerifyCheck::Sign => certs.push(check_sign_alternation(&table, range.from, range.to)?),
        VerifyCheck::Convexity => {
            for kk in ks(k) {
                certs.push(check_convexity(&table, kk, range.from, range.to)?);
            }
        }
        VerifyCheck::Logconcave => {
            for kk in ks(k) {
                certs.push(check_log_concavity(&table, kk, range.from, range.to)?);
            }
        }
        VerifyCheck::Turan => {
            for kk in ks(k) {
                certs.push(check_higher_turan(&table, kk, range.from, range.to)?);
            }
        }
        VerifyCheck::Equidist => certs.push(check_equidistribution(
            &table, range.from, range.to, precision,
        )?),
        VerifyCheck::Envelope => certs.push(check_envelope_containment(
            &table, range.from, range.to, precision,
        )?),
        VerifyCheck::Dexcess => unreachable!(),
    }
    finish(certs, format, out)
}

fn cmd_certify(
    cache_dir: &Path,
    target: CertifyTarget,
    from: u64,
    to: u64,
    precision: u32,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    require_precision(precision)?;
    let certs = match target {
        CertifyTarget::Logconcave => vec![certify_log_concavity_analytic(from, to, precision)?],
        CertifyTarget::Turan => vec![certify_higher_turan_analytic(from, to, precision)?],
        CertifyTarget::Envelope => {
            let table = load_or_build(cache_dir, to)?;
            let range = clamp_range(from, to, 1, table.max_n())?;
            vec![check_envelope_containment(
                &table, range.from, range.to, precision,
            )?]
        }
    };
    finish(certs, format, out)
}

fn cmd_report(
    cache_dir: &Path,
    from: u64,
    to: u64,
    precision: u32,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    require_precision(precision)?;
    // Neighbor columns (convexity, Turán) need two indices past the end.
    let table = load_or_build(cache_dir, to + 2)?;
    let report = build_report(
        &table,
        ReportOptions {
            from,
            to,
            precision_bits: precision,
        },
    )?;
    let rendered = match format {
        OutputFormat::Csv => render_csv(&report),
        OutputFormat::Json => render_json(&report),
        OutputFormat::Text => render_text(&report),
    };
    emit(&rendered, out)?;
    if out.is_some() {
        println!("report written: rows={}", report.rows.len());
    }
    Ok(EXIT_PROVED)
}

fn usage_missing(what: &'static str) -> impl Fn() -> CliError {
    move || CliError::Usage(format!("missing required argument {what}"))
}

fn emit(rendered: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir).map_err(Error::from)?;
                }
            }
            fs::write(path, rendered).map_err(Error::from)?;
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn render_certificate_text(cert: &Certificate) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "theorem: {:?}{}\n",
        cert.theorem,
        cert.k.map(|k| format!(" k={k}")).unwrap_or_default()
    ));
    s.push_str(&format!("range: {}..{}\n", cert.n_from, cert.n_to));
    s.push_str(&format!(
        "method: {:?}  status: {:?}\n",
        cert.method, cert.status
    ));
    if let Some(p) = cert.precision_bits {
        s.push_str(&format!("precision: {p} bits\n"));
    }
    if let Some(h) = &cert.hypothesis {
        s.push_str(&format!("hypothesis: {h}\n"));
    }
    if !cert.violations.is_empty() {
        let shown: Vec<String> = cert
            .violations
            .iter()
            .take(64)
            .map(u64::to_string)
            .collect();
        let suffix = if cert.violations.len() > 64 {
            " ..."
        } else {
            ""
        };
        s.push_str(&format!(
            "violations ({}): {}{}\n",
            cert.violations.len(),
            shown.join(" "),
            suffix
        ));
    }
    for note in &cert.notes {
        s.push_str(&format!("note: {note}\n"));
    }
    s
}

fn render_certificate_csv(certs: &[Certificate]) -> String {
    let mut s = String::from("theorem,k,n_from,n_to,method,status,violation_count,violations\n");
    for c in certs {
        let shown: Vec<String> = c.violations.iter().take(32).map(u64::to_string).collect();
        s.push_str(&format!(
            "{:?},{},{},{},{:?},{:?},{},{}\n",
            c.theorem,
            c.k.map(|k| k.to_string()).unwrap_or_else(|| "both".into()),
            c.n_from,
            c.n_to,
            c.method,
            c.status,
            c.violations.len(),
            shown.join(";"),
        ));
    }
    s
}

fn finish(
    certs: Vec<Certificate>,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    let rendered = match format {
        OutputFormat::Text => certs
            .iter()
            .map(render_certificate_text)
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Json => {
            format!(
                "{}\n",
                serde_json::to_string_pretty(&certs).expect("serializes")
            )
        }
        OutputFormat::Csv => render_certificate_csv(&certs),
    };
    emit(&rendered, out)?;
    let code = certs
        .iter()
        .map(|c| match c.status {
            Status::Proved => EXIT_PROVED,
            Status::ViolationsFound => EXIT_VIOLATIONS,
            Status::Indeterminate => EXIT_INDETERMINATE,
        })
        .max()
        .unwrap_or(EXIT_PROVED);
    Ok(code)
}
