//! `cmlp`: batch frontend. Every subcommand reads flags (and optionally a
//! JSON input), writes JSON or CSV to `--out` or stdout, and returns an
//! exit status: 0 ok, 1 usage/IO/format, 2 precondition, 3 precision
//! certificate or failed check.

pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cmlp_dirichlet::{char_table, DirichletChar};
use cmlp_hecke::{conductor_ppart, enumerate_chars, HeckeError};
use cmlp_lfun::{lp_value, LfunError, MockOracle, OracleContext};
use cmlp_nabla::{coleman_primitive, nabla_nu, nabla_nu_auto, nabla_steps, NablaError, WSection};
use cmlp_padic::{Padic, PadicError};
use cmlp_qexp::{deplete, eisenstein, QExpError, QExpansion};
use cmlp_quadform::{hgroup, ClassGroup, QuadError, QuadOrder};
use cmlp_valuation::{canonical_valuations, csv_header, csv_row, radius_params, LocalCase, ValuationError};
use cmlp_weights::{Weight, WeightError};
use thiserror::Error;

/// Relative `--out` paths are resolved against this directory when set.
pub const OUTPUT_DIR_VAR: &str = "CMLP_OUTPUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("format: {0}")]
    Format(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Format(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Precision(_) | CliError::ChecksFailed(_) => 3,
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::Format(m) => CliError::Format(m),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<QExpError> for CliError {
    fn from(e: QExpError) -> Self {
        match e {
            QExpError::Format(m) => CliError::Format(m),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<NablaError> for CliError {
    fn from(e: NablaError) -> Self {
        match e {
            NablaError::TailNotCertified { .. } => CliError::Precision(e.to_string()),
            NablaError::Shape(m) => CliError::Format(m),
            NablaError::QExp(q) => q.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<LfunError> for CliError {
    fn from(e: LfunError) -> Self {
        match e {
            LfunError::Format(m) => CliError::Format(m),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<ValuationError> for CliError {
    fn from(e: ValuationError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "cmlp", version, about = "p-adic L-value toolkit for CM points")]
struct Cli {
    /// output file; stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OrderArgs {
    /// fundamental discriminant of K
    #[arg(long = "D", allow_hyphen_values = true)]
    disc: i64,
    /// conductor of the order
    #[arg(long, default_value_t = 1)]
    c: u64,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// q-expansion JSON
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// reduced forms and composition table of Pic(O_c)
    Classgroup(OrderArgs),
    /// the group H(c, N)
    Hgroup {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long = "N")]
        level: u64,
    },
    /// Hecke characters of type (k + j, -j) with a chosen nebentype
    Chars {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long = "N")]
        level: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        j: i64,
        /// index into the character table mod N
        #[arg(long, default_value_t = 0)]
        eps_index: usize,
        /// also report conductor p-parts
        #[arg(long)]
        p: Option<u64>,
    },
    /// E_{k, eps} as a q-expansion
    Eisenstein {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        eps_modulus: u64,
        #[arg(long, default_value_t = 0)]
        eps_index: usize,
        #[arg(long)]
        p: u64,
        #[arg(long = "M", default_value_t = 20)]
        precision: u32,
        #[arg(long = "N-q", default_value_t = 100)]
        truncation: usize,
    },
    /// p-depletion of a q-expansion
    Deplete(SeriesArgs),
    /// nabla_k^nu applied to a depleted series
    Nabla {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, conflicts_with = "nu_deform", allow_hyphen_values = true)]
        nu_classical: Option<i64>,
        /// m:s for the weight m deformed by s (s divisible by p)
        #[arg(long)]
        nu_deform: Option<String>,
        /// grading cap; the smallest certified degree when absent
        #[arg(long = "J")]
        degree: Option<usize>,
    },
    /// iterate the one-step connection
    NablaStep {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Coleman primitive of a depleted series
    Coleman {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        r: usize,
    },
    /// CSV row of canonical valuations
    Valuations {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        case: LocalCase,
        #[arg(long)]
        n: u32,
        /// use the non-classical radius parameters
        #[arg(long)]
        analytic: bool,
    },
    /// assembled L-sum against the seeded mock oracle
    Lsum {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long = "N")]
        level: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        char_index: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        nu: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "M", default_value_t = 20)]
        precision: u32,
        /// skip the conductor gate n >= n_k(p)
        #[arg(long)]
        no_gate: bool,
        /// fail with status 3 below this absolute precision
        #[arg(long)]
        min_precision: Option<i64>,
    },
    /// run the invariant suite and print a pass/fail table
    Check {
        /// reduced sample sizes
        #[arg(long)]
        quick: bool,
    },
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("cmlp: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Classgroup(o) => {
            let g = ClassGroup::new(QuadOrder::new(o.disc, o.c)?)?;
            json(&g.to_file())
        }
        Command::Hgroup { order, level } => json(&hgroup(order.disc, order.c, level)?.to_file()),
        Command::Chars { order, level, k, j, eps_index, p } => {
            let hg = hgroup(order.disc, order.c, level)?;
            let eps = table_entry(level, eps_index)?;
            let chars = enumerate_chars(&hg, k, j, &eps)?;
            let mut rows = Vec::new();
            for chi in &chars {
                let ppart = p.map(|p| conductor_ppart(chi, p)).transpose()?;
                rows.push(serde_json::json!({ "character": chi, "conductor_p_part": ppart }));
            }
            json(&rows)
        }
        Command::Eisenstein { k, eps_modulus, eps_index, p, precision, truncation } => {
            let eps = table_entry(eps_modulus, eps_index)?;
            eisenstein(k, &eps, truncation, p, precision)?.to_json()
        }
        Command::Deplete(s) => deplete(&read_series(&s.input)?).to_json(),
        Command::Nabla { series, k, nu_classical, nu_deform, degree } => {
            let f = read_series(&series.input)?;
            let p = f.prime();
            let nu = match (nu_classical, nu_deform) {
                (Some(m), None) => Weight::classical(p, m),
                (None, Some(text)) => parse_deformation(p, f.precision(), &text)?,
                _ => return Err(CliError::Usage("give --nu-classical or --nu-deform".into())),
            };
            let kw = Weight::classical(p, k);
            let (section, _) = match degree {
                Some(d) => nabla_nu(&f, &kw, &nu, d)?,
                None => nabla_nu_auto(&f, &kw, &nu)?,
            };
            normalized(&section).to_json()
        }
        Command::NablaStep { series, k, times } => {
            let f = read_series(&series.input)?;
            let start = WSection::concentrated(Weight::classical(f.prime(), k), f, 0);
            normalized(&nabla_steps(&start, times)).to_json()
        }
        Command::Coleman { series, r } => {
            normalized(&coleman_primitive(&read_series(&series.input)?, r)?).to_json()
        }
        Command::Valuations { p, case, n, analytic } => {
            let profile = canonical_valuations(p, case, n)?;
            let radius = radius_params(!analytic, p)?;
            format!("{}\n{}", csv_header(), csv_row(&profile, &radius))
        }
        Command::Lsum { order, level, p, k, char_index, nu, seed, precision, no_gate, min_precision } => {
            let hg = hgroup(order.disc, order.c, level)?;
            let ctx = OracleContext::for_group(&hg, p, k, precision)?;
            let chars = enumerate_chars(&hg, k, 0, &DirichletChar::trivial(level))?;
            let chi = chars
                .get(char_index)
                .ok_or_else(|| CliError::Usage(format!("only {} characters", chars.len())))?;
            let gate = if no_gate {
                None
            } else {
                let r = radius_params(true, p)?;
                Some(match ctx.case {
                    LocalCase::Inert => r.n_inert,
                    LocalCase::Ramified => r.n_ramified,
                })
            };
            let oracle = MockOracle::new(ctx, hg.len(), seed);
            let value = lp_value(chi, &hg, &oracle, &Weight::classical(p, nu), gate)?;
            if let Some(min) = min_precision {
                if value.precision() < min {
                    return Err(CliError::Precision(format!(
                        "value known to O(p^{}), asked for {min}",
                        value.precision()
                    )));
                }
            }
            value.to_json()
        }
        Command::Check { quick } => {
            let scale = if quick { suite::Scale::Quick } else { suite::Scale::Full };
            let outcomes = suite::run_all(scale);
            let table: Vec<String> = outcomes.iter().map(suite::Outcome::line).collect();
            emit(cli.out.as_deref(), &table.join("\n"))?;
            let failed = outcomes.iter().filter(|o| !(o.passed && o.within_limit())).count();
            return if failed == 0 { Ok(()) } else { Err(CliError::ChecksFailed(failed)) };
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn table_entry(modulus: u64, index: usize) -> Result<DirichletChar, CliError> {
    let table = char_table(modulus);
    let n = table.len();
    table
        .into_iter()
        .nth(index)
        .ok_or_else(|| CliError::Usage(format!("character index {index} out of range (mod {modulus} has {n})")))
}

fn parse_deformation(p: u64, precision: u32, text: &str) -> Result<Weight, CliError> {
    let bad = || CliError::Usage(format!("expected m:s, got {text}"));
    let (m, s) = text.split_once(':').ok_or_else(bad)?;
    let m: i64 = m.trim().parse().map_err(|_| bad())?;
    let s: i64 = s.trim().parse().map_err(|_| bad())?;
    if s % p as i64 != 0 {
        return Err(CliError::Precondition(format!("deformation {s} not divisible by {p}")));
    }
    Ok(Weight::deformed(p, m, Padic::from_int(p, s, precision)))
}

fn read_series(path: &Path) -> Result<QExpansion, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(QExpansion::from_json(&text)?)
}

/// Cap every coefficient at O(p^M) and drop per-component metadata (the
/// section header carries the weight), so equal sections print equally
/// regardless of how they were reached.
fn normalized(section: &WSection) -> WSection {
    section.map(|_, f| {
        let m = f.precision() as i64;
        let coeffs = f.coeffs().iter().map(|a| a.with_absolute_precision(m)).collect();
        QExpansion::new(f.prime(), f.precision(), coeffs).expect("nonempty")
    })
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        return match writeln!(stdout, "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        };
    };
    let path = resolve(path);
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    writeln!(tmp, "{text}")?;
    tmp.persist(&path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deformation_parsing() {
        assert!(parse_deformation(5, 20, "2:25").is_ok());
        assert!(matches!(parse_deformation(5, 20, "2:3"), Err(CliError::Precondition(_))));
        assert!(matches!(parse_deformation(5, 20, "2"), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["cmlp", "--help"]), 0);
        assert_eq!(run(["cmlp", "frobnicate"]), 1);
        assert_eq!(CliError::Precision(String::new()).exit_code(), 3);
        assert_eq!(CliError::Precondition(String::new()).exit_code(), 2);
    }
}
