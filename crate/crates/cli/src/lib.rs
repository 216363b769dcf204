//! Command-line driver for `sextic-core`: enumeration caches, census reports, predictions,
//! verification and table reproduction.

pub mod cache;
pub mod commands;
pub mod driver;
pub mod error;
pub mod parse;
pub mod reference;
pub mod repro;
pub mod report;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sextic_core::{CensusFilter, EnumerationRange, Model, Predictor, Sign};

use crate::commands::Source;
use crate::error::{CliError, Result};
use crate::report::Format;

/// Relative tolerance of the Euler products behind every prediction.
pub const PRODUCT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "sextic", version, about = "Cubic field enumeration and S3-sextic discriminant counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate cubic fields into a CSV cache with a JSON sidecar.
    Enumerate(EnumerateArgs),
    /// Count sextic fields at checkpoints and compare with predictions.
    Census(CensusArgs),
    /// Print predicted counts.
    Predict(PredictArgs),
    /// Run the oracle comparisons and numeric identities.
    Verify(OutputArgs),
    /// Regenerate a reference table and compare entry by entry.
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Pos,
    Neg,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Pos => Sign::Positive,
            SignArg::Neg => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Main,
    Strong,
    Stronger,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Main => Model::Main,
            ModelArg::Strong => Model::Strong,
            ModelArg::Stronger => Model::Stronger,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Positive,
    Negative,
    Mod5,
    CubicMod5,
    CubicMod7,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Cache directory searched for enumerations (and filled by --live runs).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Enumerate cubic fields when no cache covers the range.
    #[arg(long)]
    pub live: bool,
    /// Worker threads for enumeration.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_enum)]
    pub sign: SignArg,
    /// Exclusive upper bound on |disc_K|.
    #[arg(long)]
    pub max_abs_disc: String,
    /// Inclusive lower bound on |disc_K|.
    #[arg(long, default_value = "0")]
    pub min_abs_disc: String,
    /// Cache directory; the file is named after the range.
    #[arg(long, conflicts_with = "out")]
    pub cache: Option<PathBuf>,
    /// Explicit cache file path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, value_enum)]
    pub sign: SignArg,
    /// Comma-separated bounds X (scientific notation allowed).
    #[arg(long = "checkpoints", visible_alias = "X", required = true)]
    pub checkpoints: String,
    /// Residue modulus for histograms.
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    /// Comma-separated primes at which the sextic field is unramified.
    #[arg(long)]
    pub unram: Option<String>,
    /// Treat checkpoints as bounds on positive cubic discriminants and print residue counts.
    #[arg(long)]
    pub cubic: bool,
    #[arg(long)]
    pub no_cyclic_correction: bool,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long, value_enum)]
    pub sign: SignArg,
    /// Comma-separated bounds X.
    #[arg(long = "X", visible_alias = "checkpoints", required = true)]
    pub x: String,
    #[arg(long, value_enum, default_value = "strong")]
    pub model: ModelArg,
    /// Predicted counts by discriminant mod 5, unramified at 2 and 3.
    #[arg(long)]
    pub mod5: bool,
    #[arg(long)]
    pub unram: Option<String>,
    #[arg(long)]
    pub no_cyclic_correction: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(long, value_enum)]
    pub table: TableArg,
    /// Largest X whose actual counts are computed.
    #[arg(long, default_value = "1e14")]
    pub max_x: String,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn threads(t: Option<usize>) -> usize {
    t.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1)
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            let mut partial = path.as_os_str().to_owned();
            partial.push(".partial");
            let partial = PathBuf::from(partial);
            fs::write(&partial, text).map_err(|e| CliError::io(&partial, e))?;
            fs::rename(&partial, path).map_err(|e| CliError::io(path, e))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn primes(list: &Option<String>) -> Result<Vec<u64>> {
    list.as_deref().map_or(Ok(Vec::new()), |s| s.split(',').map(|p| parse::parse_u64(p.trim())).collect())
}

fn source(args: &SourceArgs) -> Source {
    Source { cache: args.cache.clone(), live: args.live, threads: threads(args.threads) }
}

fn predictor() -> Result<Predictor> {
    Ok(Predictor::new(PRODUCT_TOLERANCE)?)
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<()> {
    let range = EnumerationRange::new(a.sign.into(), parse::parse_u64(&a.min_abs_disc)?, parse::parse_u64(&a.max_abs_disc)?)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let path = match (&a.out, &a.cache) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            dir.join(cache::cache_file_name(&range))
        }
        (None, None) => return Err(CliError::Usage("enumerate needs --out or --cache".into())),
    };
    let meta = commands::enumerate_to(&path, range, threads(a.threads))?;
    println!("{}", serde_json::to_string(&meta).expect("metadata serializes"));
    Ok(())
}

fn cmd_census(a: &CensusArgs) -> Result<()> {
    let xs = parse::parse_list(&a.checkpoints)?;
    let src = source(&a.source);
    if a.cubic {
        if a.sign != SignArg::Pos {
            return Err(CliError::Usage("--cubic counts positive cubic discriminants; use --sign pos".into()));
        }
        let m = a.modulus.ok_or_else(|| CliError::Usage("--cubic needs --mod".into()))?;
        let bounds = xs.iter().map(|&x| u64::try_from(x)).collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage("cubic bound too large".into()))?;
        let rows = commands::cubic_ap(&bounds, m, &src)?;
        return emit(&a.output, &report::render_cubic_ap(&rows, format(a.output.format)));
    }
    let mut filter = CensusFilter::new(a.sign.into()).with_unramified(&primes(&a.unram)?)?;
    if let Some(m) = a.modulus {
        filter = filter.with_modulus(m)?;
    }
    let correction = !a.no_cyclic_correction && filter.unramified.is_empty();
    let report = commands::census(&xs, &filter, &src, &predictor()?, correction)?;
    emit(&a.output, &report::render_census(&report, format(a.output.format)))
}

fn cmd_predict(a: &PredictArgs) -> Result<()> {
    let xs = parse::parse_list(&a.x)?;
    let rows = commands::predictions(
        &predictor()?,
        &xs,
        a.sign.into(),
        a.model.into(),
        &primes(&a.unram)?,
        !a.no_cyclic_correction,
        a.mod5,
    )?;
    emit(&a.output, &report::render_predictions(&rows, format(a.output.format)))
}

fn cmd_verify(a: &OutputArgs) -> Result<()> {
    let summary = verify::run_checks()?;
    let text = match a.format {
        FormatArg::Json => serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
        FormatArg::Csv => report::to_csv(
            &["check", "passed", "detail"].map(String::from),
            summary.checks.iter().map(|c| [c.name.clone(), c.passed.to_string(), c.detail.clone()]),
        ),
    };
    emit(a, &text)?;
    if summary.passed {
        Ok(())
    } else {
        let failed: Vec<_> = summary.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Err(CliError::Verify(failed.join(", ")))
    }
}

fn cmd_repro(a: &ReproArgs) -> Result<()> {
    let table = match a.table {
        TableArg::Positive => repro::Table::Positive,
        TableArg::Negative => repro::Table::Negative,
        TableArg::Mod5 => repro::Table::Mod5,
        TableArg::CubicMod5 => repro::Table::CubicMod5,
        TableArg::CubicMod7 => repro::Table::CubicMod7,
    };
    let mut src = source(&a.source);
    if src.cache.is_none() {
        src.live = true;
    }
    let rows = repro::run(table, parse::parse_exact(&a.max_x)?, &src, &predictor()?)?;
    emit(&a.output, &repro::render(&rows, a.output.format == FormatArg::Json))?;
    let mismatches = rows.iter().filter(|r| r.status == "mismatch").count();
    if mismatches > 0 {
        eprintln!("{mismatches} entries differ from the reference table");
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Census(a) => cmd_census(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Repro(a) => cmd_repro(a),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
