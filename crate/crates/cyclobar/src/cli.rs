//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclobar_core::bar::HomologyRoute;
use cyclobar_core::ss::Mode;
use cyclobar_core::witt::{TruncationSet, WittOp};

use crate::cache::WittPolynomialCache;
use crate::commands::{self, HomologyStatus};
use crate::config::{Format, RunConfig, Settings};
use crate::error::CliError;
use crate::table::Output;
use crate::verify::{self, Scope, Suite};

#[derive(Debug, Parser)]
#[command(name = "cyclobar", version, about = "Verified tables for K_*(THH(F_p), F_p) and its ingredients")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for persisted Witt structure polynomials.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest number of cells in one chain degree.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Largest weight accepted by homology computations.
    #[arg(long, global = true)]
    pub max_weight: Option<usize>,
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// No progress output on stderr.
    #[arg(short, long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Witt vector ghost maps, structure polynomials and decompositions.
    Witt(WittArgs),
    /// Homology of the weight-m summand B(m).
    Homology(HomologyArgs),
    /// Relative K-groups K_n(THH(F_p), F_p) for n ≤ 2 r_max + 1.
    Ktable(KtableArgs),
    /// E^∞ survivor tables of the Tate and homotopy fixed point spectral sequences.
    Ss(SsArgs),
    /// Run the cross-check suites.
    Verify(VerifyArgs),
    /// Write the boundary matrices of B(m) as plain text, one file per degree.
    ExportChains(ExportArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("action").required(true).args(["decompose", "ghost", "polynomials", "apply"]))]
pub struct WittArgs {
    /// Big Witt decomposition of length r at p.
    #[arg(long)]
    pub decompose: bool,
    /// Ghost components of --input.
    #[arg(long)]
    pub ghost: bool,
    /// Structure polynomials of --op on S.
    #[arg(long)]
    pub polynomials: bool,
    /// --input OP --other, over ℤ or over F_p with --field.
    #[arg(long)]
    pub apply: bool,
    #[arg(short)]
    pub p: Option<u64>,
    #[arg(short)]
    pub r: Option<u64>,
    /// Truncation set, e.g. `1,2,3`.
    #[arg(short = 'S', value_delimiter = ',')]
    pub set: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub input: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub other: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value = "add")]
    pub op: OpArg,
    #[arg(long)]
    pub field: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OpArg {
    Add,
    Mul,
}

impl From<OpArg> for WittOp {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::Add => WittOp::Add,
            OpArg::Mul => WittOp::Mul,
        }
    }
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(short)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "total")]
    pub route: RouteArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RouteArg {
    Total,
    Diagonal,
}

#[derive(Debug, Args)]
pub struct KtableArgs {
    #[arg(short)]
    pub p: Option<u64>,
    #[arg(long)]
    pub r_max: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SsArgs {
    #[arg(short)]
    pub m: u64,
    #[arg(short)]
    pub p: Option<u64>,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeArg,
    /// Highest total degree; defaults to 2 r_max + 1.
    #[arg(long)]
    pub degree_max: Option<i64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Tate,
    Hfp,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Reduced grids.
    #[arg(long)]
    pub quick: bool,
    #[arg(short)]
    pub p: Option<u64>,
    #[arg(short)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(short)]
    pub m: usize,
    #[arg(long)]
    pub out: PathBuf,
}

fn flag_settings(g: &GlobalArgs, prime: Option<u64>, r_max: Option<u64>) -> Settings {
    Settings {
        prime,
        r_max,
        max_weight: g.max_weight,
        format: g.format,
        cache_dir: g.cache_dir.clone(),
        budget: g.budget,
    }
}

fn config(g: &GlobalArgs, prime: Option<u64>, r_max: Option<u64>) -> Result<RunConfig, CliError> {
    RunConfig::resolve(flag_settings(g, prime, r_max), |k| std::env::var(k).ok(), g.config.as_deref())
}

fn truncation_set(set: Option<Vec<u64>>) -> Result<TruncationSet, CliError> {
    let set = set.ok_or_else(|| CliError::Usage("-S is required".into()))?;
    Ok(TruncationSet::new(set)?)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

/// Runs one command, returning the text for stdout and the exit status.
pub fn execute(cli: Cli) -> Result<(String, u8), CliError> {
    let g = &cli.global;
    let rendered = |out: Output, cfg: &RunConfig| out.render(cfg.format);
    match cli.command {
        Command::Witt(a) => {
            let cfg = config(g, a.p, None)?;
            let out = if a.decompose {
                commands::witt_decompose(cfg.prime, need(a.r, "-r")?)?
            } else if a.ghost {
                commands::witt_ghost(&truncation_set(a.set)?, &need(a.input, "--input")?)?
            } else {
                let cache = WittPolynomialCache::new(cfg.cache_dir.clone());
                let set = truncation_set(a.set)?;
                if a.polynomials {
                    commands::witt_polynomials(&cache, &set, a.op.into())?
                } else {
                    let (x, y) = (need(a.input, "--input")?, need(a.other, "--other")?);
                    commands::witt_apply(&cache, &set, a.op.into(), &x, &y, a.field)?
                }
            };
            Ok((rendered(out, &cfg), 0))
        }
        Command::Homology(a) => {
            let cfg = config(g, None, None)?;
            let route = match a.route {
                RouteArg::Total => HomologyRoute::TotalComplex,
                RouteArg::Diagonal => HomologyRoute::Diagonal,
            };
            let (out, status) = commands::homology(&cfg, a.m, route)?;
            let code = if status == HomologyStatus::Fail { 3 } else { 0 };
            Ok((rendered(out, &cfg), code))
        }
        Command::Ktable(a) => {
            let cfg = config(g, a.p, a.r_max)?;
            Ok((rendered(commands::ktable(cfg.prime, cfg.r_max)?, &cfg), 0))
        }
        Command::Ss(a) => {
            let cfg = config(g, a.p, None)?;
            let modes: &[Mode] = match a.mode {
                ModeArg::Tate => &[Mode::Tate],
                ModeArg::Hfp => &[Mode::HomotopyFixedPoints],
                ModeArg::Both => &[Mode::Tate, Mode::HomotopyFixedPoints],
            };
            let degree_max = a.degree_max.unwrap_or(2 * cfg.r_max as i64 + 1);
            if degree_max < 0 {
                return Err(CliError::Usage("--degree-max must be non-negative".into()));
            }
            Ok((rendered(commands::spectral_sequence(a.m, cfg.prime, modes, degree_max)?, &cfg), 0))
        }
        Command::Verify(a) => {
            let cfg = config(g, a.p, None)?;
            let scope = Scope {
                quick: a.quick,
                prime: a.p,
                weight: a.m,
                progress: !g.quiet,
            };
            let report = verify::run(a.suite, &cfg, &scope)?;
            let code = if report.passed() { 0 } else { 3 };
            Ok((rendered(report.output(), &cfg), code))
        }
        Command::ExportChains(a) => {
            let cfg = config(g, None, None)?;
            Ok((rendered(commands::export_chains(&cfg, a.m, &a.out)?, &cfg), 0))
        }
    }
}

/// Entry point used by the binary.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("cyclobar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
