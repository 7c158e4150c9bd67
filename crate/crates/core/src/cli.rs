//! Command-line front end. [`run_from`] parses arguments, runs one command,
//! writes its JSON report, and returns the process exit code.
//!
//! Exit codes: `verify` returns 0 for full spark, 1 for deficient, 2 for
//! errors or an exceeded budget; `criteria` returns 0 when the property holds
//! and 1 when it fails; `simulate` returns 1 when any trial failed. Every
//! command returns 2 on invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::criteria::{
    consecutive_minor_check, dft_submatrix_full_spark, evans_all_minors_check, tight_columns_check,
    uniform_distribution_check, CheckOptions, DEFAULT_EXACT_BUDGET,
};
use crate::erasure::erasure_trial;
use crate::exactalg::{CycPolynomial, Cyclotomic, ExactMatrix, Rational};
use crate::framecore::{
    frame_bounds, full_spark, is_tight, orbit_frame, FrameMatrix, FrameMode, GeneratingVector, OrbitFamily,
    SparkOptions, SparkVerdict, DEFAULT_TOL,
};
use crate::genfamily::{certify_family_full_spark, family_matrix, ExponentFamily, Tau};
use crate::groups::{deficiency_verdict, induced_rep, SemidirectGroup};
use crate::io::{frame_from_json, frame_to_json, write_frame_csv, CertificateFile};

/// Environment variable that overrides `--threads`.
pub const THREADS_ENV: &str = "SPARKFRAME_THREADS";

#[derive(Parser, Debug)]
#[command(name = "sparkframe", version, about = "Construct and certify full spark frames")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum number of minors to evaluate.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Threshold on column-normalized |det| in numeric mode.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for random vectors and erasure patterns.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output path (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    #[value(alias = "numeric")]
    Float,
}

impl From<ModeArg> for FrameMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => FrameMode::Exact,
            ModeArg::Float => FrameMode::Numeric,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an orbit frame and write it as JSON (or CSV).
    Construct(ConstructArgs),
    /// Certify full spark for a frame file.
    Verify {
        frame: PathBuf,
    },
    /// Structural criteria.
    #[command(subcommand)]
    Criteria(CriteriaCommand),
    /// Frame bounds of a frame file.
    Bounds {
        frame: PathBuf,
        /// Relative tolerance for the tightness test.
        #[arg(long, default_value_t = 1e-9)]
        tight_tol: f64,
    },
    /// Erasure-channel simulation on a frame file.
    Simulate {
        frame: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Erasures per trial (default: count − dim).
        #[arg(long)]
        erasures: Option<usize>,
    },
    /// Structural deficiency verdict for a representation.
    Deficiency(GroupArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Modulus N of Z_N ⋊ H.
    #[arg(long)]
    pub group: u64,
    /// Elements of H.
    #[arg(long, value_delimiter = ',')]
    pub subgroup: Vec<u64>,
    /// Character index.
    #[arg(long, default_value_t = 1)]
    pub xi: u64,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_delimiter = ',')]
    pub xi_list: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub lambda_list: Vec<u64>,
    /// `transcendental` or a rational `p/q`.
    #[arg(long, default_value = "transcendental")]
    pub tau: String,
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    #[arg(long, conflicts_with_all = ["xi_list", "lambda_list"])]
    pub group: Option<u64>,
    #[arg(long, value_delimiter = ',', requires = "group")]
    pub subgroup: Vec<u64>,
    #[arg(long, requires = "group")]
    pub xi: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub xi_list: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub lambda_list: Vec<u64>,
    #[arg(long)]
    pub tau: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// `monomial-squares`, `explicit:v0,v1,…`, or `random:SEED`.
    #[arg(long, default_value = "monomial-squares")]
    pub vector: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Also write the frame as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CriteriaCommand {
    /// Uniform distribution of a subset of Z_N over the divisors of N.
    Uniform {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',')]
        set: Vec<u64>,
    },
    /// Nonvanishing of all consecutive-row minors of the diagonal matrix.
    Consecutive(SourceArgs),
    /// Exact tightness of the columns of the diagonal matrix.
    TightColumns(SourceArgs),
    /// All minors of (ζ_p^{a_j b_k}) for prime p.
    Evans {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',')]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<u64>,
    },
    /// Full spark of the DFT rows indexed by a subset.
    Dft {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',')]
        set: Vec<u64>,
    },
    /// Certificate that a generalized Vandermonde family yields full spark frames.
    Family(FamilyArgs),
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct CliError(String);

fn err(e: impl std::fmt::Display) -> CliError {
    CliError(e.to_string())
}

type CliResult<T> = Result<T, CliError>;

enum Source {
    Group(crate::groups::InducedRep),
    Family(ExponentFamily),
}

impl SourceArgs {
    fn resolve(&self) -> CliResult<Source> {
        if let Some(n) = self.group {
            let group = SemidirectGroup::from_parts(n, &self.subgroup).map_err(err)?;
            return Ok(Source::Group(induced_rep(&group, self.xi.unwrap_or(1))));
        }
        if self.xi_list.is_empty() || self.lambda_list.is_empty() {
            return Err(CliError("give --group/--subgroup/--xi or --xi-list/--lambda-list".into()));
        }
        let tau: Tau = self.tau.as_deref().unwrap_or("transcendental").parse().map_err(err)?;
        Ok(Source::Family(
            ExponentFamily::new(self.xi_list.clone(), self.lambda_list.clone(), tau).map_err(err)?,
        ))
    }
}

impl Source {
    fn family(&self) -> OrbitFamily<'_> {
        match self {
            Source::Group(r) => OrbitFamily::Group(r),
            Source::Family(f) => OrbitFamily::Exponent(f),
        }
    }

    fn diagonal_matrix(&self) -> ExactMatrix {
        match self {
            Source::Group(r) => r.diagonal_matrix(),
            Source::Family(f) => family_matrix(f),
        }
    }
}

/// Parses `monomial-squares`, `explicit:…` and `random:SEED`.
pub fn parse_vector(spec: &str, dim: usize, mode: FrameMode) -> Result<GeneratingVector, String> {
    if spec == "monomial-squares" {
        return Ok(GeneratingVector::monomial_squares(dim));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        return seed
            .parse()
            .map(GeneratingVector::RandomGaussian)
            .map_err(|_| format!("bad seed '{seed}'"));
    }
    if let Some(list) = spec.strip_prefix("explicit:") {
        let items: Vec<&str> = list.split(',').map(str::trim).collect();
        return match mode {
            FrameMode::Exact => items
                .iter()
                .map(|s| {
                    s.parse::<Rational>()
                        .map(|r| CycPolynomial::constant(Cyclotomic::from_rational(1, &r)))
                        .map_err(|e| format!("'{s}': {e}"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(GeneratingVector::ExplicitExact),
            FrameMode::Numeric => items
                .iter()
                .map(|s| s.parse::<Complex64>().map_err(|_| format!("'{s}' is not a number")))
                .collect::<Result<Vec<_>, _>>()
                .map(GeneratingVector::ExplicitNumeric),
        };
    }
    Err(format!("unknown vector spec '{spec}'"))
}

fn threads(global: &GlobalArgs) -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .or(global.threads)
        .unwrap_or(0)
}

fn emit(global: &GlobalArgs, stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    match &global.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError(format!("{}: {e}", path.display()))),
        None => writeln!(stdout, "{text}").map_err(err),
    }
}

fn emit_json(global: &GlobalArgs, stdout: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    emit(global, stdout, &serde_json::to_string_pretty(value).map_err(err)?)
}

fn read_frame(path: &Path) -> CliResult<FrameMatrix> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    frame_from_json(&text).map_err(err)
}

fn check_options(global: &GlobalArgs) -> CheckOptions {
    CheckOptions {
        threads: threads(global),
        budget: global.budget.unwrap_or(DEFAULT_EXACT_BUDGET),
    }
}

fn exit_bool(b: bool) -> i32 {
    if b {
        0
    } else {
        1
    }
}

fn construct(global: &GlobalArgs, args: &ConstructArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let source = args.source.resolve()?;
    let family = source.family();
    let mode = FrameMode::from(args.mode);
    let v = parse_vector(&args.vector, family.dim(), mode).map_err(CliError)?;
    let frame = orbit_frame(family, &v, mode).map_err(err)?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).map_err(err)?;
        write_frame_csv(&frame, file).map_err(err)?;
    }
    match global.format {
        Format::Json => emit(global, stdout, &frame_to_json(&frame))?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_frame_csv(&frame, &mut buf).map_err(err)?;
            emit(global, stdout, String::from_utf8(buf).map_err(err)?.trim_end())?;
        }
    }
    Ok(0)
}

fn verify(global: &GlobalArgs, path: &Path, stdout: &mut dyn Write) -> CliResult<i32> {
    let frame = read_frame(path)?;
    let threads = threads(global);
    let opts = SparkOptions {
        threads,
        budget: global.budget,
        tol: global.tol,
    };
    let start = Instant::now();
    let cert = full_spark(&frame, &opts).map_err(err)?;
    let file = CertificateFile {
        certificate: cert,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        threads: if threads == 0 { rayon::current_num_threads() } else { threads },
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    emit_json(global, stdout, &file)?;
    Ok(match file.certificate.verdict {
        SparkVerdict::FullSpark => 0,
        SparkVerdict::Deficient => 1,
        SparkVerdict::Inconclusive => 2,
    })
}

fn criteria(global: &GlobalArgs, cmd: &CriteriaCommand, stdout: &mut dyn Write) -> CliResult<i32> {
    let opts = check_options(global);
    let (holds, report) = match cmd {
        CriteriaCommand::Uniform { n, set } => {
            let holds = uniform_distribution_check(*n, set);
            (holds, json!({"criterion": "uniform", "n": n, "set": set, "holds": holds}))
        }
        CriteriaCommand::Dft { n, set } => {
            let holds = dft_submatrix_full_spark(*n, set, &opts).map_err(err)?;
            (holds, json!({"criterion": "dft", "n": n, "set": set, "holds": holds}))
        }
        CriteriaCommand::Evans { n, a, b } => {
            let r = evans_all_minors_check(*n, a, b, &opts).map_err(err)?;
            (r.holds, json!({"criterion": "evans", "n": n, "a": a, "b": b, "holds": r.holds,
                "minors_checked": r.minors_checked, "witness": r.witness}))
        }
        CriteriaCommand::Consecutive(src) => {
            let m = src.resolve()?.diagonal_matrix();
            let r = consecutive_minor_check(&m, &opts).map_err(err)?;
            (r.holds, json!({"criterion": "consecutive", "holds": r.holds,
                "minors_checked": r.minors_checked, "witness": r.witness}))
        }
        CriteriaCommand::TightColumns(src) => {
            let holds = tight_columns_check(&src.resolve()?.diagonal_matrix()).map_err(err)?;
            (holds, json!({"criterion": "tight-columns", "holds": holds}))
        }
        CriteriaCommand::Family(args) => {
            let tau: Tau = args.tau.parse().map_err(err)?;
            let f = ExponentFamily::new(args.xi_list.clone(), args.lambda_list.clone(), tau).map_err(err)?;
            let cert = certify_family_full_spark(&f, &opts).map_err(err)?;
            let mut v = serde_json::to_value(&cert).map_err(err)?;
            v["criterion"] = json!("family");
            v["tau"] = json!(tau.to_string());
            (cert.certified, v)
        }
    };
    emit_json(global, stdout, &report)?;
    Ok(exit_bool(holds))
}

fn bounds(global: &GlobalArgs, path: &Path, tight_tol: f64, stdout: &mut dyn Write) -> CliResult<i32> {
    let frame = read_frame(path)?;
    let b = frame_bounds(&frame);
    let report = json!({
        "lower": b.lower,
        "upper": b.upper,
        "tight": is_tight(&frame, tight_tol),
        "dim": frame.dim(),
        "count": frame.count(),
    });
    emit_json(global, stdout, &report)?;
    Ok(0)
}

fn simulate(global: &GlobalArgs, path: &Path, trials: usize, erasures: Option<usize>, stdout: &mut dyn Write) -> CliResult<i32> {
    let frame = read_frame(path)?;
    let erasures = erasures.unwrap_or(frame.count() - frame.dim());
    let r = erasure_trial(&frame, trials, erasures, global.seed, threads(global)).map_err(err)?;
    emit_json(global, stdout, &r)?;
    Ok(if r.failures > 0 { 1 } else { 0 })
}

fn deficiency(global: &GlobalArgs, args: &GroupArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let group = SemidirectGroup::from_parts(args.group, &args.subgroup).map_err(err)?;
    let v = deficiency_verdict(&group, args.xi);
    let report = json!({
        "n": args.group,
        "subgroup": group.subgroup().elements(),
        "xi": args.xi,
        "verdict": v.verdict,
        "rule": v.rule,
        "reason": v.reason,
    });
    emit_json(global, stdout, &report)?;
    Ok(0)
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Construct(a) => construct(g, a, stdout),
        Command::Verify { frame } => verify(g, frame, stdout),
        Command::Criteria(c) => criteria(g, c, stdout),
        Command::Bounds { frame, tight_tol } => bounds(g, frame, *tight_tol, stdout),
        Command::Simulate { frame, trials, erasures } => simulate(g, frame, *trials, *erasures, stdout),
        Command::Deficiency(a) => deficiency(g, a, stdout),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `stdout` unless `--out` is given; errors go to stderr.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
