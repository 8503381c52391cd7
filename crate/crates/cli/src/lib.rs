//! Command runners behind the `qltc` binary.
//!
//! Every command writes into an [`Outcome`] instead of the process streams,
//! so tests can drive the exact code paths the binary uses.
//!
//! Exit codes: 0 success (all bounds hold), 1 a bound or prediction failed,
//! 2 usage or parse error, 3 enumeration cap exceeded (partial report),
//! 4 dependent classical checks, 5 undefined soundness.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use qltc::balance::{
    bound_check, distance_balance, double_balance, predicted_double, predicted_params,
    BalanceError, BalancedCode, BoundError, BoundReport, ClassicalParams, PredictedParams,
    QuantumParams,
};
use qltc::constructions::{CodeSpec, ConstructionError};
use qltc::io::{self, CodeFile, FormatError};
use qltc::oracle::{
    analyze_classical, analyze_quantum, classical_soundness, quantum_dimension, quantum_distances,
    CapExceeded, CodeReport, Distance, Locality, Soundness,
};
use qltc::tables::{param_table, Scenario, TableInputs};
use qltc::{ClassicalCode, CssCode, Rational, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DEPENDENT: i32 = 4;
pub const EXIT_UNDEFINED: i32 = 5;

/// Smallest accepted enumeration cap.
pub const MIN_CAP: u64 = 1 << 10;

pub const CSV_HEADER: &str = "seed,n,K,dX,dZ,locality,rhoX_num,rhoX_den,rhoZ_num,rhoZ_den,boundX_num,boundX_den,boundZ_num,boundZ_den,holdsX,holdsZ,ms";

#[derive(Debug, Parser)]
#[command(
    name = "qltc",
    version,
    about = "Distance balancing and exact soundness checks for CSS codes"
)]
pub struct Cli {
    /// Largest exhaustive set any oracle may enumerate (at least 1024).
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Seed for random code families.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable JSON output instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a code and write it to a file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Report dimension, distances, locality and soundness of a code file.
    Analyze { path: PathBuf },
    /// Distance-balance a CSS code with a classical code.
    Balance {
        quantum: PathBuf,
        classical: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Balance twice, swapping X and Z in between.
        #[arg(long)]
        double: bool,
        /// Drop dependent classical checks instead of refusing them.
        #[arg(long)]
        reduce_checks: bool,
    },
    /// Compare measured soundness of a balanced code with its lower bounds.
    Boundcheck {
        quantum: PathBuf,
        classical: PathBuf,
        /// Use this soundness (p or p/q) for both input components.
        #[arg(long, value_parser = parse_rational)]
        assume_rho: Option<Rational>,
        #[arg(long)]
        reduce_checks: bool,
    },
    /// Run bound checks over a job file and print one CSV row per instance.
    Sweep {
        job_file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Record wall time per instance in the `ms` column (otherwise 0).
        #[arg(long)]
        timing: bool,
    },
    /// Print a parameter table.
    Table {
        scenario: String,
        /// Exponent α in t = n^α (p or p/q).
        #[arg(long, value_parser = parse_rational)]
        alpha: Option<Rational>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        nz: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct OutputPath {
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Repetition code with checks e_i + e_{i+1}.
    Rep {
        l: usize,
        #[command(flatten)]
        out: OutputPath,
    },
    /// Repetition code with checks e_i + e_l.
    RepModified {
        l: usize,
        #[command(flatten)]
        out: OutputPath,
    },
    /// CSS code with H_Z = [I|I] and H_X = [Ĥ|Ĥ].
    Q {
        #[arg(long)]
        hhat: PathBuf,
        #[command(flatten)]
        out: OutputPath,
    },
    /// The [7,4,3] Hamming code.
    Hamming74 {
        #[command(flatten)]
        out: OutputPath,
    },
    /// Random check matrix with independent rows (seeded by --seed).
    RandomLdpc {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        row_w: usize,
        #[arg(long)]
        col_w: usize,
        /// Exact row and column weights instead of upper bounds.
        #[arg(long)]
        regular: bool,
        #[command(flatten)]
        out: OutputPath,
    },
    /// Random CSS code (seeded by --seed).
    RandomCss {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        nz: usize,
        #[command(flatten)]
        out: OutputPath,
    },
    /// Any family described by a CodeSpec JSON file.
    Spec {
        file: PathBuf,
        #[command(flatten)]
        out: OutputPath,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Balance(BalanceError),
    #[error("{0}")]
    Undefined(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) => EXIT_CAP,
            CliError::Balance(BalanceError::DependentChecks { .. }) => EXIT_DEPENDENT,
            CliError::Undefined(_) => EXIT_UNDEFINED,
            _ => EXIT_USAGE,
        }
    }
}

impl From<BalanceError> for CliError {
    fn from(e: BalanceError) -> Self {
        CliError::Balance(e)
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::Balance(b) => CliError::Balance(b),
            BoundError::CapExceeded(c) => CliError::Cap(c),
            u @ BoundError::Undefined { .. } => CliError::Undefined(u.to_string()),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    cap: u64,
    seed: u64,
    json: bool,
    out: String,
    err: String,
}

impl Ctx {
    fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {msg}");
    }
}

/// Parses arguments (the first is the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let mut ctx = Ctx {
        cap: cli.cap,
        seed: cli.seed,
        json: cli.json,
        out: String::new(),
        err: String::new(),
    };
    let result = if cli.cap < MIN_CAP {
        Err(CliError::Usage(format!(
            "--cap must be at least {MIN_CAP}, got {}",
            cli.cap
        )))
    } else {
        dispatch(&mut ctx, cli.command)
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            e.exit_code()
        }
    };
    Outcome {
        code,
        stdout: ctx.out,
        stderr: ctx.err,
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32, CliError> {
    match command {
        Command::Gen { family } => cmd_gen(ctx, family),
        Command::Analyze { path } => cmd_analyze(ctx, &path),
        Command::Balance {
            quantum,
            classical,
            output,
            double,
            reduce_checks,
        } => cmd_balance(ctx, &quantum, &classical, &output, double, reduce_checks),
        Command::Boundcheck {
            quantum,
            classical,
            assume_rho,
            reduce_checks,
        } => cmd_boundcheck(ctx, &quantum, &classical, assume_rho, reduce_checks),
        Command::Sweep {
            job_file,
            output,
            timing,
        } => cmd_sweep(ctx, &job_file, output.as_deref(), timing),
        Command::Table {
            scenario,
            alpha,
            n,
            nx,
            nz,
            t,
            s,
            l,
        } => {
            let inputs = TableInputs {
                n,
                n_x: nx,
                n_z: nz,
                t,
                s,
                l,
                alpha,
            };
            cmd_table(ctx, &scenario, &inputs)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit_report(ctx: &mut Ctx, report: &CodeReport) -> i32 {
    if ctx.json {
        ctx.out.push_str(&report.to_json());
        ctx.out.push('\n');
    } else {
        ctx.out.push_str(&report.to_text());
    }
    if report.incomplete().is_empty() {
        EXIT_OK
    } else {
        ctx.warn(&format!(
            "enumeration cap {} exceeded for: {}",
            ctx.cap,
            report.incomplete().join(", ")
        ));
        EXIT_CAP
    }
}

fn report_for(code: &CodeFile, cap: u64, provenance: &str) -> CodeReport {
    match code {
        CodeFile::Classical(c) => analyze_classical(c, cap, provenance),
        CodeFile::Quantum(q) => analyze_quantum(q, cap, provenance),
    }
}

fn cmd_gen(ctx: &mut Ctx, family: GenFamily) -> Result<i32, CliError> {
    let seed = ctx.seed;
    let (spec, out) = match family {
        GenFamily::Rep { l, out } => (CodeSpec::Rep { l }, out),
        GenFamily::RepModified { l, out } => (CodeSpec::RepModified { l }, out),
        GenFamily::Q { hhat, out } => (
            CodeSpec::QComplex {
                hhat: Box::new(CodeSpec::FromFile { path: hhat }),
            },
            out,
        ),
        GenFamily::Hamming74 { out } => (CodeSpec::Hamming74 {}, out),
        GenFamily::RandomLdpc {
            t,
            s,
            row_w,
            col_w,
            regular,
            out,
        } => (
            CodeSpec::RandomLdpc {
                t,
                s,
                row_w,
                col_w,
                seed,
                regular,
            },
            out,
        ),
        GenFamily::RandomCss { n, nx, nz, out } => (
            CodeSpec::RandomCss {
                n,
                n_x: nx,
                n_z: nz,
                seed,
            },
            out,
        ),
        GenFamily::Spec { file, out } => {
            let text = std::fs::read_to_string(&file).map_err(|source| FormatError::Io {
                path: file.clone(),
                source,
            })?;
            let spec: CodeSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
            (spec, out)
        }
    };
    let code = spec.build().map_err(|e| match e {
        ConstructionError::Invalid(msg) => CliError::Usage(msg),
        other => other.into(),
    })?;
    write_file(&out.output, &io::write_code(&code))?;
    let report = report_for(&code, ctx.cap, &spec.describe());
    Ok(emit_report(ctx, &report))
}

fn cmd_analyze(ctx: &mut Ctx, path: &Path) -> Result<i32, CliError> {
    let code = io::read_code(path)?;
    let report = report_for(&code, ctx.cap, &path.display().to_string());
    Ok(emit_report(ctx, &report))
}

fn read_quantum(path: &Path) -> Result<CssCode, CliError> {
    match io::read_code(path)? {
        CodeFile::Quantum(q) => Ok(q),
        CodeFile::Classical(_) => Err(CliError::Usage(format!(
            "{}: expected a CSS code (3-term complex JSON), found a classical code",
            path.display()
        ))),
    }
}

fn read_classical(path: &Path, reduce: bool) -> Result<ClassicalCode, CliError> {
    match io::read_code(path)? {
        CodeFile::Classical(c) if reduce => Ok(c.reduce_checks()),
        CodeFile::Classical(c) => Ok(c),
        CodeFile::Quantum(_) => Err(CliError::Usage(format!(
            "{}: expected a classical code, found a CSS code",
            path.display()
        ))),
    }
}

/// Measured parameters of a balanced code; `None` where the cap was hit.
#[derive(Debug, Clone, Serialize)]
struct MeasuredBalanced {
    n: usize,
    #[serde(rename = "nX")]
    n_x: usize,
    #[serde(rename = "nZ")]
    n_z: usize,
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "dX")]
    d_x: Option<Distance>,
    #[serde(rename = "dZ")]
    d_z: Option<Distance>,
    locality: usize,
    /// Soundness of the H_Z′ = ∂₂ᵀ checks.
    #[serde(rename = "soundness_X")]
    soundness_x: Option<Soundness>,
    /// Soundness of the H_X′ = ∂₁ checks.
    #[serde(rename = "soundness_Z")]
    soundness_z: Option<Soundness>,
}

#[derive(Debug, Clone, Serialize)]
struct PredictedJson {
    n: usize,
    #[serde(rename = "nX")]
    n_x: usize,
    #[serde(rename = "nZ")]
    n_z: usize,
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "dX")]
    d_x: Distance,
    #[serde(rename = "dZ")]
    d_z: Distance,
    locality_bound: usize,
    #[serde(rename = "soundness_bound_X")]
    soundness_bound_x: Option<Rational>,
    #[serde(rename = "soundness_bound_Z")]
    soundness_bound_z: Option<Rational>,
}

impl From<&PredictedParams> for PredictedJson {
    fn from(p: &PredictedParams) -> Self {
        PredictedJson {
            n: p.n,
            n_x: p.n_x,
            n_z: p.n_z,
            k: p.k,
            d_x: p.d_x,
            d_z: p.d_z,
            locality_bound: p.locality_bound,
            soundness_bound_x: p.soundness_bound_x,
            soundness_bound_z: p.soundness_bound_z,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct BalanceSummary {
    output: String,
    rounds: usize,
    predicted: Option<PredictedJson>,
    measured: MeasuredBalanced,
    /// Predicted counts, dimension and distances equal the measured ones,
    /// measured soundness meets each predicted bound and locality stays
    /// within its bound. `None` when something was not measured.
    agrees: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    incomplete: Vec<String>,
}

fn measure_balanced(b: &BalancedCode, cap: u64, incomplete: &mut Vec<String>) -> MeasuredBalanced {
    let code = &b.code;
    let (d_x, d_z) = match quantum_distances(code, cap) {
        Ok((x, z)) => (Some(x), Some(z)),
        Err(_) => {
            incomplete.push("distances".into());
            (None, None)
        }
    };
    let mut side = |h: &qltc::BitMatrix, name: &str| {
        classical_soundness(&ClassicalCode::new(h.clone()), cap)
            .map_err(|_| incomplete.push(name.to_string()))
            .ok()
    };
    let soundness_x = side(code.h_z(), "soundness_X");
    let soundness_z = side(code.h_x(), "soundness_Z");
    MeasuredBalanced {
        n: code.n(),
        n_x: code.n_x(),
        n_z: code.n_z(),
        k: quantum_dimension(code),
        d_x,
        d_z,
        locality: code.locality(),
        soundness_x,
        soundness_z,
    }
}

fn agreement(p: &PredictedParams, m: &MeasuredBalanced) -> Option<bool> {
    let counts = (p.n, p.n_x, p.n_z, p.k) == (m.n, m.n_x, m.n_z, m.k);
    let distances = (Some(p.d_x), Some(p.d_z)) == (m.d_x, m.d_z);
    let meets = |bound: Option<Rational>, measured: Option<Soundness>| match (bound, measured) {
        (None, _) => Some(true),
        (Some(b), Some(Soundness::Value(v))) => Some(v >= b),
        (Some(_), Some(Soundness::Undefined { .. })) => Some(false),
        (Some(_), None) => None,
    };
    let sx = meets(p.soundness_bound_x, m.soundness_x);
    let sz = meets(p.soundness_bound_z, m.soundness_z);
    if m.d_x.is_none() {
        return if counts { None } else { Some(false) };
    }
    let ok = counts && distances && m.locality <= p.locality_bound;
    match (sx, sz) {
        (Some(a), Some(b)) => Some(ok && a && b),
        _ if !ok => Some(false),
        _ => None,
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "(cap exceeded)".to_string(), |v| v.to_string())
}

fn cmd_balance(
    ctx: &mut Ctx,
    quantum: &Path,
    classical: &Path,
    output: &Path,
    double: bool,
    reduce: bool,
) -> Result<i32, CliError> {
    let q = read_quantum(quantum)?;
    let r = read_classical(classical, reduce)?;
    let balanced = if double {
        double_balance(&q, &r)?
    } else {
        distance_balance(&q, &r)?
    }
    .with_parent(
        quantum.display().to_string(),
        classical.display().to_string(),
    );
    write_file(output, &io::balanced_to_json(&balanced))?;

    let mut incomplete = Vec::new();
    let predicted = match (
        QuantumParams::measure(&q, ctx.cap),
        ClassicalParams::measure(&r, ctx.cap),
    ) {
        (Ok(qp), Ok(rp)) => Some(if double {
            predicted_double(&qp, &rp)
        } else {
            predicted_params(&qp, &rp)
        }),
        _ => {
            incomplete.push("predicted (input parameters)".into());
            None
        }
    };
    let measured = measure_balanced(&balanced, ctx.cap, &mut incomplete);
    let agrees = predicted.as_ref().and_then(|p| agreement(p, &measured));
    let summary = BalanceSummary {
        output: output.display().to_string(),
        rounds: balanced.rounds,
        predicted: predicted.as_ref().map(PredictedJson::from),
        measured,
        agrees,
        incomplete,
    };

    if ctx.json {
        ctx.out
            .push_str(&serde_json::to_string(&summary).expect("serialisable"));
        ctx.out.push('\n');
    } else {
        render_balance_text(ctx, &summary, predicted.as_ref());
    }
    if !summary.incomplete.is_empty() {
        ctx.warn(&format!(
            "enumeration cap {} exceeded for: {}",
            ctx.cap,
            summary.incomplete.join(", ")
        ));
    }
    Ok(match summary.agrees {
        Some(false) => EXIT_VIOLATED,
        _ if !summary.incomplete.is_empty() => EXIT_CAP,
        _ => EXIT_OK,
    })
}

fn render_balance_text(ctx: &mut Ctx, s: &BalanceSummary, p: Option<&PredictedParams>) {
    let m = &s.measured;
    let pred = |f: &dyn Fn(&PredictedParams) -> String| p.map_or_else(|| "-".to_string(), f);
    let ge = |b: Option<Rational>| b.map_or_else(|| "-".to_string(), |b| format!("≥ {b}"));
    let rows: Vec<(&str, String, String)> = vec![
        ("qubits n", pred(&|p| p.n.to_string()), m.n.to_string()),
        (
            "X checks nX",
            pred(&|p| p.n_x.to_string()),
            m.n_x.to_string(),
        ),
        (
            "Z checks nZ",
            pred(&|p| p.n_z.to_string()),
            m.n_z.to_string(),
        ),
        ("dimension K", pred(&|p| p.k.to_string()), m.k.to_string()),
        ("X-distance dX", pred(&|p| p.d_x.to_string()), opt(m.d_x)),
        ("Z-distance dZ", pred(&|p| p.d_z.to_string()), opt(m.d_z)),
        (
            "locality",
            pred(&|p| format!("≤ {}", p.locality_bound)),
            m.locality.to_string(),
        ),
        (
            "soundness ∂₂ᵀ (X)",
            pred(&|p| ge(p.soundness_bound_x)),
            opt(m.soundness_x),
        ),
        (
            "soundness ∂₁ (Z)",
            pred(&|p| ge(p.soundness_bound_z)),
            opt(m.soundness_z),
        ),
    ];
    let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    let w1 = rows
        .iter()
        .map(|r| r.1.chars().count())
        .chain(std::iter::once("predicted".len()))
        .max()
        .unwrap_or(0);
    let _ = writeln!(
        ctx.out,
        "wrote {} ({} round{})",
        s.output,
        s.rounds,
        if s.rounds == 1 { "" } else { "s" }
    );
    let pad = |text: &str, width: usize| {
        let len = text.chars().count();
        format!("{text}{}", " ".repeat(width.saturating_sub(len)))
    };
    let _ = writeln!(
        ctx.out,
        "{}  {}  measured",
        pad("", w0),
        pad("predicted", w1)
    );
    for (name, p, m) in &rows {
        let _ = writeln!(ctx.out, "{}  {}  {}", pad(name, w0), pad(p, w1), m);
    }
    let verdict = match s.agrees {
        Some(true) => "predictions confirmed",
        Some(false) => "PREDICTION MISMATCH",
        None => "not fully compared (cap exceeded)",
    };
    let _ = writeln!(ctx.out, "{verdict}");
}

#[derive(Serialize)]
struct BoundJson<'a> {
    checks: [&'a qltc::balance::SideCheck; 2],
    rho: RhoJson,
    hypothesis: &'a qltc::balance::Hypothesis,
}

#[derive(Serialize)]
struct RhoJson {
    source: qltc::balance::RhoSource,
    #[serde(rename = "X")]
    x: Rational,
    #[serde(rename = "Z")]
    z: Rational,
}

fn cmd_boundcheck(
    ctx: &mut Ctx,
    quantum: &Path,
    classical: &Path,
    assume_rho: Option<Rational>,
    reduce: bool,
) -> Result<i32, CliError> {
    let q = read_quantum(quantum)?;
    let r = read_classical(classical, reduce)?;
    let report = bound_check(&q, &r, assume_rho, ctx.cap)?;
    if !report.hypothesis.holds {
        let limit = report
            .hypothesis
            .limit
            .map_or_else(|| "none".to_string(), |l| l.to_string());
        ctx.warn(&format!(
            "input soundness {} exceeds min(2n/nZ, 2n/nX) = {limit}; the bounds are still evaluated with the min(·, 1) clamp",
            report.hypothesis.rho
        ));
    }
    if ctx.json {
        let json = BoundJson {
            checks: [&report.x, &report.z],
            rho: RhoJson {
                source: report.rho_source,
                x: report.rho_x,
                z: report.rho_z,
            },
            hypothesis: &report.hypothesis,
        };
        ctx.out
            .push_str(&serde_json::to_string(&json).expect("serialisable"));
        ctx.out.push('\n');
    } else {
        render_bound_text(ctx, &report);
    }
    Ok(if report.all_hold() {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    })
}

fn render_bound_text(ctx: &mut Ctx, r: &BoundReport) {
    let source = match r.rho_source {
        qltc::balance::RhoSource::Measured => "measured",
        qltc::balance::RhoSource::Assumed => "assumed",
    };
    let _ = writeln!(
        ctx.out,
        "input soundness ({source}): H_X code {}, H_Z code {}",
        r.rho_x, r.rho_z
    );
    for (c, what) in [(&r.x, "∂₂ᵀ checks"), (&r.z, "∂₁ checks")] {
        let _ = writeln!(
            ctx.out,
            "side {} ({what}): measured {}  bound {}  {}",
            c.side,
            c.measured,
            c.bound,
            if c.holds { "holds" } else { "VIOLATED" }
        );
    }
    let _ = writeln!(
        ctx.out,
        "hypothesis ρ ≤ min(2n/nZ, 2n/nX): {}",
        if r.hypothesis.holds {
            "held"
        } else {
            "not held"
        }
    );
}

/// Seeds `start, start+1, ..., start+count-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRange {
    pub start: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub quantum: CodeSpec,
    pub classical: CodeSpec,
    #[serde(default)]
    pub seeds: Option<SeedRange>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct JobFile {
    #[serde(default)]
    pub jobs: Vec<Job>,
}

/// Parses a job file; blank text means no jobs.
pub fn parse_jobs(text: &str) -> Result<JobFile, CliError> {
    if text.trim().is_empty() {
        return Ok(JobFile::default());
    }
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("job file: {e}")))
}

/// One CSV row. Every field a failure prevented is left empty and the two
/// `holds` columns carry the failure tag instead of a verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Row {
    seed: u64,
    n: Option<usize>,
    k: Option<usize>,
    d_x: Option<Distance>,
    d_z: Option<Distance>,
    locality: Option<usize>,
    rho_x: Option<Rational>,
    rho_z: Option<Rational>,
    bound_x: Option<Rational>,
    bound_z: Option<Rational>,
    holds_x: String,
    holds_z: String,
    ms: u128,
}

fn failure_tag(e: &CliError) -> &'static str {
    match e {
        CliError::Cap(_) => "cap_exceeded",
        CliError::Balance(BalanceError::DependentChecks { .. }) => "dependent_checks",
        CliError::Balance(_) => "invalid_input",
        CliError::Undefined(_) => "undefined",
        _ => "invalid_spec",
    }
}

impl Row {
    fn to_csv(&self) -> String {
        fn o<T: ToString>(v: Option<T>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        let nd = |r: Option<Rational>| (o(r.map(|r| r.num())), o(r.map(|r| r.den())));
        let (rxn, rxd) = nd(self.rho_x);
        let (rzn, rzd) = nd(self.rho_z);
        let (bxn, bxd) = nd(self.bound_x);
        let (bzn, bzd) = nd(self.bound_z);
        [
            self.seed.to_string(),
            o(self.n),
            o(self.k),
            o(self.d_x),
            o(self.d_z),
            o(self.locality),
            rxn,
            rxd,
            rzn,
            rzd,
            bxn,
            bxd,
            bzn,
            bzd,
            self.holds_x.clone(),
            self.holds_z.clone(),
            self.ms.to_string(),
        ]
        .join(",")
    }
}

fn sweep_instance(job: &Job, seed: u64, cap: u64, timing: bool) -> Row {
    let started = Instant::now();
    let mut row = Row {
        seed,
        ..Row::default()
    };
    if let Err(e) = fill_row(&mut row, job, seed, cap) {
        let tag = failure_tag(&e).to_string();
        row.holds_x.clone_from(&tag);
        row.holds_z = tag;
    }
    if timing {
        row.ms = started.elapsed().as_millis();
    }
    row
}

fn fill_row(row: &mut Row, job: &Job, seed: u64, cap: u64) -> Result<(), CliError> {
    let q = job.quantum.with_seed(seed).build_quantum()?;
    let r = job.classical.with_seed(seed).build_classical()?;
    let balanced = distance_balance(&q, &r)?;
    let code = &balanced.code;
    row.n = Some(code.n());
    row.k = Some(quantum_dimension(code));
    row.locality = Some(code.locality());
    let distances = quantum_distances(code, cap);
    if let Ok((x, z)) = distances {
        row.d_x = Some(x);
        row.d_z = Some(z);
    }
    let report = bound_check(&q, &r, None, cap)?;
    row.rho_x = Some(report.x.measured);
    row.rho_z = Some(report.z.measured);
    row.bound_x = Some(report.x.bound);
    row.bound_z = Some(report.z.bound);
    row.holds_x = report.x.holds.to_string();
    row.holds_z = report.z.holds.to_string();
    distances?;
    Ok(())
}

/// Runs every instance of every job and returns the CSV text (header
/// included). Rows follow job order, then seed order, whatever order the
/// parallel workers finish in.
pub fn sweep_csv(jobs: &JobFile, default_seed: u64, cap: u64, timing: bool) -> String {
    let instances: Vec<(&Job, u64)> = jobs
        .jobs
        .iter()
        .flat_map(|job| {
            let range = job.seeds.unwrap_or(SeedRange {
                start: default_seed,
                count: 1,
            });
            (0..range.count).map(move |i| (job, range.start + i))
        })
        .collect();
    let rows: Vec<String> = instances
        .par_iter()
        .map(|&(job, seed)| sweep_instance(job, seed, cap, timing).to_csv())
        .collect();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn cmd_sweep(
    ctx: &mut Ctx,
    job_file: &Path,
    output: Option<&Path>,
    timing: bool,
) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(job_file).map_err(|source| FormatError::Io {
        path: job_file.to_path_buf(),
        source,
    })?;
    let jobs = parse_jobs(&text)?;
    let csv = sweep_csv(&jobs, ctx.seed, ctx.cap, timing);
    match output {
        Some(path) => write_file(path, &csv)?,
        None => ctx.out.push_str(&csv),
    }
    Ok(EXIT_OK)
}

fn cmd_table(ctx: &mut Ctx, scenario: &str, inputs: &TableInputs) -> Result<i32, CliError> {
    let scenario: Scenario = scenario
        .parse()
        .map_err(|e: qltc::tables::UnknownScenario| CliError::Usage(e.to_string()))?;
    let table = param_table(scenario, inputs);
    if ctx.json {
        ctx.out
            .push_str(&serde_json::to_string(&table).expect("serialisable"));
        ctx.out.push('\n');
    } else {
        ctx.out.push_str(&table.to_markdown());
    }
    Ok(EXIT_OK)
}
