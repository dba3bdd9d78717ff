//! Command implementations and report types for the `extfinite` binary.
//!
//! Every report carries `"schema": 1` and round-trips through JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use extfinite::chebyshev::{
    cheb_matrix_seq, cheb_poly, detect_periodicity, eigenvalue_row_table,
    Periodicity,
};
use extfinite::dynamics::{apply_x, extfinite_verdict, DimVector, FamilyTag, Verdict};
use extfinite::exactnum::{format_rational, parse_rational, parse_ratfun};
use extfinite::linalg::IntPolynomial;
use extfinite::modcat::{
    c_module_parameter, dim_vector, ext_dim, ext_dim_oracle, induce, make_c_module,
    make_dnak_algebra, make_qext_algebra, syzygy, AlgebraRef, ModuleRep,
};
use extfinite::verify::{run_suite, Suite, SuiteReport, DEFAULT_SEED};
use extfinite::{Error, ExactMatrix, RatFun, Rational};

pub const SCHEMA: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const HYPOTHESIS: i32 = 3;
    pub const INCONSISTENT: i32 = 4;
    pub const CHECK_FAILED: i32 = 5;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: exit::INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSymmetric
            | Error::NegativeEntry
            | Error::Reducible
            | Error::LeftModuleCone { .. }
            | Error::HasSummands => exit::HYPOTHESIS,
            _ => exit::INPUT,
        };
        let message = match code {
            exit::HYPOTHESIS => format!("hypothesis violated: {e}"),
            _ => e.to_string(),
        };
        CliError { code, message }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "extfinite", version, about = "Ext-finite modules over radical cube zero algebras")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Qext,
    Dnak,
    Other,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectral class of E and the existence verdict.
    Classify(ClassifyArgs),
    /// Syzygy orbit of C(lambda), its induction, or a simple module.
    Orbit(OrbitArgs),
    /// dim Ext^k(M, N) from both engines.
    ExtTable(ExtTableArgs),
    /// Run a self-check suite.
    Verify(VerifyArgs),
    /// Chebyshev polynomials, row tables and matrix sequences.
    Cheb(ChebArgs),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// JSON file holding E, either `{"rows", "cols", "entries"}` or a nested array.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value = "q")]
    pub lambda: String,
    /// Start from the simple module at vertex 0.
    #[arg(long)]
    pub simple: bool,
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
}

#[derive(Args, Debug)]
pub struct ExtTableArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Qext)]
    pub family: FamilyArg,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value = "q")]
    pub lambda: String,
    /// Parameter of the second argument; defaults to `--lambda`.
    #[arg(long)]
    pub target_lambda: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub max_k: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ChebArgs {
    /// Print f_k.
    #[arg(long)]
    pub poly: Option<usize>,
    /// Comma-separated eigenvalues for a row table.
    #[arg(long, allow_hyphen_values = true)]
    pub rows: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub from: usize,
    #[arg(long, default_value_t = 12)]
    pub to: usize,
    /// JSON matrix file; `path` or `path<k>` builds the path adjacency matrix.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub detect_period: bool,
    /// Number of terms f_0(E), ..., f_depth(E) to report.
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, default_value_t = 32)]
    pub period_bound: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub source: String,
    pub e: ExactMatrix,
    pub verdict: Verdict,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitStep {
    pub m: usize,
    pub dim: usize,
    pub dim_vector: DimVector,
    pub parameter: Option<String>,
    /// `dim_vector = X dim_vector(previous)`; absent at `m = 0`.
    pub x_check: Option<bool>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub schema: u32,
    pub family: FamilyArg,
    pub rank: Option<usize>,
    pub start: String,
    pub steps: Vec<OrbitStep>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtRow {
    pub k: usize,
    pub primary: usize,
    pub oracle: usize,
    pub agree: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtTableReport {
    pub schema: u32,
    pub family: FamilyArg,
    pub rank: Option<usize>,
    pub source: String,
    pub target: String,
    pub rows: Vec<ExtRow>,
    pub consistent: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolyReport {
    pub k: usize,
    pub coefficients: IntPolynomial,
    pub display: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RowTableReport {
    pub eigenvalues: Vec<String>,
    pub from: usize,
    pub to: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MatrixSeqReport {
    pub e: ExactMatrix,
    pub terms: Vec<ExactMatrix>,
    pub period_searched: bool,
    pub periodicity: Option<Periodicity>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ChebReport {
    pub schema: u32,
    pub poly: Option<PolyReport>,
    pub rows: Option<RowTableReport>,
    pub matrix: Option<MatrixSeqReport>,
}

/// Any command's report.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Classify(ClassificationReport),
    Orbit(OrbitReport),
    ExtTable(ExtTableReport),
    Verify(SuiteReport),
    Cheb(ChebReport),
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Orbit(r) if r.steps.iter().any(|s| s.x_check == Some(false)) => {
                exit::INCONSISTENT
            }
            Report::ExtTable(r) if !r.consistent => exit::INCONSISTENT,
            Report::Verify(r) if !r.passed => exit::CHECK_FAILED,
            _ => exit::OK,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Classify(r) => {
                let v = &r.verdict;
                let _ = writeln!(out, "source: {}", r.source);
                let _ = writeln!(out, "E = {}", r.e);
                let _ = writeln!(out, "class: {}", v.spectral.class);
                let _ = writeln!(out, "conclusion: {}", v.conclusion);
                for line in &v.evidence {
                    let _ = writeln!(out, "  {line}");
                }
            }
            Report::Orbit(r) => {
                let _ = writeln!(out, "start: {}", r.start);
                for s in &r.steps {
                    let _ = write!(out, "m={} dim={} dimvec={}", s.m, s.dim, s.dim_vector);
                    if let Some(p) = &s.parameter {
                        let _ = write!(out, " lambda={p}");
                    }
                    if let Some(c) = s.x_check {
                        let _ = write!(out, " x_check={}", if c { "ok" } else { "FAILED" });
                    }
                    out.push('\n');
                }
            }
            Report::ExtTable(r) => {
                let _ = writeln!(out, "Ext^k({}, {})", r.source, r.target);
                let _ = writeln!(out, "k\tprimary\toracle");
                for row in &r.rows {
                    let flag = if row.agree { "" } else { "\tDISAGREE" };
                    let _ = writeln!(out, "{}\t{}\t{}{flag}", row.k, row.primary, row.oracle);
                }
            }
            Report::Verify(r) => {
                for c in &r.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{status} {} ({} ms): {}", c.id, c.millis, c.detail);
                }
                let total = r.checks.len();
                let ok = r.checks.iter().filter(|c| c.passed).count();
                let _ = writeln!(
                    out,
                    "suite {} seed {}: {ok}/{total} passed in {} ms",
                    r.suite, r.seed, r.total_millis
                );
            }
            Report::Cheb(r) => {
                if let Some(p) = &r.poly {
                    let _ = writeln!(out, "f_{} = {}", p.k, p.display);
                }
                if let Some(t) = &r.rows {
                    let _ = writeln!(out, "rows {}..{} for ({})", t.from, t.to, t.eigenvalues.join(", "));
                    for row in &t.rows {
                        let _ = writeln!(out, "{}", row.join("\t"));
                    }
                }
                if let Some(m) = &r.matrix {
                    let _ = writeln!(out, "E = {}", m.e);
                    for (k, t) in m.terms.iter().enumerate() {
                        let _ = writeln!(out, "f_{k}(E) = {t}");
                    }
                    if m.period_searched {
                        match &m.periodicity {
                            Some(p) => {
                                let _ = writeln!(out, "period {} after {} terms", p.period, p.preperiod);
                            }
                            None => {
                                let _ = writeln!(out, "period: none");
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

fn parse_lambda(s: &str) -> CliResult<RatFun> {
    parse_ratfun(s).map_err(|e| CliError::input(format!("bad parameter '{s}': {e}")))
}

fn cycle(r: usize) -> ExactMatrix {
    let mut rows = vec![vec![0i64; r]; r];
    for (i, row) in rows.iter_mut().enumerate() {
        row[(i + 1) % r] += 1;
        row[(i + r - 1) % r] += 1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ExactMatrix::from_ints(&refs)
}

fn path(k: usize) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i.abs_diff(j) == 1)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ExactMatrix::from_ints(&refs)
}

fn need_rank(rank: Option<usize>) -> CliResult<usize> {
    let r = rank.ok_or_else(|| CliError::input("--family dnak needs --rank"))?;
    if r < 2 {
        return Err(Error::RankTooSmall(r).into());
    }
    Ok(r)
}

/// Reads E from JSON: the wire form or a nested array of integers/strings.
pub fn read_matrix(path: &Path) -> CliResult<ExactMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|m| CliError::input(format!("{}: {m}", path.display())))
}

pub fn parse_matrix(text: &str) -> std::result::Result<ExactMatrix, String> {
    if let Ok(m) = serde_json::from_str::<ExactMatrix>(text) {
        return Ok(m);
    }
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(text).map_err(|e| format!("malformed matrix: {e}"))?;
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if n == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err("malformed matrix: rows of unequal length or empty".into());
    }
    let wire = serde_json::json!({ "rows": n, "cols": cols, "entries": rows });
    serde_json::from_value::<ExactMatrix>(wire).map_err(|e| format!("malformed matrix: {e}"))
}

pub fn cmd_classify(a: &ClassifyArgs) -> CliResult<ClassificationReport> {
    let tag = |f: FamilyArg| match f {
        FamilyArg::Qext => FamilyTag::QExterior,
        FamilyArg::Dnak => FamilyTag::DoubleNakayama,
        FamilyArg::Other => FamilyTag::Other,
    };
    let (source, e) = match (&a.matrix, a.family) {
        (Some(p), _) => (p.display().to_string(), read_matrix(p)?),
        (None, Some(FamilyArg::Qext)) => ("q-exterior algebra".to_string(), ExactMatrix::from_ints(&[&[2]])),
        (None, Some(FamilyArg::Dnak)) => {
            let r = need_rank(a.rank)?;
            (format!("Double Nakayama algebra A(q^-{r})"), cycle(r))
        }
        (None, _) => return Err(CliError::input("classify needs --matrix or --family qext|dnak")),
    };
    // The deformation parameter q of both families is transcendental.
    let family = a.family.map(tag);
    let generic = match family {
        Some(FamilyTag::QExterior | FamilyTag::DoubleNakayama) => Some(true),
        _ => None,
    };
    let verdict = extfinite_verdict(&e, family, generic)?;
    Ok(ClassificationReport {
        schema: SCHEMA,
        source,
        e,
        verdict,
    })
}

fn start_module(
    family: FamilyArg,
    rank: Option<usize>,
    lam: &RatFun,
) -> CliResult<(ModuleRep, String)> {
    let qext: AlgebraRef = Arc::new(make_qext_algebra());
    let c = make_c_module(&qext, lam)?;
    match family {
        FamilyArg::Qext => Ok((c, format!("C({lam})"))),
        FamilyArg::Dnak => {
            let r = need_rank(rank)?;
            Ok((induce(&c, r)?, format!("A(q^-{r}) (x) C({lam})")))
        }
        FamilyArg::Other => Err(CliError::input("modules are built for --family qext or dnak")),
    }
}

pub fn cmd_orbit(a: &OrbitArgs) -> CliResult<OrbitReport> {
    if a.steps == 0 {
        return Err(CliError::input("--steps must be at least 1"));
    }
    let (mut m, start) = if a.simple {
        let alg: AlgebraRef = match a.family {
            FamilyArg::Qext => Arc::new(make_qext_algebra()),
            FamilyArg::Dnak => Arc::new(make_dnak_algebra(need_rank(a.rank)?)?),
            FamilyArg::Other => return Err(CliError::input("--simple needs --family qext or dnak")),
        };
        (ModuleRep::simple(alg, 0), "S_0".to_string())
    } else {
        start_module(a.family, a.rank, &parse_lambda(&a.lambda)?)?
    };
    let e = m.algebra().e_matrix();
    let mut steps: Vec<OrbitStep> = Vec::new();
    for k in 0..=a.steps {
        if k > 0 {
            m = syzygy(&m, false)?;
        }
        let v = dim_vector(&m, true)?;
        let x_check = match steps.last() {
            Some(prev) => Some(apply_x(&e, &prev.dim_vector)? == v),
            None => None,
        };
        steps.push(OrbitStep {
            m: k,
            dim: m.dim(),
            dim_vector: v,
            parameter: c_module_parameter(&m).map(|p| p.to_string()),
            x_check,
        });
    }
    Ok(OrbitReport {
        schema: SCHEMA,
        family: a.family,
        rank: a.rank.filter(|_| a.family == FamilyArg::Dnak),
        start,
        steps,
    })
}

pub fn cmd_ext_table(a: &ExtTableArgs) -> CliResult<ExtTableReport> {
    if a.max_k == 0 {
        return Err(CliError::input("--max-k must be at least 1"));
    }
    let lam = parse_lambda(&a.lambda)?;
    let target = match &a.target_lambda {
        Some(t) => parse_lambda(t)?,
        None => lam.clone(),
    };
    let (m, source) = start_module(a.family, a.rank, &lam)?;
    let (n, target) = start_module(a.family, a.rank, &target)?;
    let mut rows = Vec::new();
    for k in 1..=a.max_k {
        let primary = ext_dim(&m, &n, k)?;
        let oracle = ext_dim_oracle(&m, &n, k)?;
        rows.push(ExtRow {
            k,
            primary,
            oracle,
            agree: primary == oracle,
        });
    }
    Ok(ExtTableReport {
        schema: SCHEMA,
        family: a.family,
        rank: a.rank.filter(|_| a.family == FamilyArg::Dnak),
        source,
        target,
        consistent: rows.iter().all(|r| r.agree),
        rows,
    })
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<SuiteReport> {
    let suite: Suite = a.suite.parse()?;
    Ok(run_suite(suite, a.seed))
}

fn matrix_arg(spec: &str) -> CliResult<ExactMatrix> {
    if let Some(rest) = spec.strip_prefix("path") {
        if rest.is_empty() {
            return Ok(path(4));
        }
        if let Ok(k) = rest.parse::<usize>() {
            if k == 0 {
                return Err(CliError::input("path size must be positive"));
            }
            return Ok(path(k));
        }
    }
    read_matrix(Path::new(spec))
}

pub fn cmd_cheb(a: &ChebArgs) -> CliResult<ChebReport> {
    if a.poly.is_none() && a.rows.is_none() && a.matrix.is_none() {
        return Err(CliError::input("cheb needs --poly, --rows or --matrix"));
    }
    let poly = a.poly.map(|k| {
        let p = cheb_poly(k);
        PolyReport {
            k,
            display: p.to_string(),
            coefficients: p,
        }
    });
    let rows = match &a.rows {
        Some(text) => {
            let mus = text
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<extfinite::Result<Vec<Rational>>>()?;
            let table = eigenvalue_row_table(&mus, a.from, a.to)?;
            Some(RowTableReport {
                eigenvalues: mus.iter().map(format_rational).collect(),
                from: a.from,
                to: a.to,
                rows: table
                    .iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect(),
            })
        }
        None => None,
    };
    let matrix = match &a.matrix {
        Some(spec) => {
            let e = matrix_arg(spec)?;
            let seq = cheb_matrix_seq(&e, a.depth)?;
            let periodicity = if a.detect_period {
                detect_periodicity(&e, a.period_bound)?
            } else {
                None
            };
            Some(MatrixSeqReport {
                terms: (0..=a.depth as i64).map(|k| seq.get(k)).collect(),
                e,
                period_searched: a.detect_period,
                periodicity,
            })
        }
        None => None,
    };
    Ok(ChebReport {
        schema: SCHEMA,
        poly,
        rows,
        matrix,
    })
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    Ok(match &cli.command {
        Command::Classify(a) => Report::Classify(cmd_classify(a)?),
        Command::Orbit(a) => Report::Orbit(cmd_orbit(a)?),
        Command::ExtTable(a) => Report::ExtTable(cmd_ext_table(a)?),
        Command::Verify(a) => Report::Verify(cmd_verify(a)?),
        Command::Cheb(a) => Report::Cheb(cmd_cheb(a)?),
    })
}

/// Runs the command, writes the report and returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &text)
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(m) = written {
        eprintln!("error: {m}");
        return exit::INPUT;
    }
    report.exit_code()
}
