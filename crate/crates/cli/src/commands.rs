use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use csdiscord::discord::DiscordResult;
use csdiscord::format::{MatrixFile, ParamFile, StateDocument};
use csdiscord::localops::{conjugate_local, hadamard2};
use csdiscord::oracle::{discord_numeric, NumericDiscord, OracleSettings};
use csdiscord::pipeline::analytic_discord;
use csdiscord::qmat::Subsystem;
use csdiscord::states::{cs_residual, extract_x, x_residual, DensityMatrix, PATTERN_TOL};
use serde_json::{json, Value};

use crate::error::{usage, CliError, CliResult};
use crate::model::{read_document, read_state, Model, ModelArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Method {
    #[default]
    Analytic,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Measured {
    First,
    #[default]
    Second,
}

impl From<Measured> for Subsystem {
    fn from(m: Measured) -> Subsystem {
        match m {
            Measured::First => Subsystem::First,
            Measured::Second => Subsystem::Second,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct DiscordArgs {
    /// State file; shorthand for `--family file --state <PATH>`.
    pub path: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    /// Qubit measured by the oracle.
    #[arg(long, value_enum, default_value_t)]
    pub measured: Measured,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Parameter to sweep, spelled as its flag (e.g. `at`, `beta`, `alpha`).
    #[arg(long)]
    pub sweep: String,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t)]
    pub measured: Measured,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 picks the available parallelism).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug, Clone)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TransformArgs {
    pub path: PathBuf,
    /// Write the image as an X-parameter document instead of a matrix.
    #[arg(long)]
    pub params: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn write_output(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn io_err(source: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source }
}

/// Prints residuals and the structural classification; fails with the first
/// validation error after the report.
pub fn validate(path: &Path, stdout: &mut dyn Write) -> CliResult<()> {
    let doc = read_document(path)?;
    let m = doc.matrix();
    if !m.is_finite() {
        return Err(csdiscord::Error::InvalidParameter("matrix has non-finite entries".into()).into());
    }
    let herm = m.hermiticity_residual();
    let trace = m.trace();
    let min_eig = m.hermitian_part().herm_eig()?.values[0];
    let (cs, cs_at) = cs_residual(&m);
    let (x, x_at) = x_residual(&m);
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    w(stdout, format!("hermiticity residual: {herm:.3e}"))?;
    w(stdout, format!("trace: {:.16} {:+.3e}i", trace.re, trace.im))?;
    w(stdout, format!("min eigenvalue: {min_eig:.3e}"))?;
    w(stdout, format!("CS residual: {cs:.3e} at ({}, {})", cs_at.0, cs_at.1))?;
    w(stdout, format!("X residual: {x:.3e} at ({}, {})", x_at.0, x_at.1))?;
    DensityMatrix::new(m)?;
    let cs_tag = if cs <= PATTERN_TOL { "CS" } else { "not CS" };
    let x_tag = if x <= PATTERN_TOL { "X" } else { "not X" };
    w(stdout, format!("valid; {cs_tag}; {x_tag}"))
}

/// Writes the `H (x) H` image of a state file.
pub fn transform(args: &TransformArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let rho = read_state(&args.path)?;
    let h = hadamard2();
    let image = conjugate_local(&rho, &h, &h)?;
    let doc = if args.params {
        StateDocument::Params(ParamFile::X(extract_x(&image, PATTERN_TOL)?))
    } else {
        StateDocument::Matrix(MatrixFile::from_matrix(image.matrix()))
    };
    write_output(args.out.as_deref(), stdout, &(doc.to_json() + "\n"))
}

pub fn generate(args: &GenerateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let rho = Model::resolve(&args.model, None)?.state(None)?;
    let doc = StateDocument::Matrix(MatrixFile::from_matrix(rho.matrix()));
    write_output(args.out.as_deref(), stdout, &(doc.to_json() + "\n"))
}

/// Analytic and/or oracle evaluation of one state.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub analytic: Option<csdiscord::Result<DiscordResult>>,
    pub oracle: Option<csdiscord::Result<NumericDiscord>>,
}

pub fn evaluate(rho: &DensityMatrix, method: Method, measured: Measured) -> Evaluation {
    let analytic = matches!(method, Method::Analytic | Method::Both)
        .then(|| analytic_discord(rho, PATTERN_TOL).map(|a| a.result));
    let oracle = matches!(method, Method::Oracle | Method::Both).then(|| {
        let settings = OracleSettings { measured: measured.into(), ..OracleSettings::default() };
        discord_numeric(rho, &settings)
    });
    Evaluation { analytic, oracle }
}

fn error_value(e: &csdiscord::Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

/// Record printed by `discord`. With `both`, an analytic failure is reported
/// inside the record next to the oracle value.
pub fn discord_record(eval: &Evaluation, method: Method) -> CliResult<Value> {
    let mut rec = serde_json::Map::new();
    rec.insert("method".into(), json!(format!("{method:?}").to_lowercase()));
    match &eval.analytic {
        Some(Ok(r)) => {
            rec.insert("Q".into(), json!(r.q));
            rec.insert("Q1".into(), json!(r.q1));
            rec.insert("Q2".into(), json!(r.q2));
            rec.insert("branch".into(), json!(r.branch.to_string()));
            rec.insert("S".into(), json!(r.s));
            rec.insert("Sr".into(), json!(r.sr));
        }
        Some(Err(e)) if method == Method::Both => {
            rec.insert("analytic_error".into(), error_value(e));
        }
        Some(Err(e)) => {
            let hint = match e {
                csdiscord::Error::AnalyticNotApplicable(msg) => {
                    csdiscord::Error::AnalyticNotApplicable(format!("{msg}; use --method oracle"))
                }
                other => other.clone(),
            };
            return Err(hint.into());
        }
        None => {}
    }
    match &eval.oracle {
        Some(Ok(n)) => {
            if method == Method::Oracle {
                rec.insert("Q".into(), json!(n.q));
                rec.insert("S".into(), json!(n.s));
                rec.insert("Sr".into(), json!(n.sr));
            } else {
                rec.insert("Q_oracle".into(), json!(n.q));
                if let Some(Ok(r)) = &eval.analytic {
                    rec.insert("gap".into(), json!((r.q - n.q).abs()));
                }
            }
            rec.insert("mutual_information".into(), json!(n.mutual_information));
            rec.insert("classical_correlation".into(), json!(n.classical_correlation));
            rec.insert("basis".into(), json!({ "theta": n.basis.theta, "phi": n.basis.phi }));
        }
        Some(Err(e)) => return Err(e.clone().into()),
        None => {}
    }
    Ok(Value::Object(rec))
}

pub fn discord(args: &DiscordArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let mut model = args.model.clone();
    if let Some(path) = &args.path {
        if model.state.is_some() {
            return Err(usage("state file given twice"));
        }
        model.state = Some(path.clone());
    }
    let rho = Model::resolve(&model, None)?.state(None)?;
    let rec = discord_record(&evaluate(&rho, args.method, args.measured), args.method)?;
    writeln!(stdout, "{rec}").map_err(io_err)
}

fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn sweep_header(method: Method) -> &'static str {
    match method {
        Method::Both => "param,Q,Q1,Q2,branch,S,Sr,Q_oracle",
        _ => "param,Q,Q1,Q2,branch,S,Sr",
    }
}

/// One CSV row; per-point failures become `nan` with a note for stderr.
pub fn sweep_row(x: f64, state: CliResult<DensityMatrix>, method: Method, measured: Measured) -> (String, Vec<String>) {
    let nan = f64::NAN;
    let mut notes = Vec::new();
    let (analytic, oracle) = match state {
        Ok(rho) => {
            let eval = evaluate(&rho, method, measured);
            let analytic = eval.analytic.map(|r| r.map_err(CliError::from));
            let oracle = eval.oracle.map(|r| r.map_err(CliError::from));
            (analytic, oracle)
        }
        Err(e) => {
            let msg = e.to_json_line();
            notes.push(format!("param={}: {msg}", num(x)));
            (None, None)
        }
    };
    // Q, Q1, Q2, S, Sr
    let mut cols = [nan; 5];
    let mut branch = "none".to_string();
    let mut q_oracle = nan;
    if let Some(r) = analytic {
        match r {
            Ok(r) => {
                cols = [r.q, r.q1, r.q2, r.s, r.sr];
                branch = r.branch.to_string();
            }
            Err(e) => notes.push(format!("param={}: analytic: {}", num(x), e.to_json_line())),
        }
    }
    if let Some(o) = oracle {
        match o {
            Ok(n) if method == Method::Oracle => cols = [n.q, nan, nan, n.s, n.sr],
            Ok(n) => q_oracle = n.q,
            Err(e) => notes.push(format!("param={}: oracle: {}", num(x), e.to_json_line())),
        }
    }
    let mut row = format!(
        "{},{},{},{},{},{},{}",
        num(x),
        num(cols[0]),
        num(cols[1]),
        num(cols[2]),
        branch,
        num(cols[3]),
        num(cols[4])
    );
    if method == Method::Both {
        row.push(',');
        row.push_str(&num(q_oracle));
    }
    (row, notes)
}

pub fn sweep_grid(from: f64, to: f64, points: usize) -> CliResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite()) || from >= to {
        return Err(usage(format!("sweep needs finite --from < --to, got {from} and {to}")));
    }
    if points < 2 {
        return Err(usage(format!("sweep needs --points >= 2, got {points}")));
    }
    let step = (to - from) / (points - 1) as f64;
    Ok((0..points).map(|k| if k + 1 == points { to } else { from + k as f64 * step }).collect())
}

/// Runs the sweep and returns the CSV text; notes go to `stderr`.
pub fn sweep_csv(args: &SweepArgs, stderr: &mut dyn Write) -> CliResult<String> {
    let model = Model::resolve(&args.model, Some(&args.sweep))?;
    let grid = sweep_grid(args.from, args.to, args.points)?;
    let threads = match args.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    }
    .min(grid.len());
    let chunk = grid.len().div_ceil(threads);
    // Chunks are joined in order, so rows come out in grid order.
    let rows: Vec<(String, Vec<String>)> = std::thread::scope(|s| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .map(|xs| {
                let model = &model;
                s.spawn(move || {
                    xs.iter()
                        .map(|&x| sweep_row(x, model.state(Some(x)), args.method, args.measured))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut csv = String::from(sweep_header(args.method));
    csv.push('\n');
    for (row, notes) in rows {
        csv.push_str(&row);
        csv.push('\n');
        for n in notes {
            writeln!(stderr, "{n}").map_err(io_err)?;
        }
    }
    Ok(csv)
}

pub fn sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let csv = sweep_csv(args, stderr)?;
    write_output(args.out.as_deref(), stdout, &csv)
}
