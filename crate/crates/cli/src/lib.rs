//! Command-line front end for the exact trigonometry engine.
//!
//! Subcommands mirror the library's layers: `derive` prints how formula
//! families are read off scaled unit triangles, `prove` checks identity
//! certificates in the free ring, `solve` works concrete problems in
//! exact radicals, `eval` evaluates radical expressions, and `render`
//! draws a registered figure as SVG. Every command takes `--json` for
//! structured, byte-stable output.
//!
//! Exit codes: 0 on success, 1 when a proof or solve legitimately fails,
//! 2 for usage and syntax errors.

pub mod json;
pub mod parse;
pub mod svg;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use gasing_core::construction::ConstructionError;
use gasing_core::derive::{
    cofunction, cosine_rule, derived_functions, difference_formulas, double_angle, sine_rule,
    sum_formulas, DeriveError, FnKind,
};
use gasing_core::figures;
use gasing_core::proofs::{self, ProofCertificate, ProofError};
use gasing_core::solver::{self, Solution, SolverError};

use json::TraceDocument;
use parse::{parse_exact, ParseError};

// ======================================================================
// Command grammar
// ======================================================================

#[derive(Parser)]
#[command(
    name = "gasing",
    version,
    about = "Exact unit-triangle trigonometry: derive, prove, solve, render"
)]
struct Cli {
    /// Emit structured JSON instead of prose.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a derivation trace for a formula family.
    ///
    /// Topics: functions, sum, difference, double, cofunction,
    /// sine-rule, cosine-rule.
    Derive { topic: String },
    /// Verify an identity certificate (a named target or "all").
    ///
    /// Targets: main, alt, tangent-squared, cotangent-squared, the
    /// eight dissection cases (see `gasing list`), or "all".
    Prove { target: String },
    /// Solve a concrete problem in exact radical arithmetic.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Evaluate an exact radical expression, e.g. "sin(30deg)^2 + 1/2".
    Eval { expr: String },
    /// Render a registered figure as SVG.
    Render {
        figure: String,
        /// Bind a free symbol, e.g. --at a=30deg or --at u=2.
        /// Unbound symbols take a mid-range value valid for the figure.
        #[arg(long = "at", value_name = "NAME=VALUE")]
        at: Vec<String>,
        /// Write the SVG to a file instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List figures, proof targets, derivation topics, and solve forms.
    List,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Given one function of an angle, read off another: ratio sin 1/2 cos
    Ratio {
        given: String,
        value: String,
        want: String,
    },
    /// Two angles and the side opposite the first: triangle 30 45 6
    Triangle {
        left: u32,
        right: u32,
        side: String,
    },
    /// Two sides enclosing an obtuse angle: enclosed 8 6 120
    Enclosed {
        near: String,
        far: String,
        degrees: u32,
    },
    /// A pole on a wall seen under two angles: sightlines 12 45 30
    Sightlines {
        pole: String,
        upper: u32,
        lower: u32,
    },
    /// Solve all five showcase problems.
    Showcase,
}

// ======================================================================
// Errors and exit codes
// ======================================================================

#[derive(Debug, Error)]
enum CliError {
    #[error("unknown derivation topic {0:?} (try `gasing list`)")]
    UnknownTopic(String),
    #[error("unknown figure {0:?} (try `gasing list`)")]
    UnknownFigure(String),
    #[error("unknown function {0:?} (expected sin, cos, tan, cot, sec, or csc)")]
    UnknownFnKind(String),
    #[error("binding {0:?} is not of the form NAME=VALUE")]
    MalformedBinding(String),
    #[error("figure has no free symbol {name:?} (free symbols: {available})")]
    UnknownBinding { name: String, available: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input the caller should rephrase, 1 for legitimate
    /// mathematical failure.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownTopic(_)
            | CliError::UnknownFigure(_)
            | CliError::UnknownFnKind(_)
            | CliError::MalformedBinding(_)
            | CliError::UnknownBinding { .. }
            | CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}

/// Run the CLI against explicit arguments; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(Outcome { output, verified }) => {
            print!("{output}");
            if verified {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug)]
struct Outcome {
    output: String,
    /// False when a requested proof target failed verification.
    verified: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            verified: true,
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Derive { topic } => derive_command(topic, cli.json),
        Command::Prove { target } => prove_command(target, cli.json),
        Command::Solve(cmd) => solve_command(cmd, cli.json),
        Command::Eval { expr } => eval_command(expr, cli.json),
        Command::Render { figure, at, out } => render_command(figure, at, out.as_deref()),
        Command::List => Ok(Outcome::ok(list_text())),
    }
}

// ======================================================================
// derive
// ======================================================================

fn derive_command(topic: &str, as_json: bool) -> Result<Outcome, CliError> {
    let operation = format!("derive {topic}");
    let doc = match topic {
        "functions" => {
            let d = derived_functions()?;
            TraceDocument::for_formulas(&operation, &d.formulas, &d.trace, &[])
        }
        "sum" => {
            let d = sum_formulas()?;
            TraceDocument::for_formulas(
                &operation,
                &[d.sin, d.cos],
                &d.trace,
                &d.figure_conditions,
            )
        }
        "difference" => {
            let d = difference_formulas()?;
            TraceDocument::for_formulas(
                &operation,
                &[d.sin, d.cos],
                &d.trace,
                &d.figure_conditions,
            )
        }
        "double" => {
            let d = double_angle()?;
            TraceDocument::for_formulas(
                &operation,
                &[d.sin, d.cos, d.cos_from_cos_only, d.cos_from_sin_only],
                &d.trace,
                &[],
            )
        }
        "cofunction" => {
            let d = cofunction()?;
            TraceDocument::for_formulas(&operation, &d.formulas, &d.trace, &[])
        }
        "sine-rule" => TraceDocument::for_law(&operation, &sine_rule()?),
        "cosine-rule" => TraceDocument::for_law(&operation, &cosine_rule()?),
        other => return Err(CliError::UnknownTopic(other.to_string())),
    };
    if as_json {
        return Ok(Outcome::ok(json::render_documents(&[doc])));
    }
    Ok(Outcome::ok(document_text(&doc)))
}

/// Prose rendering shared by derive/solve/eval output.
fn document_text(doc: &TraceDocument) -> String {
    let mut out = String::new();
    out.push_str(&doc.operation);
    out.push('\n');
    if let Some(claim) = &doc.claim {
        out.push_str(&format!("claim: {claim}\n"));
    }
    for (i, step) in doc.steps.iter().enumerate() {
        out.push_str(&format!("  {}. [{}] {}\n", i + 1, step.rule, step.description));
        out.push_str(&format!("       {} = {}\n", step.lhs, step.rhs));
    }
    if !doc.results.is_empty() {
        out.push_str("results:\n");
        for r in &doc.results {
            out.push_str(&format!("  {r}\n"));
        }
    }
    if !doc.side_conditions.is_empty() {
        out.push_str(&format!(
            "valid when: {}\n",
            doc.side_conditions.join(", ")
        ));
    }
    if let Some(verdict) = &doc.verdict {
        out.push_str(&format!("verdict: {verdict}\n"));
    }
    out
}

// ======================================================================
// prove
// ======================================================================

fn prove_command(target: &str, as_json: bool) -> Result<Outcome, CliError> {
    let certs: Vec<ProofCertificate> = if target == "all" {
        proofs::prove_all()?
    } else {
        vec![proofs::prove_target(target)?]
    };
    let verified = certs.iter().all(|c| c.verdict.is_verified());
    if as_json {
        let docs: Vec<TraceDocument> = certs.iter().map(TraceDocument::for_certificate).collect();
        return Ok(Outcome {
            output: json::render_documents(&docs),
            verified,
        });
    }
    let mut out = String::new();
    for cert in &certs {
        out.push_str(&format!("{cert}\n\n"));
    }
    let passed = certs.iter().filter(|c| c.verdict.is_verified()).count();
    out.push_str(&format!("{passed}/{} certificates verified\n", certs.len()));
    Ok(Outcome {
        output: out,
        verified,
    })
}

// ======================================================================
// solve
// ======================================================================

fn fn_kind(name: &str) -> Result<FnKind, CliError> {
    match name {
        "sin" => Ok(FnKind::Sin),
        "cos" => Ok(FnKind::Cos),
        "tan" => Ok(FnKind::Tan),
        "cot" => Ok(FnKind::Cot),
        "sec" => Ok(FnKind::Sec),
        "csc" => Ok(FnKind::Csc),
        other => Err(CliError::UnknownFnKind(other.to_string())),
    }
}

fn solve_command(cmd: &SolveCmd, as_json: bool) -> Result<Outcome, CliError> {
    let solutions: Vec<Solution> = match cmd {
        SolveCmd::Ratio { given, value, want } => vec![solver::solve_ratio(
            fn_kind(given)?,
            &parse_exact(value)?,
            fn_kind(want)?,
        )?],
        SolveCmd::Triangle { left, right, side } => vec![solver::solve_asa_shared_altitude(
            *left,
            *right,
            &parse_exact(side)?,
        )?],
        SolveCmd::Enclosed { near, far, degrees } => vec![solver::solve_sas_obtuse(
            &parse_exact(near)?,
            &parse_exact(far)?,
            *degrees,
        )?],
        SolveCmd::Sightlines { pole, upper, lower } => vec![solver::solve_two_sightlines(
            &parse_exact(pole)?,
            *upper,
            *lower,
        )?],
        SolveCmd::Showcase => solver::showcase()?,
    };
    if as_json {
        let docs: Vec<TraceDocument> = solutions.iter().map(TraceDocument::for_solution).collect();
        return Ok(Outcome::ok(json::render_documents(&docs)));
    }
    let mut out = String::new();
    for sol in &solutions {
        out.push_str(&format!("{sol}\n\n"));
    }
    out.pop();
    Ok(Outcome::ok(out))
}

// ======================================================================
// eval
// ======================================================================

fn eval_command(expr: &str, as_json: bool) -> Result<Outcome, CliError> {
    let value = parse_exact(expr)?;
    if as_json {
        let doc = TraceDocument {
            operation: format!("eval {expr}"),
            claim: None,
            steps: Vec::new(),
            results: vec![value.to_string(), format!("~ {}", value.to_float())],
            side_conditions: Vec::new(),
            verdict: None,
            cofactors: None,
        };
        return Ok(Outcome::ok(json::render_documents(&[doc])));
    }
    Ok(Outcome::ok(format!("{value} ~ {}\n", value.to_float())))
}

// ======================================================================
// render
// ======================================================================

fn render_command(
    figure: &str,
    bindings: &[String],
    out_path: Option<&std::path::Path>,
) -> Result<Outcome, CliError> {
    let entry =
        figures::by_name(figure).ok_or_else(|| CliError::UnknownFigure(figure.to_string()))?;
    // Mid-range defaults from the figure's own sampler, so every free
    // symbol the caller leaves unbound still yields a valid layout.
    let mut asg = entry.sample(&vec![0.5; entry.free.len()]);
    for binding in bindings {
        let (name, value) = binding
            .split_once('=')
            .ok_or_else(|| CliError::MalformedBinding(binding.clone()))?;
        let free = entry
            .free
            .iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| CliError::UnknownBinding {
                name: name.to_string(),
                available: entry
                    .free
                    .iter()
                    .map(|f| f.name())
                    .collect::<Vec<_>>()
                    .join(", "),
            })?;
        let numeric = bound_value(value)?;
        match free {
            figures::FreeVar::Angle(n) => {
                asg.angles.insert((*n).to_string(), numeric);
            }
            figures::FreeVar::Length(n) => {
                asg.lengths.insert((*n).to_string(), numeric);
            }
        }
    }
    entry
        .augment(&mut asg)
        .map_err(|e| CliError::Solver(SolverError::Expr(e)))?;
    let svg = svg::render(entry.name, &(entry.build)(), &asg)?;
    if let Some(path) = out_path {
        std::fs::write(path, &svg)?;
        return Ok(Outcome::ok(format!("wrote {}\n", path.display())));
    }
    Ok(Outcome::ok(svg))
}

/// A binding value: `30deg`, a float like `0.62`, or an exact
/// expression like `1/2` (angles are radians unless suffixed `deg`).
fn bound_value(text: &str) -> Result<f64, CliError> {
    if let Some(deg) = text.strip_suffix("deg") {
        if let Ok(d) = deg.trim().parse::<f64>() {
            return Ok(d.to_radians());
        }
    }
    if let Ok(x) = text.parse::<f64>() {
        return Ok(x);
    }
    Ok(parse_exact(text)?.to_float())
}

// ======================================================================
// list
// ======================================================================

fn list_text() -> String {
    let mut out = String::new();
    out.push_str("figures (render <name>):\n");
    for entry in figures::all() {
        let free: Vec<&str> = entry.free.iter().map(|f| f.name()).collect();
        out.push_str(&format!(
            "  {:<17} {} (free: {})\n",
            entry.name,
            entry.summary,
            if free.is_empty() {
                "none".to_string()
            } else {
                free.join(", ")
            }
        ));
    }
    out.push_str("\nproof targets (prove <name>):\n");
    out.push_str("  main alt tangent-squared cotangent-squared all\n");
    out.push_str(&format!("  {}\n", proofs::CASE_NAMES.join(" ")));
    out.push_str("\nderivation topics (derive <topic>):\n");
    out.push_str("  functions sum difference double cofunction sine-rule cosine-rule\n");
    out.push_str("\nsolve forms:\n");
    out.push_str("  solve ratio <fn> <value> <fn>      solve triangle <left> <right> <side>\n");
    out.push_str("  solve enclosed <near> <far> <deg>  solve sightlines <pole> <upper> <lower>\n");
    out.push_str("  solve showcase\n");
    out
}

// ======================================================================
// Tests
// ======================================================================
