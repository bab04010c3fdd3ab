//! Command-line front end.
//!
//! Exit status: 0 when every check of the selected subcommand passed, 1 on a
//! failed check, 2 on usage, configuration or fixture errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::equations::{
    assemble_harmonic_boundary, check_paper_table, load_fixture, parse_table, render_types_text, solve_system,
    system_to_json, table_to_json, types_report_to_json, Family, LinearSystem, SolutionTable, TableMismatch,
    BUILTIN_FIXTURE,
};
use crate::expansions::ExpansionTerms;
use crate::metric::{symbolic_h, validate_h};
use crate::quadrature::{flux_identity_check, integral_constants, sphere_integral_q, QuadratureResult};
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "ale-expansion", version, about = "Asymptotic constants of harmonic forms on 4-dimensional ALE spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML file with defaults for the options below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Equation families, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub families: Vec<Family>,
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Quadrature tolerance, in (0, 1e-2].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// `appendixG` (embedded) or a path to a table file.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check trace, divergence, harmonicity and decay of h.
    VerifyMetric,
    /// Evaluate the 16 harmonic-function boundary integrals.
    ReproduceBoundary,
    /// Assemble the linear system.
    Assemble,
    /// Solve the linear system and emit the constants table.
    Solve,
    /// Compare a reference table with the assembled system.
    CheckTable,
    /// Numeric identity suite.
    Quadrature,
    /// Render a table grouped by symmetry type.
    Emit {
        /// Table file to render; solved from --families when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

/// Optional defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub families: Option<Vec<String>>,
    pub format: Option<OutputFormat>,
    pub tol: Option<f64>,
    pub fixture: Option<String>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub families: Vec<Family>,
    pub format: OutputFormat,
    pub tol: f64,
    pub fixture: String,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            families: Family::RESTRICTION.to_vec(),
            format: OutputFormat::Text,
            tol: 1e-8,
            fixture: BUILTIN_FIXTURE.to_string(),
            out: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

impl RunConfig {
    /// Merges flags over the config file over the defaults and validates.
    pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
        let file = match &cli.config {
            Some(p) => {
                let src = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                toml::from_str::<FileConfig>(&src).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        let mut cfg = RunConfig::default();
        if let Some(fs) = file.families {
            cfg.families = fs
                .iter()
                .map(|s| Family::from_name(s).ok_or_else(|| CliError::Config(format!("unknown family `{s}`"))))
                .collect::<Result<_, _>>()?;
        }
        if !cli.families.is_empty() {
            cfg.families = cli.families.clone();
        }
        cfg.families.sort();
        cfg.families.dedup();
        cfg.format = cli.format.or(file.format).unwrap_or(cfg.format);
        cfg.tol = cli.tol.or(file.tol).unwrap_or(cfg.tol);
        cfg.fixture = cli.fixture.clone().or(file.fixture).unwrap_or(cfg.fixture);
        cfg.out = cli.out.clone().or(file.out);
        if cfg.families.is_empty() {
            return Err(CliError::Config("no equation families selected".into()));
        }
        if !(cfg.tol > 0.0 && cfg.tol <= 1e-2) {
            return Err(CliError::Config(format!("tolerance {} outside (0, 1e-2]", cfg.tol)));
        }
        Ok(cfg)
    }
}

/// What a subcommand produced.
pub struct Outcome {
    pub ok: bool,
    pub document: String,
    pub failures: Vec<String>,
}

fn outcome(cfg: &RunConfig, ok: bool, text: String, structured: serde_json::Value, failures: Vec<String>) -> Outcome {
    let document = match cfg.format {
        OutputFormat::Text => text,
        OutputFormat::Structured => {
            let mut v = structured;
            v["ok"] = json!(ok);
            v["failures"] = json!(failures);
            let mut s = serde_json::to_string_pretty(&v).expect("JSON value");
            s.push('\n');
            s
        }
    };
    Outcome { ok, document, failures }
}

fn build_system(families: &[Family]) -> Result<LinearSystem<Rational>, CliError> {
    let terms = ExpansionTerms::symbolic();
    LinearSystem::assemble(&terms, families).map_err(|e| CliError::Failed(e.to_string()))
}

fn solve(families: &[Family]) -> Result<SolutionTable<Rational>, CliError> {
    solve_system(&build_system(families)?).map_err(|e| CliError::Failed(e.to_string()))
}

fn verify_metric(cfg: &RunConfig) -> Outcome {
    match validate_h(&symbolic_h::<Rational>()) {
        Ok(report) => outcome(
            cfg,
            true,
            format!("{report}\n"),
            json!({"trace": 0, "divergence": 0, "harmonic": 0, "degree": -4}),
            vec![],
        ),
        Err(e) => outcome(cfg, false, format!("FAILED: {e}\n"), json!({}), vec![e.to_string()]),
    }
}

fn reproduce_boundary(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let terms = ExpansionTerms::<Rational>::symbolic();
    let ints = assemble_harmonic_boundary(&terms).map_err(|e| CliError::Failed(e.to_string()))?;
    let mut text = String::new();
    let mut rows = serde_json::Map::new();
    let mut failures = Vec::new();
    for ((i, j), v) in &ints {
        let name = format!("Int[{},{}]", i + 1, j + 1);
        let _ = writeln!(text, "{name} = {v}");
        rows.insert(name.clone(), json!(v.to_string()));
        if !v.is_zero() {
            failures.push(format!("{name} = {v}"));
        }
    }
    let ok = failures.is_empty();
    if ok {
        let _ = writeln!(text, "all 16 integrals vanish (c1 and c2 coefficients separately)");
        let _ = writeln!(text, "C_ij = 0 for i != j; C_ii carries only the renormalized-volume constant CVol");
    }
    Ok(outcome(cfg, ok, text, json!({"integrals": rows}), failures))
}

fn assemble(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sys = build_system(&cfg.families)?;
    let document = match cfg.format {
        OutputFormat::Structured => system_to_json(&sys),
        OutputFormat::Text => {
            let mut s = String::new();
            for e in &sys.equations {
                let _ = writeln!(s, "[{}] {}: {} = 0", e.family, e.label, e.expr);
            }
            let _ = writeln!(s, "{} equations", sys.len());
            s
        }
    };
    Ok(Outcome { ok: true, document, failures: vec![] })
}

fn solve_cmd(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let t = solve(&cfg.families)?;
    let document = match cfg.format {
        OutputFormat::Structured => table_to_json(&t),
        OutputFormat::Text => {
            let mut s = String::new();
            for (c, e) in &t.entries {
                if t.free.contains(c) {
                    let _ = writeln!(s, "{c} free");
                } else {
                    let _ = writeln!(s, "{c} = {}", if e.is_zero() { "0".into() } else { e.to_string() });
                }
            }
            let _ = writeln!(s, "free unknowns: {}", t.free.len());
            s
        }
    };
    Ok(Outcome { ok: true, document, failures: vec![] })
}

fn check_table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fixture = load_fixture::<Rational>(&cfg.fixture).map_err(|e| CliError::Fixture(e.to_string()))?;
    let sys = build_system(&cfg.families)?;
    let (ok, check) = match check_paper_table(&fixture, &sys) {
        Ok(c) => (true, c),
        Err(TableMismatch::Mismatch(c)) => (false, c),
        Err(e @ TableMismatch::Inconsistent(_)) => return Err(CliError::Failed(e.to_string())),
    };
    let failures: Vec<String> = check
        .not_implied
        .iter()
        .map(|c| format!("relation {c} not implied"))
        .chain(check.unsatisfied.iter().map(|(f, l)| format!("{f} equation {l} violated")))
        .collect();
    let per_family: serde_json::Map<String, serde_json::Value> =
        check.per_family.iter().map(|(f, n)| (f.name().to_string(), json!(n))).collect();
    let structured = json!({
        "not_implied": check.not_implied.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "violated_per_family": per_family,
        "table_free": check.table_free,
        "solved_free": check.solved_free,
    });
    Ok(outcome(cfg, ok, format!("{check}\n"), structured, failures))
}

fn quadrature(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let tol = cfg.tol;
    let qtol = tol * 1e-2;
    let fail = |e: crate::quadrature::QuadratureError| CliError::Failed(e.to_string());
    let c = integral_constants::<f64>(qtol).map_err(fail)?;
    let v: Vec<f64> = c.iter().map(|r| r.value).collect();
    let pi2 = std::f64::consts::PI.powi(2);
    let sphere: QuadratureResult<f64> = sphere_integral_q(qtol).map_err(fail)?;
    let flux: QuadratureResult<f64> = flux_identity_check(1.0, qtol).map_err(fail)?;
    let checks = [
        ("8(3s1+6s2+6s3+s4) = 2pi^2", 8.0 * (3.0 * v[2] + 6.0 * v[3] + 6.0 * v[4] + v[5]), 2.0 * pi2),
        ("3s1-6s2-6s3+s4 = 0", 3.0 * v[2] - 6.0 * v[3] - 6.0 * v[4] + v[5], 0.0),
        ("8(3s1+s4) = pi^2", 8.0 * (3.0 * v[2] + v[5]), pi2),
        ("sphere integral of Q = pi^2", sphere.value, pi2),
        ("flux of d(1/r^2) = -4pi^2", flux.value, -4.0 * pi2),
    ];
    let mut text = String::new();
    let names = ["c1", "c2", "sigma1", "sigma2", "sigma3", "sigma4"];
    let mut constants = serde_json::Map::new();
    for (n, r) in names.iter().zip(&c) {
        let _ = writeln!(text, "{n} = {:.12} (error {:.1e}, {} nodes)", r.value, r.estimated_error, r.nodes_used);
        constants.insert(n.to_string(), json!(r.value));
    }
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for (name, got, want) in checks {
        let pass = (got - want).abs() <= tol;
        let _ = writeln!(text, "{} {name}: {got:.10} (expected {want:.10})", if pass { "PASS" } else { "FAIL" });
        rows.push(json!({"identity": name, "value": got, "expected": want, "pass": pass}));
        if !pass {
            failures.push(name.to_string());
        }
    }
    Ok(outcome(cfg, failures.is_empty(), text, json!({"constants": constants, "identities": rows, "tol": tol}), failures))
}

fn emit(cfg: &RunConfig, table: Option<&Path>) -> Result<Outcome, CliError> {
    let t = match table {
        Some(p) => {
            let src = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            parse_table::<Rational>(&src).map_err(|e| CliError::Fixture(e.to_string()))?
        }
        None => solve(&cfg.families)?,
    };
    let document = match cfg.format {
        OutputFormat::Structured => types_report_to_json(&t),
        OutputFormat::Text => render_types_text(&t),
    };
    Ok(Outcome { ok: true, document, failures: vec![] })
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::resolve(cli)?;
    let out = match &cli.command {
        Command::VerifyMetric => verify_metric(&cfg),
        Command::ReproduceBoundary => reproduce_boundary(&cfg)?,
        Command::Assemble => assemble(&cfg)?,
        Command::Solve => solve_cmd(&cfg)?,
        Command::CheckTable => check_table(&cfg)?,
        Command::Quadrature => quadrature(&cfg)?,
        Command::Emit { table } => emit(&cfg, table.as_deref())?,
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, &out.document).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => print!("{}", out.document),
    }
    Ok(out)
}

/// Entry point; returns the process exit status.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(o) if o.ok => 0,
        Ok(o) => {
            for f in &o.failures {
                eprintln!("failed: {f}");
            }
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
