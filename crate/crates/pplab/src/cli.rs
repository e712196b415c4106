//! Argument parsing and the subcommands.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pplab_core::constructions::{conjectured_coefficient, ConstructionKind, ConstructionSpec};
use pplab_core::{
    count_paths, double_apex, leading_fit, maximize, p4_codegree_bound, p4_min_bound, Join, Parity,
    PrefixMode, RelaxationSet,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogError};
use crate::formats::{self, to_graph6, FormatError};
use crate::report::{OutputFormat, Report};
use crate::verify::{self, Profile};

#[derive(Debug, Parser)]
#[command(name = "pplab", version, about = "Exact path counts in planar graphs and the degree-sequence relaxation")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to all cores). Results do not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Print JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Print CSV.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count paths with k edges in a graph file or a construction.
    Count(CountArgs),
    /// Maximize S over the relaxation set A_n.
    Maximize(MaximizeArgs),
    /// Enumerate triangulations and compute f(n, P_k).
    Enumerate(EnumerateArgs),
    /// Fit the growth of path counts in the extremal constructions.
    Fit(FitArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Construct {
    DoubleApex,
    BlownCycle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum JoinArg {
    None,
    Hubs,
    Classes,
}

impl From<JoinArg> for Join {
    fn from(j: JoinArg) -> Join {
        match j {
            JoinArg::None => Join::None,
            JoinArg::Hubs => Join::Hubs,
            JoinArg::Classes => Join::Classes,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Literal,
    K3,
}

impl From<ModeArg> for PrefixMode {
    fn from(m: ModeArg) -> PrefixMode {
        match m {
            ModeArg::Literal => PrefixMode::Literal,
            ModeArg::K3 => PrefixMode::K3,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProfileArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Graph file; `.g6`/`.graph6` is read as graph6, anything else as the text format.
    #[arg(long, conflicts_with = "construct", required_unless_present = "construct")]
    pub file: Option<PathBuf>,
    #[arg(long, requires = "n")]
    pub construct: Option<Construct>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Half cycle length for blown-cycle.
    #[arg(long, default_value_t = 3)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = JoinArg::Classes)]
    pub join: JoinArg,
    /// Path length in edges.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct MaximizeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Literal)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Rebuild the catalog even if a cached copy exists.
    #[arg(long)]
    pub regenerate: bool,
    #[arg(long, env = catalog::CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    pub parity: ParityArg,
    /// Comma-separated sizes, increasing multiples of ell.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ns: Vec<usize>,
    #[arg(long, value_enum, default_value_t = JoinArg::Classes)]
    pub join: JoinArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
    pub profile: ProfileArg,
    #[arg(long, env = catalog::CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl AppError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Usage(_) => ExitCode::from(2),
            AppError::Failure(_) => ExitCode::from(1),
        }
    }
}

impl From<pplab_core::Error> for AppError {
    fn from(e: pplab_core::Error) -> Self {
        AppError::Usage(e.to_string())
    }
}

impl From<FormatError> for AppError {
    fn from(e: FormatError) -> Self {
        AppError::Usage(e.to_string())
    }
}

impl From<CatalogError> for AppError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Generate(e) => e.into(),
            other => AppError::Failure(other.to_string()),
        }
    }
}

/// What a command prints and how the process ends.
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Cli {
    fn format(&self) -> OutputFormat {
        match (self.json, self.csv) {
            (true, _) => OutputFormat::Json,
            (_, true) => OutputFormat::Csv,
            _ => OutputFormat::Table,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, AppError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .map_err(|e| AppError::Failure(e.to_string()))?;
    }
    let format = cli.format();
    let done = |report: Report| Outcome {
        stdout: report.render(format),
        success: true,
    };
    match &cli.command {
        Command::Count(a) => count(a).map(done),
        Command::Maximize(a) => run_maximize(a, format),
        Command::Enumerate(a) => enumerate(a).map(done),
        Command::Fit(a) => fit(a).map(done),
        Command::Verify(a) => Ok(run_verify(a, cli.seed, format)),
    }
}

fn count(a: &CountArgs) -> Result<Report, AppError> {
    let k = a.k as usize;
    let (g, report) = match (&a.file, a.construct) {
        (Some(path), _) => (formats::read_graph(path)?, Report::new("count").param("file", path.display().to_string())),
        (None, Some(c)) => {
            let n = a.n.ok_or_else(|| AppError::Usage("--construct needs --n".into()))?;
            let spec = ConstructionSpec {
                kind: match c {
                    Construct::DoubleApex => ConstructionKind::DoubleApex,
                    Construct::BlownCycle => ConstructionKind::BlownCycle,
                },
                n,
                ell: a.ell,
                join: a.join.into(),
            };
            let mut report = Report::new("count").param("construct", c.to_possible_value().unwrap().get_name().to_string());
            report = report.param("n", n);
            if let Construct::BlownCycle = c {
                report = report.param("ell", a.ell).param("join", a.join.to_possible_value().unwrap().get_name().to_string());
            }
            (spec.build()?, report)
        }
        (None, None) => return Err(AppError::Usage("give --file or --construct".into())),
    };
    let mut columns = vec!["n", "e", "k", "paths"];
    let mut row = vec![json!(g.n()), json!(g.edge_count()), json!(k), json!(count_paths(&g, k))];
    if k == 4 {
        columns.extend(["p4_codegree_bound", "p4_min_bound"]);
        row.extend([json!(p4_codegree_bound(&g) as u64), json!(p4_min_bound(&g) as u64)]);
    }
    let mut report = report.param("k", k).columns(&columns);
    report.row(row);
    Ok(report)
}

#[derive(Serialize)]
struct MaximizeJson {
    n: usize,
    mode: &'static str,
    best_value: i128,
    argmax: Vec<u32>,
    nodes_explored: u64,
    trichotomy_case: &'static str,
    bound_calls: u64,
    normalized_excess: f64,
}

/// The result is a JSON object unless `--csv` is given.
fn run_maximize(a: &MaximizeArgs, format: OutputFormat) -> Result<Outcome, AppError> {
    let r = maximize(&RelaxationSet::new(a.n, a.mode.into()))?;
    let out = MaximizeJson {
        n: r.n,
        mode: r.mode.as_str(),
        best_value: r.best_value,
        argmax: r.argmax.as_slice().to_vec(),
        nodes_explored: r.nodes_explored,
        trichotomy_case: r.trichotomy_case.as_str(),
        bound_calls: r.bound_calls,
        normalized_excess: r.normalized_excess(),
    };
    let stdout = if format == OutputFormat::Csv {
        let mut report = Report::new("maximize").columns(&[
            "n",
            "mode",
            "best_value",
            "argmax",
            "nodes_explored",
            "trichotomy_case",
            "bound_calls",
            "normalized_excess",
        ]);
        report.row(vec![
            json!(out.n),
            json!(out.mode),
            json!(out.best_value.to_string()),
            json!(r.argmax.to_string()),
            json!(out.nodes_explored),
            json!(out.trichotomy_case),
            json!(out.bound_calls),
            json!(out.normalized_excess),
        ]);
        report.render(format)
    } else {
        serde_json::to_string(&out).unwrap() + "\n"
    };
    Ok(Outcome { stdout, success: true })
}

fn cache_dir(arg: &Option<PathBuf>) -> PathBuf {
    arg.clone().unwrap_or_else(catalog::default_cache_dir)
}

fn enumerate(a: &EnumerateArgs) -> Result<Report, AppError> {
    let n = a.n;
    let k = a.k as usize;
    if !(4..=pplab_core::enumerate::TRIANGULATION_LIMIT).contains(&n) {
        return Err(AppError::Usage(format!(
            "enumerate needs 4 <= n <= {}, got {n}",
            pplab_core::enumerate::TRIANGULATION_LIMIT
        )));
    }
    let dir = cache_dir(&a.cache_dir);
    let (catalog, source) = match catalog::load_or_generate(&dir, n, a.regenerate) {
        Err(CatalogError::Corrupt { path, msg }) => {
            eprintln!("warning: {path}: {msg}; regenerating");
            catalog::load_or_generate(&dir, n, true)?
        }
        other => other?,
    };
    eprintln!("catalog: {} ({})", catalog::catalog_path(&dir, n).display(), source.as_str());
    let (best, witness) = catalog.max_paths(k).expect("catalogs are never empty");
    let apex = count_paths(&double_apex(n)?, k);
    let mut report = Report::new("enumerate").param("n", n).param("k", k).columns(&[
        "triangulations",
        "f",
        "witness_graph6",
        "witness_degrees",
        "double_apex",
        "gap",
    ]);
    report.row(vec![
        json!(catalog.len()),
        json!(best),
        json!(to_graph6(witness)),
        json!(witness.degree_sequence().to_string()),
        json!(apex),
        json!(best - apex),
    ]);
    Ok(report)
}

fn fit(a: &FitArgs) -> Result<Report, AppError> {
    let parity: Parity = a.parity.into();
    let f = leading_fit(a.ell, parity, &a.ns, a.join.into())?;
    let mut report = Report::new("fit")
        .param("ell", a.ell)
        .param("parity", parity.as_str())
        .param("k", f.k)
        .columns(&["n", "count", "conjectured", "ratio"]);
    for p in &f.points {
        report.row(vec![json!(p.n), json!(p.count), json!(p.conjectured), json!(p.ratio)]);
    }
    report.summary("slope", f.slope);
    report.summary("coefficient", f.coefficient);
    report.summary("conjectured_coefficient", conjectured_coefficient(f.k)?);
    Ok(report)
}

fn run_verify(a: &VerifyArgs, seed: u64, format: OutputFormat) -> Outcome {
    let profile = match a.profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let checks = verify::run(profile, seed, &cache_dir(&a.cache_dir));
    let mut report = Report::new("verify")
        .param("profile", profile.as_str())
        .param("seed", seed)
        .columns(&["id", "check", "result", "detail"]);
    for c in &checks {
        let result = if c.passed { "PASS" } else { "FAIL" };
        report.row(vec![json!(c.id), json!(c.name), json!(result), Value::from(c.detail.clone())]);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    report.summary("passed", checks.len() - failed);
    report.summary("failed", failed);
    Outcome {
        stdout: report.render(format),
        success: failed == 0,
    }
}
