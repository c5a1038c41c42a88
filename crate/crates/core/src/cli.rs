//! Command-line front end shared by the `pcinc` binary and its tests.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::graph::ComparisonGraph;
use crate::indices::{classical_indices, BlendParams, ClassicalIndex, ClassicalValues, Evaluator, IndexError, IndexId};
use crate::matrix::{parse_matrix, PcMatrix};
use crate::montecarlo::{run_experiment, ExperimentConfig, ExperimentError, GammaDist, RemovalMode};
use crate::priority::{Method, PriorityError};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IRREDUCIBLE: i32 = 3;
pub const EXIT_METHOD: i32 = 4;
pub const EXIT_CONFIG: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "pcinc", version, about = "Inconsistency indices for incomplete pairwise-comparison matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Evm,
    Gmm,
    Harker,
    Ills,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Evm => Method::Evm,
            MethodArg::Gmm => Method::Gmm,
            MethodArg::Harker => Method::Harker,
            MethodArg::Ills => Method::Ills,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GammaArg {
    Uniform,
    Loguniform,
}

#[derive(Debug, clap::Args)]
pub struct BlendArgs {
    /// Weight of K~ in I~alpha.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Weight of I~1 in I~alpha,beta.
    #[arg(long, default_value_t = 0.3)]
    pub beta: f64,
    /// Weight of K~ in I~alpha,beta.
    #[arg(long = "ab-alpha", default_value_t = 0.3)]
    pub ab_alpha: f64,
}

impl BlendArgs {
    fn params(&self) -> BlendParams {
        BlendParams { alpha: self.alpha, ab_alpha: self.ab_alpha, ab_beta: self.beta }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print index values for a matrix file.
    Analyze {
        file: PathBuf,
        /// Comma-separated index names; all fourteen by default.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<String>>,
        #[command(flatten)]
        blend: BlendArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print a priority vector, heaviest alternative first.
    Rank {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Run the deletion-robustness experiment and write CSV tables.
    Experiment {
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        matrices: usize,
        #[arg(long, default_value_t = 30)]
        dmax: usize,
        #[arg(long, default_value_t = 15)]
        removals: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long = "gamma-dist", value_enum, default_value_t = GammaArg::Uniform)]
        gamma_dist: GammaArg,
        #[arg(long = "independent-removals")]
        independent_removals: bool,
        #[arg(long = "weight-range", default_value_t = 3.0)]
        weight_range: f64,
        #[command(flatten)]
        blend: BlendArgs,
        /// Output prefix: writes PREFIX_D.csv and PREFIX_total.csv.
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        let code = match e {
            IndexError::NotIrreducible => EXIT_IRREDUCIBLE,
            IndexError::NotComplete => EXIT_METHOD,
            IndexError::BadParams(_) | IndexError::UnknownIndex(_) => EXIT_CONFIG,
            _ => 1,
        };
        Self::new(code, e.to_string())
    }
}

impl From<PriorityError> for CliError {
    fn from(e: PriorityError) -> Self {
        match e {
            PriorityError::NotIrreducible => Self::new(EXIT_IRREDUCIBLE, e.to_string()),
            PriorityError::NotComplete => Self::new(EXIT_METHOD, e.to_string()),
            _ => Self::new(1, e.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        let code = match e {
            ExperimentError::InvalidConfig(_) | ExperimentError::BadK { .. } => EXIT_CONFIG,
            _ => 1,
        };
        Self::new(code, e.to_string())
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::new(1, e.to_string())
}

fn load(path: &Path) -> Result<PcMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn require_irreducible(m: &PcMatrix) -> Result<(), CliError> {
    if ComparisonGraph::new(m).is_irreducible() {
        Ok(())
    } else {
        Err(IndexError::NotIrreducible.into())
    }
}

/// Incomplete-capable index and the classical index it reduces to on complete input.
const REDUCTIONS: [(IndexId, ClassicalIndex); 12] = [
    (IndexId::KTilde, ClassicalIndex::K),
    (IndexId::I1, ClassicalIndex::I1),
    (IndexId::I2, ClassicalIndex::I2),
    (IndexId::IAlpha, ClassicalIndex::IAlpha),
    (IndexId::IAlphaBeta, ClassicalIndex::IAlphaBeta),
    (IndexId::SaloHamalainen, ClassicalIndex::SaloHamalainen),
    (IndexId::Gci1, ClassicalIndex::Gci),
    (IndexId::GoldenWang, ClassicalIndex::GoldenWang),
    (IndexId::Re1, ClassicalIndex::Re),
    (IndexId::Re2, ClassicalIndex::Re),
    (IndexId::Ci, ClassicalIndex::Ci),
    (IndexId::Oliva, ClassicalIndex::Ci),
];

#[derive(Debug, Serialize)]
struct Delta {
    index: &'static str,
    reference: &'static str,
    delta: f64,
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    n: usize,
    defined_comparisons: usize,
    complete: bool,
    exceeds_scale: bool,
    indices: Vec<(&'static str, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical: Option<ClassicalValues>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    reductions: Vec<Delta>,
}

fn parse_index_list(names: &Option<Vec<String>>) -> Result<Vec<IndexId>, CliError> {
    match names {
        None => Ok(IndexId::ALL.to_vec()),
        Some(list) => list
            .iter()
            .map(|s| s.trim().parse::<IndexId>().map_err(CliError::from))
            .collect(),
    }
}

fn analyze(m: &PcMatrix, selected: &[IndexId], p: &BlendParams) -> Result<AnalyzeReport, CliError> {
    p.validate()?;
    require_irreducible(m)?;
    let values = Evaluator::new(m)?.all(p)?;
    let classical = if m.is_complete() { Some(classical_indices(m, p)?) } else { None };
    let reductions = match &classical {
        Some(c) => REDUCTIONS
            .iter()
            .map(|&(id, cid)| Delta { index: id.name(), reference: cid.name(), delta: values.get(id) - c.get(cid) })
            .collect(),
        None => Vec::new(),
    };
    Ok(AnalyzeReport {
        n: m.size(),
        defined_comparisons: m.defined_pairs().len(),
        complete: m.is_complete(),
        exceeds_scale: m.exceeds_scale(),
        indices: selected.iter().map(|&id| (id.name(), values.get(id))).collect(),
        classical,
        reductions,
    })
}

fn render_analyze(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    let pairs = r.n * (r.n - 1) / 2;
    let kind = if r.complete { "complete" } else { "incomplete" };
    writeln!(s, "n = {}, {} of {} comparisons defined ({kind})", r.n, r.defined_comparisons, pairs).unwrap();
    if r.exceeds_scale {
        writeln!(s, "warning: entries outside the judgment scale").unwrap();
    }
    for (name, v) in &r.indices {
        writeln!(s, "{name:<11} {v:.10}").unwrap();
    }
    if let Some(c) = &r.classical {
        writeln!(s, "\nclassical").unwrap();
        for id in ClassicalIndex::ALL {
            writeln!(s, "{:<11} {:.10}", id.name(), c.get(id)).unwrap();
        }
        writeln!(s, "\nreduction deltas").unwrap();
        for d in &r.reductions {
            writeln!(s, "{:<11} - {:<11} {:+.3e}", d.index, d.reference, d.delta).unwrap();
        }
    }
    s
}

#[derive(Debug, Serialize)]
struct RankEntry {
    label: String,
    weight: f64,
}

fn rank(m: &PcMatrix, method: Method) -> Result<Vec<RankEntry>, CliError> {
    require_irreducible(m)?;
    let w = method.rank(m)?;
    let mut out: Vec<RankEntry> = w
        .weights()
        .iter()
        .enumerate()
        .map(|(i, &weight)| RankEntry { label: format!("a{}", i + 1), weight })
        .collect();
    // Stable sort keeps label order among ties.
    out.sort_by(|a, b| b.weight.total_cmp(&a.weight));
    Ok(out)
}

fn write_file(path: PathBuf, text: &str) -> Result<PathBuf, CliError> {
    std::fs::write(&path, text).map_err(|e| CliError::new(1, format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Executes a parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { file, indices, blend, json } => {
            let selected = parse_index_list(&indices)?;
            let params = blend.params();
            params.validate()?;
            let m = load(&file)?;
            let report = analyze(&m, &selected, &params)?;
            let text = if json {
                serde_json::to_string_pretty(&report).expect("serializable report") + "\n"
            } else {
                render_analyze(&report)
            };
            out.write_all(text.as_bytes()).map_err(io_err)
        }
        Command::Rank { file, method } => {
            let m = load(&file)?;
            for e in rank(&m, method.into())? {
                writeln!(out, "{:<5} {:.10}", e.label, e.weight).map_err(io_err)?;
            }
            Ok(())
        }
        Command::Experiment {
            n,
            matrices,
            dmax,
            removals,
            seed,
            threads,
            gamma_dist,
            independent_removals,
            weight_range,
            blend,
            out: prefix,
        } => {
            let cfg = ExperimentConfig {
                n,
                base_matrices: matrices,
                d_max: dmax,
                removals_max: removals,
                blend: blend.params(),
                seed,
                weight_range,
                gamma: match gamma_dist {
                    GammaArg::Uniform => GammaDist::Uniform,
                    GammaArg::Loguniform => GammaDist::LogUniform,
                },
                removal: if independent_removals { RemovalMode::Independent } else { RemovalMode::Chain },
                threads,
            };
            cfg.validate()?;
            let table = run_experiment(&cfg)?;
            let d_path = write_file(with_suffix(&prefix, "_D.csv"), &table.to_csv())?;
            let t_path = write_file(with_suffix(&prefix, "_total.csv"), &table.summary_csv())?;
            writeln!(out, "rank  index       total").map_err(io_err)?;
            for (i, (id, total)) in table.ranking().iter().enumerate() {
                writeln!(out, "{:<5} {:<11} {:.3}", i + 1, id.name(), total).map_err(io_err)?;
            }
            writeln!(out, "wrote {} and {}", d_path.display(), t_path.display()).map_err(io_err)
        }
    }
}
