//! Command-line front end and the file formats it writes.
//!
//! Subcommands:
//!
//! - `generate` grows one graph and writes `<out>` (edge list) plus
//!   `<out>.manifest.json`, which is enough to regenerate the same bytes
//!   with `generate --from-manifest`.
//! - `analyze` reads an edge list and prints the flat JSON report.
//! - `sweep` grows a grid of graphs and writes curve CSVs into a directory.
//! - `theory` tabulates closed-form quantities.
//! - `compare` grows CDPAM and BA on shared seeds and prints both reports
//!   and the per-metric deltas.
//!
//! Every randomized command needs an explicit seed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::generator::{generate, Model, ModelParams, Sampler};
use crate::graph::Graph;
use crate::metrics::{degree_histogram, DEFAULT_EXACT_DIAMETER_CUTOFF};
use crate::report::{compare, AnalysisOptions, AnalysisReport};
use crate::spectral::SpectralOptions;
use crate::theory::{self, TheoryParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "cdpam", version, about = "Context-dependent preferential attachment graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow one graph and write its edge list and manifest.
    Generate(GenerateArgs),
    /// Report metrics of an edge-list file as JSON.
    Analyze(AnalyzeArgs),
    /// Grow a grid of graphs and write curve CSVs.
    Sweep(SweepArgs),
    /// Tabulate closed-form quantities.
    Theory(TheoryArgs),
    /// Compare CDPAM against BA on shared seeds.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    EdgeList,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Cdpam,
    Ba,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Cdpam => Model::Cdpam,
            ModelArg::Ba => Model::Ba,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GrowthArgs {
    /// Size of the complete seed network.
    #[arg(long, default_value_t = 7)]
    pub m0: usize,
    /// Edges added with each new node.
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    /// Global-context weight.
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    /// Relative tolerance of the iterative eigensolver.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Bootstrap replicates for the power-law p-value (omit to skip).
    #[arg(long)]
    pub bootstrap: Option<usize>,
    /// Largest node count for exact all-pairs diameter.
    #[arg(long, default_value_t = DEFAULT_EXACT_DIAMETER_CUTOFF)]
    pub exact_diameter_cutoff: usize,
}

impl MeasureArgs {
    fn options(&self, seed: u64) -> Result<AnalysisOptions> {
        let spectral = SpectralOptions {
            tolerance: self.tolerance,
            ..SpectralOptions::default()
        };
        spectral.validate()?;
        if self.exact_diameter_cutoff == 0 {
            return Err(invalid("--exact-diameter-cutoff must be positive"));
        }
        Ok(AnalysisOptions {
            exact_diameter_cutoff: self.exact_diameter_cutoff,
            spectral,
            bootstrap: self.bootstrap,
            seed,
            ..AnalysisOptions::default()
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub growth: GrowthArgs,
    /// Local-context weight (required for cdpam).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Number of growth steps.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModelArg::Cdpam)]
    pub model: ModelArg,
    /// Edge-list output path; the manifest goes next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::EdgeList)]
    pub format: Format,
    /// Regenerate from a manifest instead of flags.
    #[arg(long, conflicts_with_all = ["beta", "n", "seed", "model", "m0", "m", "theta"])]
    pub from_manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Bootstrap seed; required with --bootstrap.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub measure: MeasureArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub growth: GrowthArgs,
    /// Comma-separated beta values.
    #[arg(long)]
    pub beta_grid: String,
    /// Comma-separated step counts.
    #[arg(long)]
    pub n_grid: String,
    /// Comma-separated seeds.
    #[arg(long)]
    pub seeds: String,
    /// Also grow BA graphs for every (n, seed).
    #[arg(long)]
    pub with_ba: bool,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub measure: MeasureArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TheoryArgs {
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    /// Single beta value.
    #[arg(long, conflicts_with = "beta_grid")]
    pub beta: Option<f64>,
    /// Comma-separated beta values.
    #[arg(long)]
    pub beta_grid: Option<String>,
    /// Comma-separated network sizes for size-dependent columns.
    #[arg(long)]
    pub n_grid: Option<String>,
    /// Arrival time used in the expected_degree column.
    #[arg(long, default_value_t = 1.0)]
    pub arrival: f64,
    /// Degree at which degree_density is evaluated (default 2m).
    #[arg(long)]
    pub degree: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub growth: GrowthArgs,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated seeds.
    #[arg(long)]
    pub seeds: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub measure: MeasureArgs,
}

/// Parses `args` (including the program name) and runs the command.
/// Help and version text go to `out`; so do reports without `--out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(out, "{e}").map_err(stdout_error)?;
                return Ok(());
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            return Err(Error::Usage(line.trim_start_matches("error: ").to_string()));
        }
    };
    match cli.command {
        Command::Generate(a) => cmd_generate(&a).map(|_| ()),
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Theory(a) => cmd_theory(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
    }
}

fn stdout_error(source: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn io_at(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(io_at(path))
}

fn write_bytes(path: Option<&Path>, bytes: &[u8], out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(io_at(p)),
        None => out.write_all(bytes).map_err(stdout_error),
    }
}

fn expect_format(got: Format, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&got) {
        Ok(())
    } else {
        Err(Error::Usage(format!("{command} does not support --format {got:?}")))
    }
}

/// Parses a comma-separated list; blank input is an empty list.
pub fn parse_list<T: std::str::FromStr>(text: &str, flag: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Usage(format!("{flag}: cannot parse {s:?}"))))
        .collect()
}

fn nonempty<T>(v: Vec<T>, flag: &str) -> Result<Vec<T>> {
    if v.is_empty() {
        Err(Error::Usage(format!("{flag} must not be empty")))
    } else {
        Ok(v)
    }
}

/// Everything needed to regenerate an edge list byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub model: Model,
    pub m0: usize,
    pub m: usize,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub n: usize,
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub edge_list_sha256: String,
}

impl Manifest {
    pub fn params(&self) -> ModelParams {
        ModelParams::new(
            self.m0,
            self.m,
            self.beta.unwrap_or(1.0),
            self.theta.unwrap_or(0.5),
            self.n,
            self.seed,
        )
    }

    pub fn read(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(io_at(path))?;
        serde_json::from_reader(BufReader::new(file)).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Path of the manifest written next to `edge_list`.
pub fn manifest_path(edge_list: &Path) -> PathBuf {
    let mut name = edge_list.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Grows the graph, writes the edge list and manifest, and returns the manifest.
pub fn cmd_generate(a: &GenerateArgs) -> Result<Manifest> {
    expect_format(a.format, &[Format::EdgeList], "generate")?;
    let (params, model, expected) = match &a.from_manifest {
        Some(path) => {
            let m = Manifest::read(path)?;
            (m.params(), m.model, Some(m))
        }
        None => {
            let model = Model::from(a.model);
            let seed = a.seed.ok_or_else(|| Error::Usage("generate requires --seed".into()))?;
            let n = a.n.ok_or_else(|| Error::Usage("generate requires --n".into()))?;
            let beta = match (model, a.beta) {
                (Model::Cdpam, None) => return Err(Error::Usage("generate requires --beta for cdpam".into())),
                (_, b) => b.unwrap_or(1.0),
            };
            let p = ModelParams::new(a.growth.m0, a.growth.m, beta, a.growth.theta, n, seed);
            (p, model, None)
        }
    };
    let g = generate(&params, model, Sampler::Incremental)?;
    let text = g.to_edge_list_string();
    let cdpam = model == Model::Cdpam;
    let manifest = Manifest {
        tool: "cdpam".into(),
        version: VERSION.into(),
        model,
        m0: params.m0,
        m: params.m,
        beta: cdpam.then_some(params.beta),
        theta: cdpam.then_some(params.theta),
        n: params.n_steps,
        seed: params.seed,
        nodes: g.node_count(),
        edges: g.edge_count(),
        edge_list_sha256: sha256_hex(text.as_bytes()),
    };
    if let Some(old) = expected {
        if old.edge_list_sha256 != manifest.edge_list_sha256 {
            return Err(invalid(format!(
                "regenerated edge list does not match the manifest checksum (manifest written by version {})",
                old.version
            )));
        }
    }
    std::fs::write(&a.out, text.as_bytes()).map_err(io_at(&a.out))?;
    let mpath = manifest_path(&a.out);
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    std::fs::write(&mpath, json).map_err(io_at(&mpath))?;
    Ok(manifest)
}

/// Reads an edge-list file, naming the path in any error.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).map_err(io_at(path))?;
    Graph::read_edge_list(BufReader::new(file)).map_err(|e| Error::Input {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

/// Header and single row of the report as CSV.
fn report_csv(r: &AnalysisReport) -> Result<Vec<u8>> {
    let value = serde_json::to_value(r).expect("report serializes");
    let obj = value.as_object().expect("report is an object");
    let mut w = csv::Writer::from_writer(Vec::new());
    let keys: Vec<&String> = obj.keys().filter(|k| !k.ends_with("_reason")).collect();
    w.write_record(keys.iter().map(|k| k.as_str())).map_err(csv_error)?;
    w.write_record(keys.iter().map(|k| match &obj[k.as_str()] {
        serde_json::Value::Null => String::new(),
        v => v.to_string(),
    }))
    .map_err(csv_error)?;
    w.into_inner().map_err(|e| invalid(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    invalid(format!("csv: {e}"))
}

pub fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    expect_format(a.format, &[Format::Json, Format::Csv], "analyze")?;
    let seed = match (a.measure.bootstrap, a.seed) {
        (Some(_), None) => return Err(Error::Usage("--bootstrap requires --seed".into())),
        (_, s) => s.unwrap_or(0),
    };
    let opts = a.measure.options(seed)?;
    let g = read_graph(&a.input)?;
    let report = AnalysisReport::compute(&g, &opts)?;
    let bytes = match a.format {
        Format::Csv => report_csv(&report)?,
        _ => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
    };
    write_bytes(a.out.as_deref(), &bytes, out)
}

pub fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    expect_format(a.format, &[Format::Json], "compare")?;
    let seeds = nonempty(parse_list::<u64>(&a.seeds, "--seeds")?, "--seeds")?;
    let params = ModelParams::new(a.growth.m0, a.growth.m, a.beta, a.growth.theta, a.n, 0);
    let result = compare(&params, &seeds, &a.measure.options(0)?)?;
    let mut s = serde_json::to_string_pretty(&result).expect("comparison serializes");
    s.push('\n');
    write_bytes(a.out.as_deref(), s.as_bytes(), out)
}

fn fmt_f(x: f64) -> String {
    format!("{x}")
}

fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Rows of the theory table. Size-dependent columns are blank when no
/// size grid is given; a failing quantity leaves its row's remaining
/// columns blank and fills `error`.
pub fn theory_rows(a: &TheoryArgs) -> Result<Vec<Vec<String>>> {
    let betas: Vec<f64> = match (&a.beta_grid, a.beta) {
        (Some(grid), _) => parse_list(grid, "--beta-grid")?,
        (None, Some(b)) => vec![b],
        (None, None) => return Err(Error::Usage("theory requires --beta or --beta-grid".into())),
    };
    let sizes: Vec<Option<u64>> = match &a.n_grid {
        Some(grid) => parse_list::<u64>(grid, "--n-grid")?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let degree = a.degree.unwrap_or(2.0 * a.m as f64);
    let mut rows = Vec::new();
    for &beta in &betas {
        for &n in &sizes {
            let mut row = vec![fmt_f(beta), fmt_f(a.theta), a.m.to_string()];
            let filled = theory_cells(a, beta, n, degree);
            let error = match filled {
                Ok(cells) => {
                    row.extend(cells);
                    String::new()
                }
                Err(e) => {
                    row.extend(std::iter::repeat_n(String::new(), 8));
                    e.to_string()
                }
            };
            row.push(error);
            rows.push(row);
        }
    }
    Ok(rows)
}

fn theory_cells(a: &TheoryArgs, beta: f64, n: Option<u64>, degree: f64) -> Result<Vec<String>> {
    let p = TheoryParams::new(a.m, beta, a.theta)?;
    let mut cells = vec![fmt_f(p.gamma()), fmt_f(p.c()), fmt_f(p.k_coef())];
    let density = theory::degree_density(degree, &p).map(fmt_f);
    match n {
        None => cells.extend([String::new(), String::new(), String::new(), String::new()]),
        Some(n) => {
            cells.push(n.to_string());
            cells.push(fmt_f(theory::harmonic(n)?));
            cells.push(fmt_f(theory::expected_diameter(n, &p)?));
            cells.push(fmt_f(theory::expected_degree(n as f64, a.arrival, &p)?));
        }
    }
    cells.push(density?);
    Ok(cells)
}

pub const THEORY_HEADER: [&str; 12] = [
    "beta",
    "theta",
    "m",
    "gamma",
    "c",
    "k_coef",
    "n",
    "harmonic_n",
    "expected_diameter",
    "expected_degree",
    "degree_density",
    "error",
];

pub fn cmd_theory(a: &TheoryArgs, out: &mut dyn Write) -> Result<()> {
    expect_format(a.format, &[Format::Csv], "theory")?;
    let rows = theory_rows(a)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(THEORY_HEADER).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
    write_bytes(a.out.as_deref(), &bytes, out)
}

/// One grown-and-measured graph in a sweep.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub model: Model,
    /// `None` for BA.
    pub beta: Option<f64>,
    pub n: usize,
    pub seed: u64,
    pub outcome: std::result::Result<(AnalysisReport, BTreeMap<usize, usize>), String>,
}

impl SweepCell {
    fn key(&self) -> (u8, f64, usize, u64) {
        let m = match self.model {
            Model::Cdpam => 0,
            Model::Ba => 1,
        };
        (m, self.beta.unwrap_or(0.0), self.n, self.seed)
    }
}

/// Runs every cell of the grid in parallel and returns them sorted by (model, beta, n, seed).
pub fn run_sweep(
    growth: &GrowthArgs,
    betas: &[f64],
    sizes: &[usize],
    seeds: &[u64],
    with_ba: bool,
    opts: &AnalysisOptions,
) -> Vec<SweepCell> {
    let mut jobs: Vec<(Model, Option<f64>, usize, u64)> = Vec::new();
    for &beta in betas {
        for &n in sizes {
            for &seed in seeds {
                jobs.push((Model::Cdpam, Some(beta), n, seed));
            }
        }
    }
    if with_ba {
        for &n in sizes {
            for &seed in seeds {
                jobs.push((Model::Ba, None, n, seed));
            }
        }
    }
    let mut cells: Vec<SweepCell> = jobs
        .into_par_iter()
        .map(|(model, beta, n, seed)| {
            let p = ModelParams::new(growth.m0, growth.m, beta.unwrap_or(1.0), growth.theta, n, seed);
            let o = AnalysisOptions { seed, ..*opts };
            let outcome = generate(&p, model, Sampler::Incremental)
                .and_then(|g| Ok((AnalysisReport::compute(&g, &o)?, degree_histogram(&g))))
                .map_err(|e| e.to_string());
            SweepCell {
                model,
                beta,
                n,
                seed,
                outcome,
            }
        })
        .collect();
    cells.sort_by(|a, b| {
        let (ka, kb) = (a.key(), b.key());
        ka.0.cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.cmp(&kb.2))
            .then(ka.3.cmp(&kb.3))
    });
    cells
}

pub const METRICS_HEADER: [&str; 21] = [
    "model",
    "beta",
    "theta",
    "m0",
    "m",
    "n",
    "seed",
    "nodes",
    "edges",
    "clustering",
    "assortativity",
    "triangles",
    "diameter",
    "diameter_is_estimate",
    "lambda2",
    "spectral_radius",
    "gamma_hat",
    "x_min",
    "ks",
    "p_value",
    "error",
];

fn mean_std(x: &[f64]) -> (Option<f64>, Option<f64>) {
    if x.is_empty() {
        return (None, None);
    }
    let mu = x.iter().sum::<f64>() / x.len() as f64;
    let sd = (x.len() > 1).then(|| (x.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / (x.len() - 1) as f64).sqrt());
    (Some(mu), sd)
}

/// File name and contents of every CSV a sweep writes.
pub fn sweep_csvs(growth: &GrowthArgs, cells: &[SweepCell]) -> Result<Vec<(&'static str, Vec<u8>)>> {
    let mut metrics = csv::Writer::from_writer(Vec::new());
    metrics.write_record(METRICS_HEADER).map_err(csv_error)?;
    let mut degrees = csv::Writer::from_writer(Vec::new());
    degrees
        .write_record(["model", "beta", "n", "seed", "degree", "count", "ccdf"])
        .map_err(csv_error)?;
    // (model, beta, n) -> successful reports, in cell order.
    let mut groups: Vec<((Model, Option<f64>, usize), Vec<&AnalysisReport>)> = Vec::new();
    for cell in cells {
        let head = [
            cell.model.name().to_string(),
            fmt_opt(cell.beta),
            fmt_f(growth.theta),
            growth.m0.to_string(),
            growth.m.to_string(),
            cell.n.to_string(),
            cell.seed.to_string(),
        ];
        let group_key = (cell.model, cell.beta, cell.n);
        if groups.last().is_none_or(|g| g.0 != group_key) {
            groups.push((group_key, Vec::new()));
        }
        match &cell.outcome {
            Ok((r, hist)) => {
                let row = [
                    r.nodes.to_string(),
                    r.edges.to_string(),
                    fmt_f(r.clustering),
                    fmt_opt(r.assortativity.clone().ok()),
                    r.triangles.to_string(),
                    fmt_opt(r.diameter.clone().ok()),
                    r.diameter_is_estimate.to_string(),
                    fmt_opt(r.lambda2.clone().ok()),
                    fmt_opt(r.spectral_radius.clone().ok()),
                    fmt_opt(r.gamma_hat.clone().ok()),
                    fmt_opt(r.x_min.clone().ok()),
                    fmt_opt(r.ks.clone().ok()),
                    fmt_opt(r.p_value.clone().ok()),
                    String::new(),
                ];
                metrics
                    .write_record(head.iter().chain(row.iter()))
                    .map_err(csv_error)?;
                let total = r.nodes as f64;
                let mut at_least = r.nodes;
                for (&k, &count) in hist {
                    degrees
                        .write_record([
                            head[0].clone(),
                            head[1].clone(),
                            head[5].clone(),
                            head[6].clone(),
                            k.to_string(),
                            count.to_string(),
                            fmt_f(at_least as f64 / total),
                        ])
                        .map_err(csv_error)?;
                    at_least -= count;
                }
                groups.last_mut().unwrap().1.push(r);
            }
            Err(why) => {
                let mut row: Vec<String> = head.to_vec();
                row.extend(std::iter::repeat_n(String::new(), METRICS_HEADER.len() - head.len() - 1));
                row.push(why.clone());
                metrics.write_record(&row).map_err(csv_error)?;
            }
        }
    }

    let mut cc = csv::Writer::from_writer(Vec::new());
    cc.write_record(["model", "n", "beta", "log_beta", "mean_cc", "std_cc", "runs"])
        .map_err(csv_error)?;
    let mut diam = csv::Writer::from_writer(Vec::new());
    diam.write_record(["model", "beta", "n", "nodes", "ln_n", "bfs_diameter", "theory_diameter", "runs"])
        .map_err(csv_error)?;
    let mut by_n: Vec<&((Model, Option<f64>, usize), Vec<&AnalysisReport>)> = groups.iter().collect();
    by_n.sort_by(|a, b| {
        (a.0 .0 == Model::Ba)
            .cmp(&(b.0 .0 == Model::Ba))
            .then(a.0 .2.cmp(&b.0 .2))
            .then(a.0 .1.unwrap_or(0.0).total_cmp(&b.0 .1.unwrap_or(0.0)))
    });
    for ((model, beta, n), reports) in by_n {
        let ccs: Vec<f64> = reports.iter().map(|r| r.clustering).collect();
        let (mu, sd) = mean_std(&ccs);
        cc.write_record([
            model.name().to_string(),
            n.to_string(),
            fmt_opt(*beta),
            fmt_opt(beta.map(f64::ln)),
            fmt_opt(mu),
            fmt_opt(sd),
            reports.len().to_string(),
        ])
        .map_err(csv_error)?;
    }
    for ((model, beta, n), reports) in &groups {
        let nodes = growth.m0 + n;
        let ds: Vec<f64> = reports.iter().filter_map(|r| r.diameter.clone().ok()).map(|d| d as f64).collect();
        let theory_d = match beta {
            Some(b) => TheoryParams::new(growth.m, *b, growth.theta)
                .and_then(|p| theory::expected_diameter(nodes as u64, &p))
                .ok(),
            None => None,
        };
        diam.write_record([
            model.name().to_string(),
            fmt_opt(*beta),
            n.to_string(),
            nodes.to_string(),
            fmt_f((nodes as f64).ln()),
            fmt_opt(mean_std(&ds).0),
            fmt_opt(theory_d),
            ds.len().to_string(),
        ])
        .map_err(csv_error)?;
    }

    let done = |w: csv::Writer<Vec<u8>>| w.into_inner().map_err(|e| invalid(e.to_string()));
    Ok(vec![
        ("metrics.csv", done(metrics)?),
        ("clustering_vs_log_beta.csv", done(cc)?),
        ("diameter_vs_ln_n.csv", done(diam)?),
        ("degree_distribution.csv", done(degrees)?),
    ])
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    expect_format(a.format, &[Format::Csv], "sweep")?;
    let betas = nonempty(parse_list::<f64>(&a.beta_grid, "--beta-grid")?, "--beta-grid")?;
    let sizes = nonempty(parse_list::<usize>(&a.n_grid, "--n-grid")?, "--n-grid")?;
    let seeds = nonempty(parse_list::<u64>(&a.seeds, "--seeds")?, "--seeds")?;
    let opts = a.measure.options(0)?;
    std::fs::create_dir_all(&a.out).map_err(io_at(&a.out))?;
    let cells = run_sweep(&a.growth, &betas, &sizes, &seeds, a.with_ba, &opts);
    for (name, bytes) in sweep_csvs(&a.growth, &cells)? {
        let path = a.out.join(name);
        let mut w = create(&path)?;
        w.write_all(&bytes).map_err(io_at(&path))?;
        w.flush().map_err(io_at(&path))?;
    }
    Ok(())
}
