//! The `qshare` command line: run experiments, compare methods, derive
//! plotting tables. Behavior is a pure function of the config file and
//! flags; exit codes are 0 (success), 2 (config error), 3 (I/O error).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::advising::{BudgetLimit, Framework, GammaPolicy, ShareEvent};
use crate::env::NUM_ACTIONS;
use crate::harness::csvio::{
    read_share_events_csv, write_budget_csv, write_budget_curve_csv, write_histograms_csv,
    write_metrics_csv, write_qtrace_csv, write_share_events_csv, write_ttest_csv,
};
use crate::harness::{
    repeat_runs, share_histogram, t_test_auc, ExperimentConfig, HistAxis, HistRole, MetricKind,
    RunResult, TTestReport,
};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "qshare", version, about = "Multi-agent Q-learning with budget-constrained Q-value sharing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one experiment and write metrics, budget, share-event and
    /// Q-trace CSVs.
    Run(RunArgs),
    /// Run several method variants with matched seeds, then t-test their
    /// curve areas pairwise.
    Compare(CompareArgs),
    /// Derive histogram or budget-curve CSVs from a share-event log.
    Analyze(AnalyzeArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Experiment configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for the CSV files.
    #[arg(long)]
    pub out: PathBuf,
    /// Override base_seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override n_runs.
    #[arg(long)]
    pub runs: Option<u32>,
    /// Worker threads for concurrent runs; 1 forces sequential execution.
    /// Outputs are byte-identical for any worker count.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Override a config field by dotted path, e.g.
    /// --override advising.v_a=0.5 (repeatable).
    #[arg(long = "override", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Comparison specification (JSON): a base experiment plus variants.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; per-variant CSVs land in subdirectories.
    #[arg(long)]
    pub out: PathBuf,
    /// Override the shared base_seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the shared n_runs.
    #[arg(long)]
    pub runs: Option<u32>,
    /// Worker threads for concurrent runs.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeMode {
    /// Sharing-opportunity histograms over visit counts.
    Histogram,
    /// Cumulative budget consumption per agent per episode.
    BudgetCurve,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// A share_events.csv produced by `run` or `compare`.
    #[arg(long)]
    pub events: PathBuf,
    #[arg(long, value_enum)]
    pub mode: AnalyzeMode,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Histogram bin edges, comma separated, strictly increasing.
    #[arg(long, default_value = "1,2,3,4,5,10,20,50,100")]
    pub edges: String,
}

/// Several named method variants sharing one base experiment. Every
/// variant runs with the same seeds, so initial placements coincide across
/// methods and the paired areas compare like for like.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonSpec {
    pub base: ExperimentConfig,
    pub variants: Vec<VariantSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantSpec {
    pub name: String,
    pub framework: Framework,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_policy: Option<GammaPolicy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_ask: Option<BudgetLimit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_give: Option<BudgetLimit>,
}

impl ComparisonSpec {
    pub fn validate(&self) -> Result<()> {
        if self.variants.len() < 2 {
            return Err(Error::Config("a comparison needs at least 2 variants".into()));
        }
        let mut names: Vec<&str> = self.variants.iter().map(|v| v.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != self.variants.len() {
            return Err(Error::Config("variant names must be distinct".into()));
        }
        for v in &self.variants {
            self.effective(v).validate()?;
        }
        Ok(())
    }

    /// The full experiment config of one variant.
    pub fn effective(&self, variant: &VariantSpec) -> ExperimentConfig {
        let mut cfg = self.base.clone();
        cfg.advising.framework = variant.framework;
        if let Some(v) = variant.v_a {
            cfg.advising.v_a = v;
        }
        if let Some(v) = variant.v_b {
            cfg.advising.v_b = v;
        }
        if let Some(g) = variant.gamma_policy {
            cfg.advising.gamma_policy = g;
        }
        if let Some(b) = variant.b_ask {
            cfg.b_ask = b;
        }
        if let Some(b) = variant.b_give {
            cfg.b_give = b;
        }
        cfg
    }
}

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Analyze(args) => cmd_analyze(&args),
    }
}

fn read_json_value(path: &Path) -> Result<serde_json::Value> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Applies one `key=value` override to a JSON document by dotted path. The
/// value is parsed as JSON when possible, else taken as a string.
fn apply_override(doc: &mut serde_json::Value, spec: &str) -> Result<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override must be KEY=VALUE, got \"{spec}\"")))?;
    let value: serde_json::Value =
        serde_json::from_str(raw).unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut slot = doc;
    for part in path.split('.') {
        slot = slot
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("override path \"{path}\" hits a non-object")))?
            .entry(part)
            .or_insert(serde_json::Value::Null);
    }
    *slot = value;
    Ok(())
}

fn typed_config<T: serde::de::DeserializeOwned>(doc: serde_json::Value, origin: &Path) -> Result<T> {
    serde_json::from_value(doc).map_err(|e| Error::Config(format!("{}: {e}", origin.display())))
}

fn build_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Config(format!("worker pool: {e}")))
}

fn write_run_outputs(dir: &Path, runs: &[RunResult]) -> Result<()> {
    write_metrics_csv(&dir.join("metrics.csv"), runs)?;
    write_budget_csv(&dir.join("budget.csv"), runs)?;
    write_share_events_csv(&dir.join("share_events.csv"), runs)?;
    write_qtrace_csv(&dir.join("qtrace.csv"), runs, NUM_ACTIONS)?;
    Ok(())
}

pub fn cmd_run(args: &RunArgs) -> Result<()> {
    let mut doc = read_json_value(&args.config)?;
    for spec in &args.overrides {
        apply_override(&mut doc, spec)?;
    }
    let mut cfg: ExperimentConfig = typed_config(doc, &args.config)?;
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    if let Some(runs) = args.runs {
        cfg.n_runs = runs;
    }
    cfg.validate()?;
    let pool = build_pool(args.workers)?;

    fs::create_dir_all(&args.out)?;
    let runs = pool.install(|| repeat_runs(&cfg));
    write_run_outputs(&args.out, &runs)?;
    fs::write(
        args.out.join("config.json"),
        serde_json::to_string_pretty(&cfg).expect("config serializes") + "\n",
    )?;
    println!(
        "ran {} runs × {} episodes ({}), wrote {}",
        cfg.n_runs,
        cfg.n_train_episodes,
        cfg.advising.framework,
        args.out.display()
    );
    Ok(())
}

pub fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let doc = read_json_value(&args.config)?;
    let mut spec: ComparisonSpec = typed_config(doc, &args.config)?;
    if let Some(seed) = args.seed {
        spec.base.base_seed = seed;
    }
    if let Some(runs) = args.runs {
        spec.base.n_runs = runs;
    }
    spec.validate()?;
    let pool = build_pool(args.workers)?;
    let metric = spec.base.eval_schedule.metric();

    fs::create_dir_all(&args.out)?;
    let mut per_variant: Vec<(String, Vec<RunResult>)> = Vec::new();
    for variant in &spec.variants {
        let cfg = spec.effective(variant);
        let mut runs = pool.install(|| repeat_runs(&cfg));
        let dir = args.out.join(&variant.name);
        fs::create_dir_all(&dir)?;
        write_run_outputs(&dir, &runs)?;
        fs::write(
            dir.join("config.json"),
            serde_json::to_string_pretty(&cfg).expect("config serializes") + "\n",
        )?;
        println!("variant {}: {} runs done", variant.name, runs.len());
        // only the metric series feed the t-tests; drop the bulky logs
        for run in runs.iter_mut() {
            run.share_events.clear();
            run.share_events.shrink_to_fit();
            run.q_traces.clear();
            run.q_traces.shrink_to_fit();
        }
        per_variant.push((variant.name.clone(), runs));
    }

    let mut rows: Vec<(MetricKind, String, String, TTestReport)> = Vec::new();
    for i in 0..per_variant.len() {
        for j in (i + 1)..per_variant.len() {
            let (name_a, runs_a) = &per_variant[i];
            let (name_b, runs_b) = &per_variant[j];
            rows.push((metric, name_a.clone(), name_b.clone(), t_test_auc(runs_a, runs_b, metric)));
        }
    }
    write_ttest_csv(&args.out.join("ttest.csv"), &rows)?;
    fs::write(
        args.out.join("comparison.json"),
        serde_json::to_string_pretty(&spec).expect("spec serializes") + "\n",
    )?;
    println!("wrote {} pairwise tests to {}", rows.len(), args.out.join("ttest.csv").display());
    Ok(())
}

fn parse_edges(raw: &str) -> Result<Vec<f64>> {
    let edges: Vec<f64> = raw
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Config(format!("bad --edges: {e}")))?;
    if edges.is_empty() || edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("--edges must be non-empty and strictly increasing".into()));
    }
    Ok(edges)
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let rows = read_share_events_csv(&args.events)?;
    match args.mode {
        AnalyzeMode::Histogram => {
            let edges = parse_edges(&args.edges)?;
            let events: Vec<ShareEvent> = rows.iter().map(|r| r.event.clone()).collect();
            let combos = [
                ("n_visit", "partaker", HistAxis::NVisit, HistRole::Partaker),
                ("n_visit", "sharer", HistAxis::NVisit, HistRole::Sharer),
                ("m_visit", "partaker", HistAxis::MVisit, HistRole::Partaker),
                ("m_visit", "sharer", HistAxis::MVisit, HistRole::Sharer),
            ];
            let histograms: Vec<(&str, &str, crate::harness::Histogram)> = combos
                .iter()
                .map(|(axis_name, role_name, axis, role)| {
                    (*axis_name, *role_name, share_histogram(&events, *axis, *role, &edges))
                })
                .collect();
            write_histograms_csv(&args.out, &histograms)?;
        }
        AnalyzeMode::BudgetCurve => {
            let mut run_ids: Vec<u32> = rows.iter().map(|r| r.run_id).collect();
            run_ids.sort_unstable();
            run_ids.dedup();
            let mut points = Vec::new();
            for run_id in run_ids {
                let events: Vec<ShareEvent> = rows
                    .iter()
                    .filter(|r| r.run_id == run_id)
                    .map(|r| r.event.clone())
                    .collect();
                for p in crate::harness::analyze::budget_curves(&events) {
                    points.push((run_id, p));
                }
            }
            write_budget_curve_csv(&args.out, &points)?;
        }
    }
    println!("wrote {}", args.out.display());
    Ok(())
}
