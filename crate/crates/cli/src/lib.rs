//! Command-line front end: `inspect`, `train`, `predict`, `crossval` and
//! `bench-sims`.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, invalid
//! parameter values), 2 for data errors (missing or malformed files, schema
//! mismatches).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use relnet::dataset::{self, DataFormat, LabelPosition, RawDataset};
use relnet::reliability::DecisionMode;
use relnet::seed::DEFAULT_SEED;
use relnet::trainer::{self, TrainConfig};
use relnet::Model;

mod report;

pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "relnet", version, about = "Reliability-network two-class classifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Show the class map, theta and per-attribute correlation signs.
    Inspect {
        #[command(flatten)]
        data: DataArgs,
        /// Also write the transform as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train on the whole dataset and write the model JSON.
    Train {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify instances with a trained model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        data: DataArgs,
        /// Input rows carry no class column (CSV only).
        #[arg(long)]
        unlabeled: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Predicted labels, one per line; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stratified k-fold cross-validation.
    Crossval {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        train: TrainArgs,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timings in the JSON report.
        #[arg(long)]
        timing: bool,
    },
    /// Cross-validate with early stopping and with full replication, and
    /// compare simulation counts and decisions.
    BenchSims {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Libsvm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PositionArg {
    LastColumn,
    Leading,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecisionArg {
    Imcs,
    FullMcs,
}

#[derive(Debug, Args)]
struct DataArgs {
    #[arg(long)]
    data: PathBuf,
    /// Defaults to csv for `.csv` files and libsvm otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum)]
    label_position: Option<PositionArg>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// JSON file with TrainConfig fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    gens: Option<usize>,
    #[arg(long)]
    sols: Option<usize>,
    #[arg(long)]
    nsim: Option<usize>,
    #[arg(long)]
    delta_nsim: Option<usize>,
    /// Significance level; the normal quantile is derived from it.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    p_eps: Option<f64>,
    #[arg(long)]
    cg: Option<f64>,
    #[arg(long)]
    cp: Option<f64>,
    #[arg(long)]
    cw: Option<f64>,
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long, value_enum)]
    decision: Option<DecisionArg>,
    /// Worker threads for fitness evaluation; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

/// Failure classes, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) | CliError::Data(e) => write!(f, "{e:#}"),
        }
    }
}

fn usage(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Usage(e.into())
}

fn data(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Data(e.into())
}

type CliResult<T> = Result<T, CliError>;

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Inspect { data: d, out } => inspect(&d, out.as_deref()),
        Command::Train { data: d, train, out } => {
            let config = build_config(&train)?;
            with_workers(train.workers, || train_model(&d, &config, &out))
        }
        Command::Predict {
            model,
            data: d,
            unlabeled,
            seed,
            workers,
            out,
        } => with_workers(workers, || predict(&model, &d, unlabeled, seed, out.as_deref())),
        Command::Crossval { data: d, train, out, timing } => {
            let config = build_config(&train)?;
            with_workers(train.workers, || crossval(&d, &config, out.as_deref(), timing))
        }
        Command::BenchSims { data: d, train, out, timing } => {
            let config = build_config(&train)?;
            with_workers(train.workers, || bench(&d, &config, out.as_deref(), timing))
        }
    }
}

fn with_workers<T>(workers: Option<usize>, f: impl FnOnce() -> CliResult<T> + Send) -> CliResult<T>
where
    T: Send,
{
    match workers {
        None => f(),
        Some(0) => Err(usage(anyhow::anyhow!("--workers must be at least 1"))),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(usage)?;
            pool.install(f)
        }
    }
}

impl DataArgs {
    fn format(&self) -> DataFormat {
        match self.format {
            Some(FormatArg::Csv) => DataFormat::Csv,
            Some(FormatArg::Libsvm) => DataFormat::Libsvm,
            None if self.data.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => DataFormat::Csv,
            None => DataFormat::Libsvm,
        }
    }

    fn position(&self) -> LabelPosition {
        match self.label_position {
            Some(PositionArg::LastColumn) => LabelPosition::LastColumn,
            Some(PositionArg::Leading) => LabelPosition::Leading,
            None => self.format().default_label_position(),
        }
    }

    fn load(&self) -> CliResult<RawDataset> {
        dataset::load_dataset(&self.data, self.format(), self.position())
            .with_context(|| format!("loading {}", self.data.display()))
            .map_err(data)
    }

    fn name(&self) -> String {
        self.data
            .file_name()
            .map_or_else(|| self.data.display().to_string(), |n| n.to_string_lossy().into_owned())
    }
}

/// Defaults, then the config file, then flags.
fn build_config(args: &TrainArgs) -> CliResult<TrainConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))
                .map_err(data)?;
            serde_json::from_str::<TrainConfig>(&text)
                .with_context(|| format!("parsing config {}", path.display()))
                .map_err(data)?
        }
        None => TrainConfig::default(),
    };
    macro_rules! set {
        ($flag:expr => $($field:tt)+) => {
            if let Some(v) = $flag {
                config.$($field)+ = v;
            }
        };
    }
    set!(args.seed => master_seed);
    set!(args.runs => n_run);
    set!(args.gens => n_gen);
    set!(args.sols => n_sol);
    set!(args.nsim => sim.n_sim);
    set!(args.delta_nsim => sim.delta_n_sim);
    set!(args.p_eps => sim.p_eps);
    set!(args.cg => sso.c_g);
    set!(args.cp => sso.c_p);
    set!(args.cw => sso.c_w);
    set!(args.folds => folds);
    if let Some(alpha) = args.alpha {
        config.sim.alpha = alpha;
        config.sim.z_half_alpha = z_for_alpha(alpha).map_err(usage)?;
    }
    if let Some(d) = args.decision {
        config.decision = match d {
            DecisionArg::Imcs => DecisionMode::Imcs,
            DecisionArg::FullMcs => DecisionMode::FullMcs,
        };
    }
    config.validate().map_err(usage)?;
    Ok(config)
}

/// Upper `alpha / 2` normal quantile rounded to four decimals.
fn z_for_alpha(alpha: f64) -> anyhow::Result<f64> {
    use statrs::distribution::{ContinuousCDF, Normal};
    anyhow::ensure!(alpha > 0.0 && alpha < 1.0, "--alpha must lie in (0, 1)");
    let z = Normal::standard().inverse_cdf(1.0 - alpha / 2.0);
    Ok((z * 1e4).round() / 1e4)
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(data)
}

fn inspect(d: &DataArgs, out: Option<&Path>) -> CliResult<()> {
    let raw = d.load()?;
    let cmap = dataset::map_classes(&raw).map_err(data)?;
    let (spec, _) = dataset::fit_transform(&raw, &cmap).map_err(data)?;
    print!("{}", report::inspect_table(&d.name(), &raw, &spec));
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&spec).map_err(data)?;
        write_text(path, &(json + "\n"))?;
    }
    Ok(())
}

fn train_model(d: &DataArgs, config: &TrainConfig, out: &Path) -> CliResult<()> {
    let raw = d.load()?;
    let (model, runs) = trainer::fit(&raw, config).map_err(data)?;
    write_text(out, &model.to_json().map_err(data)?)?;
    print!("{}", report::train_summary(&d.name(), &model, &runs));
    Ok(())
}

fn predict(model_path: &Path, d: &DataArgs, unlabeled: bool, seed: u64, out: Option<&Path>) -> CliResult<()> {
    let model = Model::load(model_path)
        .with_context(|| format!("loading model {}", model_path.display()))
        .map_err(data)?;
    let n = model.n_attributes();
    let (instances, labels) = if unlabeled {
        let x = dataset::load_instances(&d.data, d.format(), Some(n))
            .with_context(|| format!("loading {}", d.data.display()))
            .map_err(data)?;
        (x, None)
    } else if d.format() == DataFormat::Libsvm {
        // sparse files may omit trailing features; pad to the model width
        let raw = d.load()?;
        let x = dataset::load_instances(&d.data, DataFormat::Libsvm, Some(n)).map_err(data)?;
        (x, Some(raw.labels().to_vec()))
    } else {
        let raw = d.load()?;
        (raw.instances().to_vec(), Some(raw.labels().to_vec()))
    };
    if let Some(bad) = instances.iter().find(|x| x.len() != n) {
        return Err(data(anyhow::anyhow!(
            "model expects {n} attributes but {} has {}",
            d.data.display(),
            bad.len()
        )));
    }
    let predictions = trainer::predict_batch(&model, &instances, model.decision, seed, 0).map_err(data)?;
    let mut text = String::new();
    for p in &predictions {
        text.push_str(&p.label);
        text.push('\n');
    }
    match out {
        Some(path) => write_text(path, &text)?,
        None => print!("{text}"),
    }
    let sims: usize = predictions.iter().map(|p| p.outcome.sims_used).sum();
    let mean_sims = sims as f64 / predictions.len() as f64;
    match labels {
        Some(labels) => {
            let correct = predictions.iter().zip(&labels).filter(|(p, l)| &p.label == *l).count();
            eprintln!(
                "{} instances, accuracy {:.6}, mean sims {:.2}",
                predictions.len(),
                correct as f64 / predictions.len() as f64,
                mean_sims
            );
        }
        None => eprintln!("{} instances, mean sims {:.2}", predictions.len(), mean_sims),
    }
    Ok(())
}

fn crossval(d: &DataArgs, config: &TrainConfig, out: Option<&Path>, timing: bool) -> CliResult<()> {
    let raw = d.load()?;
    let mut cv = trainer::cross_validate(&raw, config).map_err(data)?;
    print!("{}", report::fold_table(&d.name(), config, &cv));
    if !timing {
        cv.strip_timing();
    }
    if let Some(path) = out {
        let report = RunReport::new(d.name(), config.clone(), cv);
        write_text(path, &report.to_json().map_err(data)?)?;
    }
    Ok(())
}

fn bench(d: &DataArgs, config: &TrainConfig, out: Option<&Path>, timing: bool) -> CliResult<()> {
    let raw = d.load()?;
    let mut b = trainer::bench_sims(&raw, config).map_err(data)?;
    print!("{}", report::bench_table(&d.name(), config, &b));
    if !timing {
        b.strip_timing();
    }
    if let Some(path) = out {
        let json = report::BenchDocument::new(d.name(), config.clone(), b);
        write_text(path, &json.to_json().map_err(data)?)?;
    }
    Ok(())
}
