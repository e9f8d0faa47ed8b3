//! `rocinf`: ROC curves from estimated predictive indices, with inference
//! corrected for the first-stage estimation effect.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use roc_inference::data::{Dataset, GridConfig, IndexValues};
use roc_inference::error::Error;
use roc_inference::inference::{
    auc_compare, dominance_test, pointwise_ci, uniform_band, CiConfig, CiMethod, CiSource,
    CiTarget,
};
use roc_inference::kernel::KernelConfig;
use roc_inference::logit::{fit_logit, FittedModel, WeightLaw};
use roc_inference::resample::{Scheme, TailMode};
use roc_inference::roc::roc_at_grid;
use roc_inference::simulation::{
    auc_test_experiment, band_coverage_experiment, coverage_experiment, dominance_experiment,
    DgpSpec, TwoModelDesign,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rocinf",
    version,
    about = "ROC curves and in-sample inference corrected for first-stage estimation"
)]
struct Cli {
    /// Worker threads (default: all available cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the logit index and emit the empirical ROC curve
    Roc(RocArgs),
    /// Pointwise confidence interval for TP, FP, or a linear combination
    Ci(CiArgs),
    /// Uniform confidence band over a false-positive-rate interval
    Band(BandArgs),
    /// One-sided ROC dominance test of model 2 against model 1
    Dominance(TwoModelArgs),
    /// Compare the grid-restricted AUCs of two models
    AucCompare(TwoModelArgs),
    /// Monte Carlo experiments on the built-in designs
    Simulate(SimArgs),
}

#[derive(Args)]
struct InputArgs {
    /// CSV file with a header row
    #[arg(long)]
    input: PathBuf,
    /// Name of the 0/1 outcome column
    #[arg(long)]
    outcome: String,
    /// Predictor columns (comma separated; default: all non-outcome columns)
    #[arg(long, value_delimiter = ',')]
    predictors: Option<Vec<String>>,
}

#[derive(Args)]
struct GridArgs {
    /// Grid as "lower,upper[,step]" on the false-positive-rate axis
    #[arg(long)]
    grid: Option<String>,
    /// Nominal significance level
    #[arg(long, default_value_t = 0.10)]
    alpha: f64,
    /// Variance truncation floor
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
}

#[derive(Args)]
struct OutArgs {
    /// Output path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Weighted,
    Multiplier,
}

impl From<SchemeArg> for Scheme {
    fn from(v: SchemeArg) -> Scheme {
        match v {
            SchemeArg::Weighted => Scheme::Weighted,
            SchemeArg::Multiplier => Scheme::Multiplier,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawArg {
    TwoPoint,
    Normal,
}

impl From<LawArg> for WeightLaw {
    fn from(v: LawArg) -> WeightLaw {
        match v {
            LawArg::TwoPoint => WeightLaw::TwoPoint,
            LawArg::Normal => WeightLaw::Normal,
        }
    }
}

#[derive(Args)]
struct RocArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Use this column directly as the predictive index instead of fitting
    #[arg(long)]
    index_column: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CiArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cutoffs on the index scale (comma separated)
    #[arg(long, value_delimiter = ',', required = true)]
    cutoff: Vec<f64>,
    /// Target: tp, fp, tp-fp, or linear:a,b
    #[arg(long, default_value = "tp")]
    target: String,
    /// Interval construction
    #[arg(long, value_enum, default_value_t = MethodArg::Corrected)]
    method: MethodArg,
    /// Use this column directly as a fixed index instead of fitting a model
    #[arg(long)]
    index_column: Option<String>,
    /// Confidence level
    #[arg(long, default_value_t = 0.90)]
    level: f64,
    #[arg(long, value_enum, default_value_t = LawArg::TwoPoint)]
    law: LawArg,
    /// Bootstrap replicates (corrected-bootstrap method)
    #[arg(long, default_value_t = 1000)]
    boot: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ConventionalFixed,
    Conventional,
    Corrected,
    CorrectedBootstrap,
}

#[derive(Args)]
struct BandArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = SchemeArg::Multiplier)]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value_t = LawArg::TwoPoint)]
    law: LawArg,
    /// Bootstrap replicates
    #[arg(long, default_value_t = 1000)]
    boot: usize,
    #[arg(long, required = true)]
    seed: u64,
    /// one-sided or two-sided band
    #[arg(long, default_value = "two-sided")]
    mode: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct TwoModelArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Predictor columns of the second model (comma separated)
    #[arg(long, value_delimiter = ',', required = true)]
    predictors2: Vec<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = SchemeArg::Multiplier)]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value_t = LawArg::TwoPoint)]
    law: LawArg,
    #[arg(long, default_value_t = 1000)]
    boot: usize,
    #[arg(long, required = true)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentArg {
    Coverage,
    BandCoverage,
    DominanceSize,
    DominancePower,
    AucSize,
    AucPower,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DgpArg {
    NormalLogit,
    UniformLogit,
    NormalCauchit,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, value_enum)]
    experiment: ExperimentArg,
    #[arg(long, value_enum, default_value_t = DgpArg::NormalLogit)]
    dgp: DgpArg,
    /// Sample size per replication
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Monte Carlo replications
    #[arg(long, default_value_t = 2000)]
    reps: usize,
    /// Bootstrap replicates inside each replication
    #[arg(long, default_value_t = 1000)]
    boot: usize,
    /// Cutoffs for the coverage experiment (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.33,0.5,0.67,0.8")]
    cutoffs: Vec<f64>,
    /// Confidence level for the coverage experiment
    #[arg(long, default_value_t = 0.90)]
    level: f64,
    #[arg(long, value_enum, default_value_t = SchemeArg::Multiplier)]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value_t = LawArg::TwoPoint)]
    law: LawArg,
    /// Population draws for the band-coverage truth curve
    #[arg(long, default_value_t = 10_000_000)]
    truth_mc: usize,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, required = true)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

fn parse_grid(args: &GridArgs, default: GridConfig) -> Result<GridConfig, Error> {
    let mut cfg = GridConfig { alpha: args.alpha, epsilon: args.epsilon, ..default };
    if let Some(spec) = &args.grid {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(Error::InvalidConfig(
                "grid must be \"lower,upper\" or \"lower,upper,step\"".into(),
            ));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad grid number `{s}`")))
        };
        cfg.tau_l = parse(parts[0])?;
        cfg.tau_u = parse(parts[1])?;
        if parts.len() == 3 {
            cfg.step = parse(parts[2])?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_target(s: &str) -> Result<CiTarget, Error> {
    match s {
        "tp" => Ok(CiTarget::Tp),
        "fp" => Ok(CiTarget::Fp),
        "tp-fp" => Ok(CiTarget::Linear(1.0, -1.0)),
        other => {
            if let Some(rest) = other.strip_prefix("linear:") {
                let nums: Vec<&str> = rest.split(',').collect();
                if nums.len() == 2 {
                    let a = nums[0].trim().parse::<f64>();
                    let b = nums[1].trim().parse::<f64>();
                    if let (Ok(a), Ok(b)) = (a, b) {
                        return Ok(CiTarget::Linear(a, b));
                    }
                }
            }
            Err(Error::InvalidConfig(format!(
                "unknown target `{other}`; use tp, fp, tp-fp, or linear:a,b"
            )))
        }
    }
}

fn parse_mode(s: &str) -> Result<TailMode, Error> {
    match s {
        "one-sided" => Ok(TailMode::OneSided),
        "two-sided" => Ok(TailMode::TwoSided),
        other => Err(Error::InvalidConfig(format!("unknown mode `{other}`"))),
    }
}

fn load_and_fit(input: &InputArgs) -> Result<(Dataset, FittedModel), Error> {
    let (data, _) = Dataset::from_csv(&input.input, &input.outcome, input.predictors.as_deref())?;
    let model = fit_logit(&data)?;
    Ok((data, model))
}

/// Load the shared dataset of a two-model comparison and fit both column
/// subsets.
#[allow(clippy::type_complexity)]
fn load_two_models(
    args: &TwoModelArgs,
) -> Result<(Dataset, FittedModel, Dataset, FittedModel), Error> {
    let preds1 = args
        .input
        .predictors
        .clone()
        .ok_or_else(|| Error::InvalidConfig("--predictors is required for comparisons".into()))?;
    let mut all = preds1.clone();
    for p in &args.predictors2 {
        if !all.contains(p) {
            all.push(p.clone());
        }
    }
    let (data, names) = Dataset::from_csv(&args.input.input, &args.input.outcome, Some(&all))?;
    let col = |name: &String| -> Result<usize, Error> {
        names
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.clone()))
    };
    let cols1 = preds1.iter().map(&col).collect::<Result<Vec<_>, _>>()?;
    let cols2 = args.predictors2.iter().map(&col).collect::<Result<Vec<_>, _>>()?;
    let d1 = data.select_predictors(&cols1)?;
    let d2 = data.select_predictors(&cols2)?;
    let m1 = fit_logit(&d1)?;
    let m2 = fit_logit(&d2)?;
    Ok((d1, m1, d2, m2))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Roc(args) => {
            let cfg = parse_grid(
                &args.grid,
                GridConfig { tau_l: 0.0, tau_u: 1.0, step: 0.01, ..Default::default() },
            )?;
            if let Some(index_col) = &args.index_column {
                let (data, names) =
                    Dataset::from_csv(&args.input.input, &args.input.outcome, None)?;
                let j = names
                    .iter()
                    .position(|h| h == index_col)
                    .ok_or_else(|| Error::MissingColumn(index_col.clone()))?;
                let g: Vec<f64> = (0..data.n()).map(|i| data.x()[(i, j)]).collect();
                let index = IndexValues::new(g, None)?;
                let curve = roc_at_grid(&data, &index, &cfg.t_grid()?)?;
                output::emit_roc(&args.out.out, args.out.format, &curve, &cfg, &[])
            } else {
                let (data, model) = load_and_fit(&args.input)?;
                let index = model.index_values(&data)?;
                let curve = roc_at_grid(&data, &index, &cfg.t_grid()?)?;
                output::emit_roc(
                    &args.out.out,
                    args.out.format,
                    &curve,
                    &cfg,
                    model.beta().as_slice(),
                )
            }
        }
        Command::Ci(args) => {
            let target = parse_target(&args.target)?;
            let ci_cfg = CiConfig {
                level: args.level,
                kernel: KernelConfig::default(),
                law: args.law.into(),
                b: args.boot,
                seed: args.seed,
            };
            let (data, _) =
                Dataset::from_csv(&args.input.input, &args.input.outcome, {
                    // exclude an index column from the default predictor set
                    args.input.predictors.as_deref()
                })?;
            let mut results = Vec::new();
            if let Some(index_col) = &args.index_column {
                let (full, names) =
                    Dataset::from_csv(&args.input.input, &args.input.outcome, None)?;
                let j = names
                    .iter()
                    .position(|h| h == index_col)
                    .ok_or_else(|| Error::MissingColumn(index_col.clone()))?;
                let g: Vec<f64> = (0..full.n()).map(|i| full.x()[(i, j)]).collect();
                let index = IndexValues::new(g, None)?;
                let method = match args.method {
                    MethodArg::ConventionalFixed => CiMethod::ConventionalFixedIndex,
                    _ => {
                        return Err(Error::InvalidConfig(
                            "--index-column only supports --method conventional-fixed".into(),
                        ))
                    }
                };
                for &c in &args.cutoff {
                    results.push(pointwise_ci(
                        &full,
                        CiSource::FixedIndex(&index),
                        c,
                        target,
                        method,
                        &ci_cfg,
                    )?);
                }
            } else {
                let model = fit_logit(&data)?;
                let method = match args.method {
                    MethodArg::ConventionalFixed => {
                        return Err(Error::InvalidConfig(
                            "conventional-fixed requires --index-column".into(),
                        ))
                    }
                    MethodArg::Conventional => CiMethod::ConventionalEstimatedIndex,
                    MethodArg::Corrected => CiMethod::CorrectedAnalytic,
                    MethodArg::CorrectedBootstrap => CiMethod::CorrectedBootstrap,
                };
                for &c in &args.cutoff {
                    results.push(pointwise_ci(
                        &data,
                        CiSource::Model(&model),
                        c,
                        target,
                        method,
                        &ci_cfg,
                    )?);
                }
            }
            output::emit_cis(&args.out.out, args.out.format, &results, args.seed, args.boot)
        }
        Command::Band(args) => {
            let cfg = parse_grid(&args.grid, GridConfig::default())?;
            let mode = parse_mode(&args.mode)?;
            let (data, model) = load_and_fit(&args.input)?;
            let band = uniform_band(
                &data,
                &model,
                &cfg,
                &KernelConfig::default(),
                args.scheme.into(),
                args.law.into(),
                args.boot,
                args.seed,
                mode,
            )?;
            output::emit_band(&args.out.out, args.out.format, &band, &cfg)
        }
        Command::Dominance(args) => {
            let cfg = parse_grid(&args.grid, GridConfig::default())?;
            let (d1, m1, d2, m2) = load_two_models(&args)?;
            let result = dominance_test(
                &d1,
                &m1,
                &d2,
                &m2,
                &cfg,
                &KernelConfig::default(),
                args.scheme.into(),
                args.law.into(),
                args.boot,
                args.seed,
            )?;
            output::emit_dominance(&args.out.out, args.out.format, &result, &cfg)
        }
        Command::AucCompare(args) => {
            let cfg = parse_grid(&args.grid, GridConfig::default())?;
            let (d1, m1, d2, m2) = load_two_models(&args)?;
            let result = auc_compare(
                &d1,
                &m1,
                &d2,
                &m2,
                &cfg,
                &KernelConfig::default(),
                args.scheme.into(),
                args.law.into(),
                args.boot,
                args.seed,
            )?;
            output::emit_auc(&args.out.out, args.out.format, &result, &cfg)
        }
        Command::Simulate(args) => {
            let spec = match args.dgp {
                DgpArg::NormalLogit => DgpSpec::normal_logit(args.n),
                DgpArg::UniformLogit => DgpSpec::uniform_logit(args.n),
                DgpArg::NormalCauchit => DgpSpec::normal_cauchit(args.n),
            };
            let kcfg = KernelConfig::default();
            match args.experiment {
                ExperimentArg::Coverage => {
                    let report = coverage_experiment(
                        &spec,
                        &args.cutoffs,
                        args.reps,
                        args.level,
                        args.seed,
                        &kcfg,
                    )?;
                    output::emit_coverage(&args.out.out, args.out.format, &report, &spec)
                }
                other => {
                    let cfg = parse_grid(
                        &args.grid,
                        GridConfig { tau_l: 0.1, tau_u: 0.9, ..Default::default() },
                    )?;
                    let (label, summary) = match other {
                        ExperimentArg::BandCoverage => (
                            "band_coverage",
                            band_coverage_experiment(
                                &spec,
                                &cfg,
                                &kcfg,
                                args.scheme.into(),
                                args.law.into(),
                                args.boot,
                                args.reps,
                                args.seed,
                                args.truth_mc,
                            )?,
                        ),
                        ExperimentArg::DominanceSize => (
                            "dominance_size",
                            dominance_experiment(
                                TwoModelDesign::EqualCurves,
                                args.n,
                                &cfg,
                                &kcfg,
                                args.scheme.into(),
                                args.law.into(),
                                args.boot,
                                args.reps,
                                args.seed,
                            )?,
                        ),
                        ExperimentArg::DominancePower => (
                            "dominance_power",
                            dominance_experiment(
                                TwoModelDesign::NoiseVsFull,
                                args.n,
                                &cfg,
                                &kcfg,
                                args.scheme.into(),
                                args.law.into(),
                                args.boot,
                                args.reps,
                                args.seed,
                            )?,
                        ),
                        ExperimentArg::AucSize => (
                            "auc_size",
                            auc_test_experiment(
                                TwoModelDesign::EqualCurves,
                                args.n,
                                &cfg,
                                &kcfg,
                                args.scheme.into(),
                                args.law.into(),
                                args.boot,
                                args.reps,
                                args.seed,
                            )?,
                        ),
                        ExperimentArg::AucPower => (
                            "auc_power",
                            auc_test_experiment(
                                TwoModelDesign::NoiseVsFull,
                                args.n,
                                &cfg,
                                &kcfg,
                                args.scheme.into(),
                                args.law.into(),
                                args.boot,
                                args.reps,
                                args.seed,
                            )?,
                        ),
                        ExperimentArg::Coverage => unreachable!(),
                    };
                    output::emit_rate(
                        &args.out.out,
                        args.out.format,
                        label,
                        &summary,
                        &spec,
                        &cfg,
                        args.seed,
                        args.boot,
                    )
                }
            }
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonBinaryOutcome
        | Error::DegenerateOutcome
        | Error::NonFiniteValue
        | Error::MissingColumn(_)
        | Error::InvalidConfig(_)
        | Error::DimensionMismatch(_)
        | Error::RankDeficient
        | Error::NegativeWeight
        | Error::Io(_)
        | Error::Csv(_) => 2,
        Error::BoundaryEstimate
        | Error::VarianceUnavailable
        | Error::DegenerateDifference
        | Error::BandwidthDegenerate(_)
        | Error::TooFewPerClass
        | Error::RatioUnavailable
        | Error::SingularAMatrix
        | Error::AllZeroClassWeight => 3,
        Error::Separation | Error::NoConvergence | Error::ExcessiveFailures(_, _) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let body = move || match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let doc = serde_json::json!({
                "error": err.code(),
                "message": err.to_string(),
            });
            eprintln!("{doc}");
            ExitCode::from(exit_code_for(&err))
        }
    };
    match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("thread pool");
            pool.install(body)
        }
        None => body(),
    }
}
