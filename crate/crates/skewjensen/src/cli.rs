//! Command line front end.
//!
//! Every subcommand reads numeric files (CSV rows or JSON arrays of
//! arrays), writes deterministic output to `--output` or stdout, and exits
//! with 0 on success, 1 on a usage or input error, and 2 on a numerical
//! failure (an energy increase, insufficient quadrature coverage, or a
//! solver that hit its iteration cap under `--strict`).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::centroids::{solve_centroid, CentroidProblem, CentroidResult, Init, SolverOptions};
use crate::clustering::{alpha_sweep, default_alpha_grid, kmeans, KmeansResult, SweepConfig};
use crate::divergences::{
    ekl, jeffreys, js, js_alpha, k_alpha, k_div, kl, l_alpha, phi_divergence, s_param,
    scalar_profile, skl_alpha, sym_skew_jensen, Alpha, Histogram, PhiGenerator, PositiveMeasure,
};
use crate::expfam::{bhattacharyya_alpha, ExponentialFamily, NaturalParam};
use crate::generators::{make_generator, SeparableGenerator};
use crate::io::{self, IngestionConfig};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "skewjensen",
    version,
    about = "Skewed Jensen divergences on histograms and exponential families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a divergence on consecutive row pairs of an input file.
    Div(DivArgs),
    /// Tabulate the scalar symmetrized skew Jensen divergence over a grid.
    Profile(ProfileArgs),
    /// Convert between source and natural parameters of a family.
    Natparam(NatparamArgs),
    /// Skewed Bhattacharyya distance between natural parameter pairs.
    Bhatt(BhattArgs),
    /// CCCP fixed-point centroid of a point set.
    Centroid(CentroidArgs),
    /// Lloyd k-means under the symmetrized skew Jensen divergence.
    Kmeans(KmeansArgs),
    /// Nearest-centroid accuracy across a grid of skew values.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    Kl,
    Ekl,
    Jeffreys,
    Js,
    K,
    KAlpha,
    JsAlpha,
    Sj,
    Skl,
    LAlpha,
    SParam,
    Phi,
}

impl Measure {
    fn name(self) -> &'static str {
        match self {
            Measure::Kl => "kl",
            Measure::Ekl => "ekl",
            Measure::Jeffreys => "jeffreys",
            Measure::Js => "js",
            Measure::K => "k",
            Measure::KAlpha => "k-alpha",
            Measure::JsAlpha => "js-alpha",
            Measure::Sj => "sj",
            Measure::Skl => "skl",
            Measure::LAlpha => "l-alpha",
            Measure::SParam => "s-param",
            Measure::Phi => "phi",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Multinomial,
    Gaussian,
    Poisson,
}

impl FamilyArg {
    fn cli_name(self) -> &'static str {
        match self {
            FamilyArg::Multinomial => "multinomial",
            FamilyArg::Gaussian => "gaussian",
            FamilyArg::Poisson => "poisson",
        }
    }

    /// The concrete family for a natural parameter vector of length `dim`.
    fn for_natural_dim(self, dim: usize) -> ExponentialFamily {
        match self {
            FamilyArg::Multinomial => ExponentialFamily::Multinomial { bins: dim + 1 },
            FamilyArg::Gaussian => ExponentialFamily::Gaussian1d,
            FamilyArg::Poisson => ExponentialFamily::Poisson,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Natural,
    Source,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitKind {
    Arithmetic,
    QuasiArithmetic,
}

impl From<InitKind> for Init {
    fn from(kind: InitKind) -> Init {
        match kind {
            InitKind::Arithmetic => Init::Arithmetic,
            InitKind::QuasiArithmetic => Init::QuasiArithmetic,
        }
    }
}

#[derive(Args)]
struct DivArgs {
    /// Divergence to evaluate. `ekl` reads rows as raw positive measures;
    /// everything else smooths rows into histograms first.
    #[arg(long, value_enum)]
    measure: Measure,
    /// Skew in [0, 1]; reinterpreted as the parameter in [-1, 1] for
    /// `s-param`, ignored by the fixed measures.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Convex generator for `sj` and `s-param`: shannon, shannon-xlogx,
    /// burg, or quadratic.
    #[arg(long, default_value = "shannon")]
    generator: String,
    /// Scalar convex function for `phi`: neg-log, x-log-x, jeffreys, or
    /// k-half.
    #[arg(long)]
    phi: Option<String>,
    /// CSV or JSON file; rows 2i and 2i+1 form pair i.
    #[arg(long)]
    input: PathBuf,
    /// Destination for the JSON report (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Convex generator: shannon, shannon-xlogx, burg, or quadratic.
    #[arg(long, default_value = "shannon")]
    generator: String,
    /// Left scalar argument.
    #[arg(long)]
    x: f64,
    /// Right scalar argument.
    #[arg(long)]
    y: f64,
    /// Skew grid in (0, 0.5], comma separated.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Interpolation grid for x + t(y-x), comma separated.
    #[arg(long, value_delimiter = ',')]
    ts: Option<Vec<f64>>,
    /// Destination for the CSV table (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NatparamArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Target coordinates. Source rows are a probability vector
    /// (multinomial), [mean, variance] (gaussian), or [rate] (poisson).
    #[arg(long, value_enum)]
    to: Direction,
    /// CSV or JSON file of parameter vectors, one per row.
    #[arg(long)]
    input: PathBuf,
    /// Destination for the JSON array of converted vectors.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BhattArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Skew in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// CSV or JSON file of natural parameter vectors; rows 2i and 2i+1 form
    /// pair i. Use `natparam --to natural` to convert source parameters.
    #[arg(long)]
    input: PathBuf,
    /// Destination for the JSON report (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CentroidArgs {
    /// Skew in [0, 1]; the endpoints are solved at the standard interior
    /// substitute 1e-6 (resp. 1 - 1e-6).
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Convex generator: shannon, shannon-xlogx, burg, or quadratic.
    #[arg(long, default_value = "shannon")]
    generator: String,
    #[arg(long, value_enum, default_value_t = InitKind::Arithmetic)]
    init: InitKind,
    /// Sup-norm step size at which iteration stops.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// CSV or JSON file of points, one per row, inside the generator domain.
    #[arg(long)]
    input: PathBuf,
    /// Optional weights, one row or one column; normalized to sum to 1.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Destination for the JSON result (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Exit with code 2 when the solver stops at the iteration cap. The
    /// result is still written.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct KmeansArgs {
    /// Number of clusters.
    #[arg(long)]
    k: usize,
    /// Skew in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Convex generator: shannon, shannon-xlogx, burg, or quadratic.
    #[arg(long, default_value = "shannon")]
    generator: String,
    #[arg(long, env = "SKEWJENSEN_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_rounds: usize,
    /// CSV or JSON file of histogram rows (smoothed on ingestion).
    #[arg(long)]
    input: PathBuf,
    /// Destination for the JSON result (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Exit with code 2 when assignments were still changing at the round
    /// cap. The result is still written.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Strictly increasing skew grid in [0, 0.5], comma separated.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Convex generator: shannon, shannon-xlogx, burg, or quadratic.
    #[arg(long, default_value = "shannon")]
    generator: String,
    #[arg(long, env = "SKEWJENSEN_SEED", default_value_t = 0)]
    seed: u64,
    /// Train fraction of each class for the stratified split.
    #[arg(long, default_value_t = 0.5)]
    split: f64,
    /// Fit and score on the full dataset instead of splitting.
    #[arg(long)]
    insample: bool,
    /// CSV or JSON file: class id in the first column, histogram bins after.
    #[arg(long)]
    input: PathBuf,
    /// Destination for the CSV curve (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Exit with code 2 when any class centroid solve hit its iteration
    /// cap. The curve is still written.
    #[arg(long)]
    strict: bool,
}

struct RunOutcome {
    payload: String,
    output: Option<PathBuf>,
    converged: bool,
    strict: bool,
}

impl RunOutcome {
    fn plain(payload: String, output: Option<PathBuf>) -> Self {
        RunOutcome {
            payload,
            output,
            converged: true,
            strict: false,
        }
    }
}

/// Parses `argv` and runs the selected subcommand. Returns the process exit
/// code: 0 on success (including `--help` and `--version`), 1 on usage or
/// input errors, 2 on numerical failure.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match run(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::EnergyIncrease { .. } | Error::InsufficientCoverage { .. } => 2,
                _ => 1,
            };
        }
    };
    match &outcome.output {
        Some(path) => {
            if let Err(e) = io::write_text(path, &outcome.payload) {
                eprintln!("error: {e}");
                return 1;
            }
        }
        None => print!("{}", outcome.payload),
    }
    if outcome.strict && !outcome.converged {
        eprintln!("error: solver stopped at its iteration cap without meeting the tolerance");
        return 2;
    }
    0
}

fn run(command: Command) -> Result<RunOutcome> {
    match command {
        Command::Div(args) => run_div(args),
        Command::Profile(args) => run_profile(args),
        Command::Natparam(args) => run_natparam(args),
        Command::Bhatt(args) => run_bhatt(args),
        Command::Centroid(args) => run_centroid(args),
        Command::Kmeans(args) => run_kmeans(args),
        Command::Sweep(args) => run_sweep(args),
    }
}

fn ensure_even(rows: usize) -> Result<()> {
    if rows % 2 != 0 {
        return Err(Error::InvalidConfig(format!(
            "pair input needs an even number of rows, got {rows}"
        )));
    }
    Ok(())
}

fn json_records(records: &[String]) -> String {
    if records.is_empty() {
        return "[]\n".to_string();
    }
    format!("[\n  {}\n]\n", records.join(",\n  "))
}

fn pair_record(pair: usize, measure: &str, alpha: f64, value: f64) -> String {
    format!(
        "{{\"row_pair\":{pair},\"measure\":\"{measure}\",\"alpha\":{},\"value\":{}}}",
        io::json_number(alpha),
        io::json_number(value)
    )
}

fn run_div(args: DivArgs) -> Result<RunOutcome> {
    let mut records = Vec::new();
    if args.measure == Measure::Ekl {
        // The extension handles zero bins itself, so rows stay unsmoothed.
        let rows = io::load_matrix(&args.input)?;
        ensure_even(rows.len())?;
        for (i, pair) in rows.chunks(2).enumerate() {
            let p = PositiveMeasure::new(pair[0].clone())?;
            let q = PositiveMeasure::new(pair[1].clone())?;
            records.push(pair_record(i, "ekl", args.alpha, ekl(&p, &q)?));
        }
        return Ok(RunOutcome::plain(json_records(&records), args.output));
    }

    let histograms = io::load_histograms(&args.input, &IngestionConfig::default())?;
    ensure_even(histograms.len())?;
    let f = SeparableGenerator::new(make_generator(&args.generator)?, histograms[0].len());
    let phi = match args.measure {
        Measure::Phi => {
            let name = args.phi.as_deref().ok_or_else(|| {
                Error::InvalidConfig("measure 'phi' needs --phi".to_string())
            })?;
            Some(PhiGenerator::from_name(name)?)
        }
        _ => None,
    };
    for (i, pair) in histograms.chunks(2).enumerate() {
        let (p, q) = (&pair[0], &pair[1]);
        let value = match args.measure {
            Measure::Kl => kl(p, q)?,
            Measure::Jeffreys => jeffreys(p, q)?,
            Measure::Js => js(p, q)?,
            Measure::K => k_div(p, q)?,
            Measure::KAlpha => k_alpha(p, q, Alpha::new(args.alpha)?)?,
            Measure::JsAlpha => js_alpha(p, q, Alpha::new(args.alpha)?)?,
            Measure::Sj => sym_skew_jensen(&f, p.bins(), q.bins(), Alpha::new(args.alpha)?)?,
            Measure::Skl => skl_alpha(p, q, Alpha::new(args.alpha)?)?,
            Measure::LAlpha => l_alpha(p, q, Alpha::new(args.alpha)?)?,
            Measure::SParam => s_param(&f, p.bins(), q.bins(), args.alpha)?,
            Measure::Phi => phi_divergence(phi.as_ref().unwrap(), p, q)?,
            Measure::Ekl => unreachable!("handled above"),
        };
        records.push(pair_record(i, args.measure.name(), args.alpha, value));
    }
    Ok(RunOutcome::plain(json_records(&records), args.output))
}

fn run_profile(args: ProfileArgs) -> Result<RunOutcome> {
    let alphas = args.alphas.unwrap_or_else(default_alpha_grid);
    let ts = args
        .ts
        .unwrap_or_else(|| (0..=10).map(|i| i as f64 / 10.0).collect());
    let cells = scalar_profile(make_generator(&args.generator)?, args.x, args.y, &alphas, &ts)?;
    let mut out = String::from("alpha,t,sj\n");
    for cell in &cells {
        out.push_str(&format!("{},{},{}\n", cell.alpha, cell.t, cell.sj));
    }
    Ok(RunOutcome::plain(out, args.output))
}

fn at_row<T>(index: usize, result: Result<T>) -> Result<T> {
    result.map_err(|e| Error::Parse {
        row: index + 1,
        col: 0,
        message: e.to_string(),
    })
}

fn expect_len(row: &[f64], len: usize, what: &str) -> Result<()> {
    if row.len() != len {
        return Err(Error::InvalidConfig(format!(
            "{what} needs {len} values, got {}",
            row.len()
        )));
    }
    Ok(())
}

fn convert_row(family: FamilyArg, to: Direction, row: &[f64]) -> Result<Vec<f64>> {
    match (family, to) {
        (FamilyArg::Multinomial, Direction::Natural) => {
            let h = Histogram::new(row.to_vec())?;
            Ok(NaturalParam::from_multinomial(&h)?.theta().to_vec())
        }
        (FamilyArg::Gaussian, Direction::Natural) => {
            expect_len(row, 2, "gaussian source [mean, variance]")?;
            Ok(NaturalParam::from_gaussian(row[0], row[1])?.theta().to_vec())
        }
        (FamilyArg::Poisson, Direction::Natural) => {
            expect_len(row, 1, "poisson source [rate]")?;
            Ok(NaturalParam::from_poisson(row[0])?.theta().to_vec())
        }
        (family, Direction::Source) => {
            let fam = family.for_natural_dim(row.len());
            Ok(NaturalParam::new(fam, row.to_vec())?.to_source())
        }
    }
}

fn run_natparam(args: NatparamArgs) -> Result<RunOutcome> {
    let rows = io::load_matrix(&args.input)?;
    let mut records = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let converted = at_row(i, convert_row(args.family, args.to, row))?;
        records.push(io::json_vector(&converted));
    }
    Ok(RunOutcome::plain(json_records(&records), args.output))
}

fn run_bhatt(args: BhattArgs) -> Result<RunOutcome> {
    let rows = io::load_matrix(&args.input)?;
    ensure_even(rows.len())?;
    let alpha = Alpha::new(args.alpha)?;
    let mut records = Vec::with_capacity(rows.len() / 2);
    for (i, pair) in rows.chunks(2).enumerate() {
        let fam = args.family.for_natural_dim(pair[0].len());
        let p = at_row(2 * i, NaturalParam::new(fam, pair[0].clone()))?;
        let q = at_row(2 * i + 1, NaturalParam::new(fam, pair[1].clone()))?;
        let value = bhattacharyya_alpha(&p, &q, alpha)?;
        records.push(format!(
            "{{\"pair\":{i},\"family\":\"{}\",\"alpha\":{},\"value\":{}}}",
            args.family.cli_name(),
            io::json_number(args.alpha),
            io::json_number(value)
        ));
    }
    Ok(RunOutcome::plain(json_records(&records), args.output))
}

fn load_weights(path: &Path) -> Result<Vec<f64>> {
    let rows = io::load_matrix(path)?;
    let flat: Vec<f64> = if rows.len() == 1 {
        rows[0].clone()
    } else if rows.iter().all(|r| r.len() == 1) {
        rows.iter().map(|r| r[0]).collect()
    } else {
        return Err(Error::InvalidConfig(
            "weights file must be a single row or a single column".to_string(),
        ));
    };
    let sum: f64 = flat.iter().sum();
    if !sum.is_finite() || !(sum > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "weights must sum to a positive number, got {sum}"
        )));
    }
    Ok(flat.iter().map(|w| w / sum).collect())
}

fn centroid_json(result: &CentroidResult) -> String {
    format!(
        "{{\n  \"center\": {},\n  \"iterations\": {},\n  \"converged\": {},\n  \"residual\": {},\n  \"energy_trace\": {}\n}}\n",
        io::json_vector(&result.center),
        result.iterations,
        result.converged,
        io::json_number(result.residual),
        io::json_vector(&result.energy_trace)
    )
}

fn run_centroid(args: CentroidArgs) -> Result<RunOutcome> {
    let points = io::load_matrix(&args.input)?;
    let weights = match &args.weights {
        Some(path) => Some(load_weights(path)?),
        None => None,
    };
    let f = SeparableGenerator::new(make_generator(&args.generator)?, points[0].len());
    let problem = CentroidProblem::new(f, points, weights, Alpha::new(args.alpha)?)?;
    let options = SolverOptions {
        init: args.init.into(),
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let result = solve_centroid(&problem, &options)?;
    Ok(RunOutcome {
        payload: centroid_json(&result),
        output: args.output,
        converged: result.converged,
        strict: args.strict,
    })
}

fn kmeans_json(result: &KmeansResult) -> String {
    let assignments: Vec<String> = result.assignments.iter().map(|a| a.to_string()).collect();
    let centers: Vec<String> = result.centers.iter().map(|c| io::json_vector(c)).collect();
    format!(
        "{{\n  \"assignments\": [{}],\n  \"centers\": [{}],\n  \"objective_trace\": {},\n  \"rounds\": {},\n  \"converged\": {}\n}}\n",
        assignments.join(","),
        centers.join(","),
        io::json_vector(&result.objective_trace),
        result.rounds,
        result.converged
    )
}

fn run_kmeans(args: KmeansArgs) -> Result<RunOutcome> {
    let histograms = io::load_histograms(&args.input, &IngestionConfig::default())?;
    let result = kmeans(
        &histograms,
        args.k,
        Alpha::new(args.alpha)?,
        make_generator(&args.generator)?,
        args.seed,
        args.max_rounds,
    )?;
    Ok(RunOutcome {
        payload: kmeans_json(&result),
        output: args.output,
        converged: result.converged,
        strict: args.strict,
    })
}

fn run_sweep(args: SweepArgs) -> Result<RunOutcome> {
    let data = io::load_labeled(&args.input, &IngestionConfig::default())?;
    let config = SweepConfig {
        alphas: args.alphas.unwrap_or_else(default_alpha_grid),
        generator: make_generator(&args.generator)?,
        split: args.split,
        seed: args.seed,
        insample: args.insample,
    };
    let report = alpha_sweep(&data, &config)?;
    Ok(RunOutcome {
        payload: report.to_csv(),
        output: args.output,
        converged: report.all_converged,
        strict: args.strict,
    })
}
