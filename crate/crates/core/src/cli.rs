//! Command-line front end: distance computation, cutoff sweeps, scenario
//! generation, and the property-test suites.
//!
//! Exit codes: 0 success, 2 unreadable input or bad flag combination,
//! 3 dimension mismatch, 4 numeric non-convergence, 1 anything else.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms;
use crate::baselines::{gospa, imta, load_tracks_csv, ospa, ospa2, sample_tracks, Track};
use crate::error::{Error, Result};
use crate::pairwise::MetricConfig;
use crate::scenarios::{
    gen_maneuvering, gen_multitarget, monte_carlo_multitarget, ManeuverSpec, ScenarioSpec,
    SeriesRequest,
};
use crate::starid::{
    star_id, ta_star_id, windowed_series, EvalParams, MetricKind, MetricSeries, WindowPolicy,
};
use crate::trajectory::{Interval, TrajectorySet};
use crate::util::format_sig9;

const EXIT_INPUT: i32 = 2;
const EXIT_DIM: i32 = 3;
const EXIT_NUMERIC: i32 = 4;

/// Spatio-temporal distances between sets of continuous-time trajectories.
#[derive(Debug, Parser)]
#[command(name = "starid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between a truth file and an estimate file.
    Compute(ComputeArgs),
    /// Monte Carlo cutoff sweep on a generated scenario.
    Sweep(SweepArgs),
    /// Write deterministic truth and measurement files for a scenario.
    Scenario(ScenarioArgs),
    /// Run the property-test suites and report pass/fail per suite.
    Axioms(AxiomsArgs),
}

#[derive(Debug, Args)]
struct MetricFlags {
    /// Distance to evaluate.
    #[arg(long, default_value = "star-id", value_parser = MetricKind::from_str)]
    metric: MetricKind,
    /// Order of the distance.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Segment cutoff, meters (sets both false-alarm and missed-detection).
    #[arg(long = "c-s")]
    c_s: Option<f64>,
    /// Trajectory cutoff, meters per second (sets both directions).
    #[arg(long = "c-t")]
    c_t: Option<f64>,
    /// Expert override: segment false-alarm cutoff.
    #[arg(long = "c-sfa")]
    c_sfa: Option<f64>,
    /// Expert override: segment missed-detection cutoff.
    #[arg(long = "c-smd")]
    c_smd: Option<f64>,
    /// Expert override: trajectory false-alarm cutoff.
    #[arg(long = "c-tfa")]
    c_tfa: Option<f64>,
    /// Expert override: trajectory missed-detection cutoff.
    #[arg(long = "c-tmd")]
    c_tmd: Option<f64>,
    /// Accept unequal false-alarm and missed-detection cutoffs.
    #[arg(long)]
    allow_asymmetry: bool,
    /// Cardinality divisor of the unnormalized point distance.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Cutoff of the point and track distances, meters.
    #[arg(long, default_value_t = 10.0)]
    cutoff: f64,
    /// Time order of the windowed track distance.
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Penalty exponent of the integral track distance.
    #[arg(long = "imta-order", default_value_t = 1.0)]
    imta_order: f64,
    /// Evaluation grid spacing, seconds.
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    /// Sliding-window length in seconds, or `none` for one value over the
    /// full domain.
    #[arg(long, default_value = "none")]
    window: String,
    /// Expert override: relative quadrature tolerance.
    #[arg(long = "quad-tol")]
    quad_tol: Option<f64>,
    /// Expert override: maximum quadrature refinement depth.
    #[arg(long = "quad-depth")]
    quad_depth: Option<u32>,
}

impl MetricFlags {
    fn config(&self, default_c_s: f64, default_c_t: f64) -> Result<MetricConfig> {
        let c_s = self.c_s.unwrap_or(default_c_s);
        let c_t = self.c_t.unwrap_or(default_c_t);
        let mut cfg = MetricConfig::symmetric(self.p, c_s, c_t);
        if let Some(v) = self.c_sfa {
            cfg.c_sfa = v;
        }
        if let Some(v) = self.c_smd {
            cfg.c_smd = v;
        }
        if let Some(v) = self.c_tfa {
            cfg.c_tfa = v;
        }
        if let Some(v) = self.c_tmd {
            cfg.c_tmd = v;
        }
        if self.allow_asymmetry {
            cfg.distance_mode = false;
        }
        if let Some(tol) = self.quad_tol {
            cfg.quad.rel_tol = tol;
        }
        if let Some(depth) = self.quad_depth {
            cfg.quad.max_depth = depth;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn params(&self) -> Result<EvalParams> {
        let params = EvalParams {
            ospa_cutoff: self.cutoff,
            gospa_alpha: self.alpha,
            ospa2_q: self.q,
            imta_order: self.imta_order,
            sample_step: self.step,
        };
        params.validate()?;
        Ok(params)
    }

    fn window(&self) -> Result<Option<f64>> {
        parse_window(&self.window)
    }
}

fn parse_window(text: &str) -> Result<Option<f64>> {
    if text == "none" {
        return Ok(None);
    }
    let value: f64 = text
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("window `{text}`, need seconds or `none`")))?;
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::InvalidArgument(format!("window {value}, need > 0")));
    }
    Ok(Some(value))
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Truth file: trajectory-set JSON or track CSV.
    truth: PathBuf,
    /// Estimate file, same format as the truth.
    estimate: PathBuf,
    #[command(flatten)]
    flags: MetricFlags,
    /// Write the result here as well as printing it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// File format for --out.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SweepAxis {
    /// Vary the segment cutoff.
    #[value(name = "c-s")]
    CS,
    /// Vary the trajectory cutoff.
    #[value(name = "c-t")]
    CT,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Which cutoff the sweep varies.
    #[arg(long, value_enum)]
    axis: SweepAxis,
    /// Cutoff values to sweep, meters.
    #[arg(long, value_delimiter = ',', default_values_t = vec![500.0, 1000.0, 1500.0, 2000.0])]
    values: Vec<f64>,
    /// Scenario file (TOML or JSON); defaults to the built-in four-target
    /// scenario.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Monte Carlo runs to average.
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Master seed; overrides the scenario file's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Least-squares fit window, seconds.
    #[arg(long = "fit-window", default_value_t = 10.0)]
    fit_window: f64,
    #[command(flatten)]
    flags: MetricFlags,
    /// Directory for the per-value series files.
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
    /// File format for the series files.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScenarioKind {
    /// Linear multi-target scenario with position measurements.
    Multi,
    /// Single maneuvering target with bearing-only sensors.
    Maneuver,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Scenario file (TOML or JSON); defaults to the built-in scenario of
    /// the chosen kind.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ScenarioKind::Multi)]
    kind: ScenarioKind,
    /// Master seed; overrides the scenario file's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Generate noise-free measurements.
    #[arg(long = "zero-noise")]
    zero_noise: bool,
    /// Directory for truth.json and measurements.csv.
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct AxiomsArgs {
    /// Seed of the generated test cases.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Run reduced case counts.
    #[arg(long)]
    quick: bool,
}

/// Parses the process arguments, runs the selected command, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Scenario(args) => cmd_scenario(&args),
        Command::Axioms(args) => cmd_axioms(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_)
        | Error::Io(_)
        | Error::InvalidArgument(_)
        | Error::InvalidConfig(_)
        | Error::InvalidTrajectory(_) => EXIT_INPUT,
        Error::DimMismatch { .. } => EXIT_DIM,
        Error::QuadratureNonConvergence { .. } | Error::FitNonConvergence { .. } => EXIT_NUMERIC,
        _ => 1,
    }
}

enum InputPair {
    Sets(TrajectorySet, TrajectorySet),
    Tracks(Vec<Track>, Vec<Track>),
}

fn extension(path: &Path) -> Result<&str> {
    path.extension().and_then(|e| e.to_str()).ok_or_else(|| {
        Error::Parse(format!("{}: need a .json or .csv extension", path.display()))
    })
}

fn load_pair(truth: &Path, estimate: &Path) -> Result<InputPair> {
    match (extension(truth)?, extension(estimate)?) {
        ("json", "json") => {
            Ok(InputPair::Sets(TrajectorySet::load(truth)?, TrajectorySet::load(estimate)?))
        }
        ("csv", "csv") => {
            Ok(InputPair::Tracks(load_tracks_csv(truth)?, load_tracks_csv(estimate)?))
        }
        (a, b) => Err(Error::Parse(format!("mixed input formats .{a} and .{b}"))),
    }
}

/// Union of the two sets' spans; `None` when both sets are empty.
fn union_domain(truth: &TrajectorySet, estimate: &TrajectorySet) -> Option<Interval> {
    let domains = truth.trajectories().iter().chain(estimate.trajectories()).map(|f| f.domain());
    let mut union: Option<Interval> = None;
    for d in domains {
        union = Some(match union {
            None => d,
            Some(u) => Interval::new(u.start.min(d.start), u.end.max(d.end)),
        });
    }
    union
}

/// Multiples of `step` strictly after `span.start`, up to `span.end`.
fn grid_times(span: Interval, step: f64) -> Vec<f64> {
    let first = (span.start / step + 1e-9).floor() as i64 + 1;
    let last = (span.end / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn series_text(series: &MetricSeries, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => series.to_csv_string(),
        OutputFormat::Json => series.to_json_string(),
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

/// Prints to stdout, stopping quietly if the consumer closed the pipe.
fn emit(line: &str) -> bool {
    use std::io::Write as _;
    writeln!(std::io::stdout().lock(), "{line}").is_ok()
}

fn print_series(series: &MetricSeries) {
    for (t, v) in series.times.iter().zip(&series.values) {
        if !emit(&format!("{} {}", format_sig9(*t), format_sig9(*v))) {
            return;
        }
    }
}

fn single_value_text(kind: MetricKind, value: f64, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => format!("value,kind\n{},{}\n", format_sig9(value), kind.name()),
        OutputFormat::Json => {
            format!("{{\"kind\":\"{}\",\"value\":{}}}\n", kind.name(), format_sig9(value))
        }
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<i32> {
    let cfg = args.flags.config(10.0, 10.0)?;
    let params = args.flags.params()?;
    let window = args.flags.window()?;
    let kind = args.flags.metric;
    match load_pair(&args.truth, &args.estimate)? {
        InputPair::Sets(truth, estimate) => {
            if truth.dim() != estimate.dim() {
                return Err(Error::DimMismatch { left: truth.dim(), right: estimate.dim() });
            }
            match window {
                Some(length) => {
                    let span = union_domain(&truth, &estimate).ok_or_else(|| {
                        Error::InvalidArgument("both trajectory sets are empty".into())
                    })?;
                    let policy = WindowPolicy { length, start_clamp: span.start };
                    let times = grid_times(span, params.sample_step);
                    let series =
                        windowed_series(&truth, &estimate, kind, &cfg, &params, &times, &policy)?;
                    print_series(&series);
                    if let Some(out) = &args.out {
                        write_out(out, &series_text(&series, args.format))?;
                    }
                }
                None => {
                    let value = full_domain_value(&truth, &estimate, kind, &cfg, &params)?;
                    emit(&format_sig9(value));
                    if let Some(out) = &args.out {
                        write_out(out, &single_value_text(kind, value, args.format))?;
                    }
                }
            }
        }
        InputPair::Tracks(truth, estimate) => {
            if window.is_some() {
                return Err(Error::InvalidArgument(
                    "track CSV input supports --window none only".into(),
                ));
            }
            track_compute(args, &truth, &estimate, kind, &params)?;
        }
    }
    Ok(0)
}

/// One number for the whole overlap of the two sets' domains.
fn full_domain_value(
    truth: &TrajectorySet,
    estimate: &TrajectorySet,
    kind: MetricKind,
    cfg: &MetricConfig,
    params: &EvalParams,
) -> Result<f64> {
    match kind {
        MetricKind::StarId => star_id(truth, estimate, cfg),
        MetricKind::TaStarId => {
            let span = union_domain(truth, estimate)
                .ok_or_else(|| Error::InvalidArgument("both trajectory sets are empty".into()))?;
            ta_star_id(truth, estimate, cfg, span)
        }
        MetricKind::Imta => imta(truth, estimate, cfg, params.imta_order),
        MetricKind::Ospa2 => {
            let span = union_domain(truth, estimate)
                .ok_or_else(|| Error::InvalidArgument("both trajectory sets are empty".into()))?;
            let times = grid_times(span, params.sample_step);
            if times.is_empty() {
                return Err(Error::InvalidArgument("domain shorter than --step".into()));
            }
            let x = sample_tracks(truth, &times);
            let y = sample_tracks(estimate, &times);
            let indices: Vec<i64> = (1..=times.len() as i64).collect();
            let weights = vec![1.0 / indices.len() as f64; indices.len()];
            ospa2(&x, &y, &indices, &weights, cfg.p, params.ospa2_q, params.ospa_cutoff)
        }
        MetricKind::Ospa | MetricKind::Gospa => Err(Error::InvalidArgument(format!(
            "{} is an instantaneous distance, pass --window <seconds>",
            kind.name()
        ))),
    }
}

/// Per-index series (point distances) or one value (track distance) from
/// track CSV inputs.
fn track_compute(
    args: &ComputeArgs,
    truth: &[Track],
    estimate: &[Track],
    kind: MetricKind,
    params: &EvalParams,
) -> Result<()> {
    let mut indices: Vec<i64> =
        truth.iter().chain(estimate).flat_map(|tr| tr.points().keys().copied()).collect();
    indices.sort_unstable();
    indices.dedup();
    if indices.is_empty() {
        return Err(Error::InvalidArgument("both track files are empty".into()));
    }
    match kind {
        MetricKind::Ospa | MetricKind::Gospa => {
            let mut times = Vec::with_capacity(indices.len());
            let mut values = Vec::with_capacity(indices.len());
            for &k in &indices {
                let xs: Vec<Vec<f64>> =
                    truth.iter().filter_map(|tr| tr.point_at(k)).map(<[f64]>::to_vec).collect();
                let ys: Vec<Vec<f64>> =
                    estimate.iter().filter_map(|tr| tr.point_at(k)).map(<[f64]>::to_vec).collect();
                let value = match kind {
                    MetricKind::Ospa => ospa(&xs, &ys, args.flags.p, params.ospa_cutoff)?,
                    _ => gospa(&xs, &ys, args.flags.p, params.ospa_cutoff, params.gospa_alpha)?,
                };
                times.push(k as f64 * params.sample_step);
                values.push(value);
            }
            let series = MetricSeries::new(kind, times, values)?;
            print_series(&series);
            if let Some(out) = &args.out {
                write_out(out, &series_text(&series, args.format))?;
            }
        }
        MetricKind::Ospa2 => {
            let weights = vec![1.0 / indices.len() as f64; indices.len()];
            let value = ospa2(
                truth,
                estimate,
                &indices,
                &weights,
                args.flags.p,
                params.ospa2_q,
                params.ospa_cutoff,
            )?;
            emit(&format_sig9(value));
            if let Some(out) = &args.out {
                write_out(out, &single_value_text(kind, value, args.format))?;
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{} needs trajectory-set JSON input, not track CSV",
                kind.name()
            )))
        }
    }
    Ok(())
}

fn format_value_tag(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    if args.values.is_empty() {
        return Err(Error::InvalidArgument("need at least one sweep value".into()));
    }
    if args.values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument("sweep values must be positive and finite".into()));
    }
    let mut spec = match &args.spec {
        Some(path) => ScenarioSpec::load(path)?,
        None => ScenarioSpec::default(),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    spec.validate()?;
    let base = args.flags.config(1000.0, 1000.0)?;
    let params = args.flags.params()?;
    let length = args
        .flags
        .window()?
        .ok_or_else(|| Error::InvalidArgument("sweep needs --window <seconds>".into()))?;

    let start = spec.targets.iter().map(|t| t.birth).fold(f64::INFINITY, f64::min);
    let end = spec.targets.iter().map(|t| t.death).fold(f64::NEG_INFINITY, f64::max);
    if !start.is_finite() || !end.is_finite() {
        return Err(Error::InvalidArgument("scenario has no targets".into()));
    }
    let times = grid_times(Interval::new(start, end), params.sample_step);
    let eval_policy = WindowPolicy { length, start_clamp: start };
    let fit_policy = WindowPolicy { length: args.fit_window, start_clamp: start };

    let axis_name = match args.axis {
        SweepAxis::CS => "c_s",
        SweepAxis::CT => "c_t",
    };
    let requests: Vec<SeriesRequest> = args
        .values
        .iter()
        .map(|&v| {
            let mut cfg = base;
            match args.axis {
                SweepAxis::CS => {
                    cfg.c_sfa = v;
                    cfg.c_smd = v;
                }
                SweepAxis::CT => {
                    cfg.c_tfa = v;
                    cfg.c_tmd = v;
                }
            }
            SeriesRequest {
                label: format!("{axis_name}_{}", format_value_tag(v)),
                kind: args.flags.metric,
                cfg,
                params,
            }
        })
        .collect();

    let series = monte_carlo_multitarget(
        &spec,
        args.runs,
        &requests,
        &times,
        &fit_policy,
        &eval_policy,
    )?;
    std::fs::create_dir_all(&args.out_dir)?;
    let ext = match args.format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    for (request, s) in requests.iter().zip(&series) {
        let path = args.out_dir.join(format!("sweep_{}.{ext}", request.label));
        write_out(&path, &series_text(s, args.format))?;
        let mean = s.values.iter().sum::<f64>() / s.values.len().max(1) as f64;
        emit(&format!("{} mean {} -> {}", request.label, format_sig9(mean), path.display()));
    }
    Ok(0)
}

fn cmd_scenario(args: &ScenarioArgs) -> Result<i32> {
    std::fs::create_dir_all(&args.out_dir)?;
    let truth_path = args.out_dir.join("truth.json");
    let meas_path = args.out_dir.join("measurements.csv");
    let (truth, log) = match args.kind {
        ScenarioKind::Multi => {
            let mut spec = match &args.spec {
                Some(path) => ScenarioSpec::load(path)?,
                None => ScenarioSpec::default(),
            };
            if let Some(seed) = args.seed {
                spec.seed = seed;
            }
            if args.zero_noise {
                spec.noise_var = 0.0;
            }
            gen_multitarget(&spec)?
        }
        ScenarioKind::Maneuver => {
            let mut spec = match &args.spec {
                Some(path) => ManeuverSpec::load(path)?,
                None => ManeuverSpec::default(),
            };
            if let Some(seed) = args.seed {
                spec.seed = seed;
            }
            if args.zero_noise {
                for sensor in &mut spec.sensors {
                    sensor.bearing_noise_var = 0.0;
                }
            }
            gen_maneuvering(&spec)?
        }
    };
    truth.save(&truth_path)?;
    log.save_csv(&meas_path)?;
    emit(&format!("{} trajectories -> {}", truth.len(), truth_path.display()));
    emit(&format!("{} measurements -> {}", log.entries().len(), meas_path.display()));
    Ok(0)
}

fn cmd_axioms(args: &AxiomsArgs) -> Result<i32> {
    let reports = axioms::run_all(args.seed, args.quick)?;
    let mut failed = false;
    for report in &reports {
        emit(&format!("{report}"));
        failed |= !report.passed();
    }
    Ok(if failed { 1 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_flag_parses_none_and_seconds() {
        assert_eq!(parse_window("none").unwrap(), None);
        assert_eq!(parse_window("12.5").unwrap(), Some(12.5));
        assert!(parse_window("later").is_err());
        assert!(parse_window("-3").is_err());
        assert!(parse_window("0").is_err());
    }

    #[test]
    fn error_exit_codes_match_documentation() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), 2);
        assert_eq!(exit_code(&Error::DimMismatch { left: 2, right: 3 }), 3);
        assert_eq!(
            exit_code(&Error::QuadratureNonConvergence { best: 1.0, err: 0.5, tol: 1e-9 }),
            4
        );
        assert_eq!(exit_code(&Error::SizeGuard { size: 9, limit: 3 }), 1);
    }

    #[test]
    fn grid_times_stay_inside_the_span() {
        assert_eq!(grid_times(Interval::new(1.0, 5.0), 1.0), vec![2.0, 3.0, 4.0, 5.0]);
        assert_eq!(grid_times(Interval::new(0.25, 1.1), 0.5), vec![0.5, 1.0]);
    }

    #[test]
    fn value_tags_drop_trailing_zeros() {
        assert_eq!(format_value_tag(500.0), "500");
        assert_eq!(format_value_tag(0.5), "0.5");
    }

    #[test]
    fn cli_declaration_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
