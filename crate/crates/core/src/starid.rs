//! Set-level trajectory distance, its time-averaged variant, and
//! sliding-window evaluation series.
//!
//! The set distance optimally associates truths with estimates; a matched
//! pair pays its capped pairwise distance, an unmatched truth is a whole
//! missed trajectory and an unmatched estimate a whole false one, each priced
//! by cutoff times duration. Units are meter-seconds for the set distance and
//! meters for the window-averaged variant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assignment::{solve, AssignmentProblem};
use crate::baselines::{gospa, imta, ospa, ospa2, points_at, sample_tracks};
use crate::error::{Error, Result};
use crate::pairwise::{align, pair_distance_pow, unmatched_cap_pow, MetricConfig};
use crate::trajectory::{Interval, TrajectorySet};
use crate::util::{format_sig9, pow_p, root_p};

/// One associated truth-estimate pair in a [`StarIdBreakdown`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchedPair {
    /// Index into the truth set.
    pub truth: usize,
    /// Index into the estimate set.
    pub estimate: usize,
    /// The pair's contribution to the total, in p-th-power units.
    pub cost_pow: f64,
    /// Seconds of segment false alarm inside the pair.
    pub t_sfa: f64,
    /// Seconds of segment missed detection inside the pair.
    pub t_smd: f64,
    /// True when the both-unmatched cap undercut the pairwise distance.
    pub capped: bool,
}

/// Set distance value plus the association that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct StarIdBreakdown {
    pub value: f64,
    pub matched: Vec<MatchedPair>,
    /// Truth indices left unassociated: whole missed trajectories.
    pub missed_truths: Vec<usize>,
    /// Estimate indices left unassociated: whole false trajectories.
    pub false_estimates: Vec<usize>,
}

/// Set distance between truths and estimates, in meter-seconds.
pub fn star_id(truth: &TrajectorySet, estimate: &TrajectorySet, cfg: &MetricConfig) -> Result<f64> {
    Ok(star_id_detailed(truth, estimate, cfg)?.value)
}

/// [`star_id`] plus the optimal association and per-pair FA/MD diagnostics.
pub fn star_id_detailed(
    truth: &TrajectorySet,
    estimate: &TrajectorySet,
    cfg: &MetricConfig,
) -> Result<StarIdBreakdown> {
    cfg.validate()?;
    if truth.dim() != estimate.dim() {
        return Err(Error::DimMismatch { left: truth.dim(), right: estimate.dim() });
    }
    let fs = truth.trajectories();
    let gs = estimate.trajectories();
    let r = truth.dim() as f64;
    let mut pair = vec![vec![0.0_f64; gs.len()]; fs.len()];
    let mut was_capped = vec![vec![false; gs.len()]; fs.len()];
    for (j, f) in fs.iter().enumerate() {
        for (i, g) in gs.iter().enumerate() {
            let raw = pair_distance_pow(f, g, cfg)?;
            let cap = unmatched_cap_pow(f, g, cfg);
            pair[j][i] = raw.min(cap);
            was_capped[j][i] = cap < raw;
        }
    }
    let row_unassigned: Vec<f64> =
        fs.iter().map(|f| r * pow_p(cfg.c_tmd * f.duration(), cfg.p)).collect();
    let col_unassigned: Vec<f64> =
        gs.iter().map(|g| r * pow_p(cfg.c_tfa * g.duration(), cfg.p)).collect();
    let problem = AssignmentProblem::new(pair, row_unassigned, col_unassigned)?;
    let res = solve(&problem);
    let matched = res
        .matches
        .iter()
        .map(|&(j, i)| {
            let a = align(&fs[j], &gs[i]);
            MatchedPair {
                truth: j,
                estimate: i,
                cost_pow: problem.pair_cost()[j][i],
                t_sfa: a.t_sfa,
                t_smd: a.t_smd,
                capped: was_capped[j][i],
            }
        })
        .collect();
    Ok(StarIdBreakdown {
        value: root_p(res.total_cost, cfg.p),
        matched,
        missed_truths: res.unmatched_rows,
        false_estimates: res.unmatched_cols,
    })
}

/// Set distance of the window-clipped sets divided by the window length, in
/// meters. Trajectories absent from the window are excluded entirely.
pub fn ta_star_id(
    truth: &TrajectorySet,
    estimate: &TrajectorySet,
    cfg: &MetricConfig,
    window: Interval,
) -> Result<f64> {
    if window.is_empty() {
        return Err(Error::DegenerateWindow { start: window.start, end: window.end });
    }
    let value = star_id(&truth.clip(window), &estimate.clip(window), cfg)?;
    Ok(value / window.len())
}

/// Sliding-window shape: evaluation at instant `k` covers
/// `[max(start_clamp, k - length), k]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowPolicy {
    pub length: f64,
    pub start_clamp: f64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy { length: 10.0, start_clamp: 1.0 }
    }
}

impl WindowPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) || !self.length.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "window length {}, need 0 < length < inf",
                self.length
            )));
        }
        if !self.start_clamp.is_finite() {
            return Err(Error::InvalidConfig("window start clamp must be finite".into()));
        }
        Ok(())
    }

    /// Window ending at `k`; degenerates to `[k, k]` before the clamp.
    pub fn window_at(&self, k: f64) -> Interval {
        Interval::new((k - self.length).max(self.start_clamp).min(k), k)
    }
}

/// Which distance a series reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    StarId,
    TaStarId,
    Ospa,
    Gospa,
    Ospa2,
    Imta,
}

impl MetricKind {
    pub const ALL: [MetricKind; 6] = [
        MetricKind::StarId,
        MetricKind::TaStarId,
        MetricKind::Ospa,
        MetricKind::Gospa,
        MetricKind::Ospa2,
        MetricKind::Imta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::StarId => "star_id",
            MetricKind::TaStarId => "ta_star_id",
            MetricKind::Ospa => "ospa",
            MetricKind::Gospa => "gospa",
            MetricKind::Ospa2 => "ospa2",
            MetricKind::Imta => "imta",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "star_id" => Ok(MetricKind::StarId),
            "ta_star_id" => Ok(MetricKind::TaStarId),
            "ospa" => Ok(MetricKind::Ospa),
            "gospa" => Ok(MetricKind::Gospa),
            "ospa2" => Ok(MetricKind::Ospa2),
            "imta" => Ok(MetricKind::Imta),
            other => Err(Error::Parse(format!("unknown metric kind {other:?}"))),
        }
    }
}

/// Knobs for the comparison metrics in windowed evaluation; the trajectory
/// metrics take everything they need from [`MetricConfig`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    /// Cutoff `c` for the point and track metrics, meters.
    pub ospa_cutoff: f64,
    /// Cardinality divisor of the unnormalized point metric.
    pub gospa_alpha: f64,
    /// Time order of the windowed track metric's base distance.
    pub ospa2_q: f64,
    /// Exponent of the integral track metric's penalty terms.
    pub imta_order: f64,
    /// Grid spacing when sampling trajectories into tracks, seconds.
    pub sample_step: f64,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            ospa_cutoff: 10.0,
            gospa_alpha: 2.0,
            ospa2_q: 1.0,
            imta_order: 1.0,
            sample_step: 1.0,
        }
    }
}

impl EvalParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.ospa_cutoff > 0.0) || !self.ospa_cutoff.is_finite() {
            return Err(Error::InvalidConfig(format!("cutoff {}, need > 0", self.ospa_cutoff)));
        }
        if !(self.gospa_alpha > 0.0 && self.gospa_alpha <= 2.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha {}, need 0 < alpha <= 2",
                self.gospa_alpha
            )));
        }
        for (name, v) in [("ospa2 q", self.ospa2_q), ("imta order", self.imta_order)] {
            if !(v >= 1.0) || !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} {v}, need >= 1")));
            }
        }
        if !(self.sample_step > 0.0) || !self.sample_step.is_finite() {
            return Err(Error::InvalidConfig(format!("sample step {}, need > 0", self.sample_step)));
        }
        Ok(())
    }
}

/// One metric evaluated on a sequence of instants.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSeries {
    pub kind: MetricKind,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl MetricSeries {
    /// Validates matching lengths and strictly increasing times.
    pub fn new(kind: MetricKind, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("times must be strictly increasing".into()));
        }
        Ok(MetricSeries { kind, times, values })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `time,value,kind` rows with fixed nine-significant-digit numbers.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("time,value,kind\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            out.push_str(&format!("{},{},{}\n", format_sig9(*t), format_sig9(*v), self.kind));
        }
        out
    }

    /// The same rows as objects in a JSON array.
    pub fn to_json_string(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .times
            .iter()
            .zip(&self.values)
            .map(|(t, v)| serde_json::json!({ "time": t, "value": v, "kind": self.kind.name() }))
            .collect();
        serde_json::to_string_pretty(&rows).expect("plain numbers and strings serialize")
    }
}

fn sample_grid(window: Interval, step: f64) -> Vec<f64> {
    let count = ((window.len() / step) + 1e-9).floor() as usize;
    (0..=count).map(|j| window.start + j as f64 * step).collect()
}

/// Evaluates one metric over sliding windows ending at each instant.
///
/// The trajectory metrics see window-clipped sets; the point metrics see the
/// sets of points alive at the instant itself; the track metric sees the sets
/// sampled on the window grid. Instants whose window has no length are
/// skipped for the time-averaged metric and keep their natural value for the
/// rest.
pub fn windowed_series(
    truth: &TrajectorySet,
    estimate: &TrajectorySet,
    kind: MetricKind,
    cfg: &MetricConfig,
    params: &EvalParams,
    eval_times: &[f64],
    policy: &WindowPolicy,
) -> Result<MetricSeries> {
    cfg.validate()?;
    params.validate()?;
    policy.validate()?;
    if truth.dim() != estimate.dim() {
        return Err(Error::DimMismatch { left: truth.dim(), right: estimate.dim() });
    }
    if eval_times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("evaluation times must be strictly increasing".into()));
    }
    let mut times = Vec::with_capacity(eval_times.len());
    let mut values = Vec::with_capacity(eval_times.len());
    for &k in eval_times {
        let window = policy.window_at(k);
        let value = match kind {
            MetricKind::StarId => star_id(&truth.clip(window), &estimate.clip(window), cfg)?,
            MetricKind::TaStarId => {
                if window.is_empty() {
                    continue;
                }
                ta_star_id(truth, estimate, cfg, window)?
            }
            MetricKind::Imta => {
                imta(&truth.clip(window), &estimate.clip(window), cfg, params.imta_order)?
            }
            MetricKind::Ospa => {
                ospa(&points_at(truth, k), &points_at(estimate, k), cfg.p, params.ospa_cutoff)?
            }
            MetricKind::Gospa => gospa(
                &points_at(truth, k),
                &points_at(estimate, k),
                cfg.p,
                params.ospa_cutoff,
                params.gospa_alpha,
            )?,
            MetricKind::Ospa2 => {
                let grid = sample_grid(window, params.sample_step);
                let xw = sample_tracks(truth, &grid);
                let yw = sample_tracks(estimate, &grid);
                let indices: Vec<i64> = (0..grid.len() as i64).collect();
                let weights = vec![1.0 / grid.len() as f64; grid.len()];
                ospa2(&xw, &yw, &indices, &weights, cfg.p, params.ospa2_q, params.ospa_cutoff)?
            }
        };
        times.push(k);
        values.push(value);
    }
    Ok(MetricSeries { kind, times, values })
}
