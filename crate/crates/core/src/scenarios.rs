//! Simulation scenarios, polynomial fitting from measurements, and
//! Monte-Carlo evaluation pipelines.
//!
//! Two generators are provided: a multi-target constant-velocity scenario
//! observed through noisy position measurements, and a single maneuvering
//! target observed through noisy bearings from corner sensors. Estimates are
//! sliding-window polynomial fits stitched into one trajectory per target.

use std::collections::BTreeSet;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairwise::MetricConfig;
use crate::starid::{windowed_series, EvalParams, MetricKind, MetricSeries, WindowPolicy};
use crate::trajectory::{Interval, PolyPiece, TFoT, TrajectorySet};
use crate::util::splitmix64;

/// A fixed bearing sensor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sensor {
    pub id: String,
    /// (x, y) position in meters.
    pub position: [f64; 2],
    pub bearing_noise_var: f64,
}

/// One constant-velocity target of the multi-target scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub birth: f64,
    pub death: f64,
    /// Position at birth, meters.
    pub start: [f64; 2],
    /// Meters per second.
    pub velocity: [f64; 2],
    /// Targets with this unset produce no measurements at all.
    #[serde(default = "default_true")]
    pub measured: bool,
}

fn default_true() -> bool {
    true
}

/// Multi-target scenario: constant-velocity targets with noisy position
/// measurements on a fixed step grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    /// Surveillance area x extent, meters.
    pub area_x: [f64; 2],
    /// Surveillance area y extent, meters.
    pub area_y: [f64; 2],
    pub targets: Vec<TargetSpec>,
    /// Polynomial order of the fitted estimates.
    pub order: usize,
    /// Measurement period, seconds.
    pub step: f64,
    /// Position measurement noise variance per axis, square meters.
    pub noise_var: f64,
    pub seed: u64,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        ScenarioSpec {
            area_x: [-3_000.0, 9_000.0],
            area_y: [-9_000.0, 15_000.0],
            targets: vec![
                TargetSpec {
                    birth: 1.0,
                    death: 100.0,
                    start: [-2_000.0, -8_000.0],
                    velocity: [80.0, 200.0],
                    measured: true,
                },
                TargetSpec {
                    birth: 10.0,
                    death: 75.0,
                    start: [8_000.0, 14_000.0],
                    velocity: [-120.0, -250.0],
                    measured: true,
                },
                TargetSpec {
                    birth: 1.0,
                    death: 90.0,
                    start: [0.0, 10_000.0],
                    velocity: [60.0, -180.0],
                    measured: true,
                },
                TargetSpec {
                    birth: 5.0,
                    death: 85.0,
                    start: [6_000.0, -5_000.0],
                    velocity: [-90.0, 150.0],
                    measured: false,
                },
            ],
            order: 2,
            step: 1.0,
            noise_var: 10_000.0,
            seed: 1,
        }
    }
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidConfig(format!("step {}, need > 0", self.step)));
        }
        if !(self.noise_var >= 0.0) || !self.noise_var.is_finite() {
            return Err(Error::InvalidConfig(format!("noise_var {}, need >= 0", self.noise_var)));
        }
        if self.order == 0 {
            return Err(Error::InvalidConfig("polynomial order must be at least 1".into()));
        }
        if self.targets.is_empty() {
            return Err(Error::InvalidConfig("scenario needs at least one target".into()));
        }
        for (i, tg) in self.targets.iter().enumerate() {
            if !(tg.birth < tg.death) || !tg.birth.is_finite() || !tg.death.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "target {i}: birth {} must precede death {}",
                    tg.birth, tg.death
                )));
            }
            if tg.start.iter().chain(&tg.velocity).any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!("target {i}: non-finite kinematics")));
            }
        }
        if self.area_x[0] >= self.area_x[1] || self.area_y[0] >= self.area_y[1] {
            return Err(Error::InvalidConfig("area bounds must be ordered".into()));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        load_spec_file(path)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        save_spec_file(path, self)
    }
}

/// One leg of the maneuvering trajectory; `turn_rate` 0 means straight.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManeuverSegment {
    pub duration: f64,
    /// Radians per second, positive counterclockwise.
    pub turn_rate: f64,
}

/// Single maneuvering target observed by bearing sensors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManeuverSpec {
    pub start: [f64; 2],
    /// Initial heading, radians.
    pub heading: f64,
    /// Meters per second, constant.
    pub speed: f64,
    pub segments: Vec<ManeuverSegment>,
    pub sensors: Vec<Sensor>,
    /// Sampling period of truth pieces and measurements, seconds.
    pub step: f64,
    /// Length of the sliding fit window, seconds.
    pub fit_window: f64,
    /// Polynomial order of the fitted estimates.
    pub order: usize,
    pub seed: u64,
}

impl Default for ManeuverSpec {
    fn default() -> Self {
        let corner = |id: &str, x: f64, y: f64| Sensor {
            id: id.to_string(),
            position: [x, y],
            bearing_noise_var: 0.0036,
        };
        // Small arena: with ~0.06 rad bearing noise the triangulated position
        // error stays well under a meter, the regime the reference tracking
        // demo uses.
        ManeuverSpec {
            start: [4.0, 3.0],
            heading: 0.3,
            speed: 0.8,
            segments: vec![
                ManeuverSegment { duration: 6.0, turn_rate: 0.0 },
                ManeuverSegment { duration: 4.0, turn_rate: 0.35 },
                ManeuverSegment { duration: 4.0, turn_rate: 0.0 },
                ManeuverSegment { duration: 3.0, turn_rate: -0.5 },
                ManeuverSegment { duration: 3.0, turn_rate: 0.0 },
            ],
            sensors: vec![
                corner("s1", 0.0, 0.0),
                corner("s2", 15.0, 0.0),
                corner("s3", 15.0, 15.0),
                corner("s4", 0.0, 15.0),
            ],
            step: 0.1,
            fit_window: 1.0,
            order: 1,
            seed: 7,
        }
    }
}

impl ManeuverSpec {
    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidConfig(format!("step {}, need > 0", self.step)));
        }
        if !(self.fit_window > 0.0) || !self.fit_window.is_finite() {
            return Err(Error::InvalidConfig(format!("fit_window {}, need > 0", self.fit_window)));
        }
        if self.order == 0 {
            return Err(Error::InvalidConfig("polynomial order must be at least 1".into()));
        }
        if !(self.speed >= 0.0) || !self.speed.is_finite() || !self.heading.is_finite() {
            return Err(Error::InvalidConfig("speed and heading must be finite".into()));
        }
        if self.segments.is_empty()
            || self.segments.iter().any(|s| !(s.duration > 0.0) || !s.turn_rate.is_finite())
        {
            return Err(Error::InvalidConfig(
                "segments need positive durations and finite turn rates".into(),
            ));
        }
        if self.sensors.is_empty() {
            return Err(Error::InvalidConfig("at least one sensor required".into()));
        }
        for s in &self.sensors {
            if !(s.bearing_noise_var >= 0.0) || s.position.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!("sensor {} is invalid", s.id)));
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        load_spec_file(path)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        save_spec_file(path, self)
    }
}

fn load_spec_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text).map_err(|e| Error::Parse(e.to_string())),
        Some("json") => serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string())),
        other => Err(Error::Parse(format!(
            "unsupported spec extension {other:?}, expected .toml or .json"
        ))),
    }
}

fn save_spec_file<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?,
        Some("json") => {
            serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?
        }
        other => {
            return Err(Error::Parse(format!(
                "unsupported spec extension {other:?}, expected .toml or .json"
            )))
        }
    };
    Ok(std::fs::write(path, text)?)
}

/// One observation: a position (2 values) or a bearing (1 value).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    /// Producing sensor, or the target label for labeled position data.
    pub sensor_id: String,
    pub time: f64,
    pub value: Vec<f64>,
}

/// Time-stamped measurements on a fixed step grid.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementLog {
    step: f64,
    entries: Vec<Measurement>,
}

impl MeasurementLog {
    /// Validates uniform dimensions, finiteness, and grid-aligned stamps.
    pub fn new(step: f64, entries: Vec<Measurement>) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidArgument(format!("step {step}, need > 0")));
        }
        let mut dim = None;
        for (i, m) in entries.iter().enumerate() {
            if m.value.is_empty() || m.value.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "entry {i}: values must be non-empty and finite"
                )));
            }
            match dim {
                None => dim = Some(m.value.len()),
                Some(d) if d != m.value.len() => {
                    return Err(Error::DimMismatch { left: d, right: m.value.len() })
                }
                _ => {}
            }
            let cycles = m.time / step;
            if !m.time.is_finite() || (cycles - cycles.round()).abs() > 1e-6 {
                return Err(Error::InvalidArgument(format!(
                    "entry {i}: time {} is not a multiple of step {step}",
                    m.time
                )));
            }
        }
        Ok(MeasurementLog { step, entries })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn entries(&self) -> &[Measurement] {
        &self.entries
    }

    /// Observations of one source inside a closed window, in stored order.
    pub fn source_in_window(&self, source: &str, window: Interval) -> Vec<(f64, &[f64])> {
        self.entries
            .iter()
            .filter(|m| m.sensor_id == source && window.contains(m.time))
            .map(|m| (m.time, m.value.as_slice()))
            .collect()
    }

    /// `sensor_id,time,v1..vd` rows in stored order.
    pub fn to_csv_string(&self) -> Result<String> {
        let dim = self.entries.first().map_or(1, |m| m.value.len());
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["sensor_id".to_string(), "time".to_string()];
        header.extend((1..=dim).map(|i| format!("v{i}")));
        wtr.write_record(&header).map_err(|e| Error::Parse(e.to_string()))?;
        for m in &self.entries {
            let mut rec = vec![m.sensor_id.clone(), format!("{}", m.time)];
            rec.extend(m.value.iter().map(|v| format!("{v}")));
            wtr.write_record(&rec).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = wtr.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf8"))
    }

    /// Parses the format written by [`to_csv_string`]; the grid step is not
    /// stored in the file and must be supplied.
    pub fn parse_csv(text: &str, step: f64) -> Result<MeasurementLog> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if header.len() < 3 || header.get(0) != Some("sensor_id") || header.get(1) != Some("time") {
            return Err(Error::Parse(format!(
                "expected header sensor_id,time,v1,... got {:?}",
                header.iter().collect::<Vec<_>>()
            )));
        }
        let dim = header.len() - 2;
        let mut entries = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.len() != dim + 2 {
                return Err(Error::Parse(format!("row {}: wrong field count", line + 2)));
            }
            let time: f64 = record[1]
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: bad time {:?}", line + 2, &record[1])))?;
            let mut value = Vec::with_capacity(dim);
            for field in record.iter().skip(2) {
                value.push(field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("row {}: bad value {field:?}", line + 2))
                })?);
            }
            entries.push(Measurement { sensor_id: record[0].to_string(), time, value });
        }
        MeasurementLog::new(step, entries)
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_csv_string()?)?)
    }

    pub fn load_csv(path: &Path, step: f64) -> Result<MeasurementLog> {
        MeasurementLog::parse_csv(&std::fs::read_to_string(path)?, step)
    }
}

/// Builds the constant-velocity truths and their noisy position measurements.
///
/// Unmeasured targets emit nothing; everything else is observed at every grid
/// instant inside its lifetime. Fixed seeds give bit-identical output.
pub fn gen_multitarget(spec: &ScenarioSpec) -> Result<(TrajectorySet, MeasurementLog)> {
    spec.validate()?;
    let mut trs = Vec::with_capacity(spec.targets.len());
    for (idx, tg) in spec.targets.iter().enumerate() {
        let mut coeffs = vec![vec![0.0; spec.order + 1]; 2];
        for d in 0..2 {
            coeffs[d][0] = tg.start[d] - tg.velocity[d] * tg.birth;
            coeffs[d][1] = tg.velocity[d];
        }
        trs.push(TFoT::from_coeffs(
            format!("t{}", idx + 1),
            coeffs,
            Interval::new(tg.birth, tg.death),
        )?);
    }
    let truth = TrajectorySet::new(2, trs)?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, spec.noise_var.sqrt())
        .map_err(|e| Error::InvalidConfig(format!("noise model: {e}")))?;
    let mut entries = Vec::new();
    for (idx, tg) in spec.targets.iter().enumerate() {
        if !tg.measured {
            continue;
        }
        let id = format!("t{}", idx + 1);
        let k0 = (tg.birth / spec.step - 1e-9).ceil() as i64;
        let k1 = (tg.death / spec.step + 1e-9).floor() as i64;
        let tr = &truth.trajectories()[idx];
        for k in k0..=k1 {
            let t = k as f64 * spec.step;
            let pos = tr.evaluate(t)?;
            let value = vec![pos[0] + noise.sample(&mut rng), pos[1] + noise.sample(&mut rng)];
            entries.push(Measurement { sensor_id: id.clone(), time: t, value });
        }
    }
    Ok((truth, MeasurementLog::new(spec.step, entries)?))
}

fn advance(p: &mut [f64; 2], h: &mut f64, speed: f64, rate: f64, dt: f64) {
    if rate.abs() < 1e-12 {
        p[0] += speed * dt * h.cos();
        p[1] += speed * dt * h.sin();
    } else {
        let h1 = *h + rate * dt;
        let r = speed / rate;
        p[0] += r * (h1.sin() - h.sin());
        p[1] += r * (h.cos() - h1.cos());
        *h = h1;
    }
}

/// Builds the maneuvering truth as a fine piecewise-linear trajectory and its
/// noisy bearing measurements from every sensor at every grid instant.
pub fn gen_maneuvering(spec: &ManeuverSpec) -> Result<(TrajectorySet, MeasurementLog)> {
    spec.validate()?;
    let total = spec.duration();
    let n = (total / spec.step + 1e-9).round() as usize;
    let mut positions = Vec::with_capacity(n + 1);
    let mut p = spec.start;
    let mut h = spec.heading;
    positions.push(p);
    let mut seg_idx = 0;
    let mut seg_left = spec.segments[0].duration;
    for _ in 0..n {
        let mut dt = spec.step;
        while dt > 1e-12 {
            if seg_idx >= spec.segments.len() {
                advance(&mut p, &mut h, spec.speed, 0.0, dt);
                break;
            }
            let take = dt.min(seg_left);
            advance(&mut p, &mut h, spec.speed, spec.segments[seg_idx].turn_rate, take);
            seg_left -= take;
            dt -= take;
            if seg_left <= 1e-12 {
                seg_idx += 1;
                if seg_idx < spec.segments.len() {
                    seg_left = spec.segments[seg_idx].duration;
                }
            }
        }
        positions.push(p);
    }
    let times: Vec<f64> = (0..=n).map(|j| j as f64 * spec.step).collect();
    let mut pieces = Vec::with_capacity(n);
    for j in 0..n {
        let dt = times[j + 1] - times[j];
        let mut coeffs = vec![vec![0.0; 2]; 2];
        for d in 0..2 {
            let slope = (positions[j + 1][d] - positions[j][d]) / dt;
            coeffs[d][0] = positions[j][d] - slope * times[j];
            coeffs[d][1] = slope;
        }
        pieces.push(PolyPiece::new(times[j], times[j + 1], coeffs));
    }
    let truth = TrajectorySet::new(2, vec![TFoT::new("t1", pieces)?])?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noises: Vec<Normal<f64>> = spec
        .sensors
        .iter()
        .map(|s| {
            Normal::new(0.0, s.bearing_noise_var.sqrt())
                .map_err(|e| Error::InvalidConfig(format!("sensor {}: {e}", s.id)))
        })
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for (j, &t) in times.iter().enumerate() {
        for (si, sensor) in spec.sensors.iter().enumerate() {
            let pos = positions[j];
            let bearing = (pos[1] - sensor.position[1]).atan2(pos[0] - sensor.position[0]);
            entries.push(Measurement {
                sensor_id: sensor.id.clone(),
                time: t,
                value: vec![bearing + noises[si].sample(&mut rng)],
            });
        }
    }
    Ok((truth, MeasurementLog::new(spec.step, entries)?))
}

fn binomial(k: usize, j: usize) -> f64 {
    let mut out = 1.0;
    for i in 0..j {
        out = out * (k - i) as f64 / (i + 1) as f64;
    }
    out
}

/// Re-expresses coefficients fitted in centered time `s = t - t0` as
/// coefficients in global time.
pub(crate) fn shift_poly(centered: &[f64], t0: f64) -> Vec<f64> {
    let n = centered.len();
    let mut out = vec![0.0; n];
    for (k, &a) in centered.iter().enumerate() {
        for j in 0..=k {
            out[j] += a * binomial(k, j) * (-t0).powi((k - j) as i32);
        }
    }
    out
}

/// Least-squares polynomial fit of one source's measurements in a window.
///
/// The design matrix uses window-centered time for conditioning; the returned
/// trajectory spans exactly the window.
pub fn fit_polynomial_ls(
    log: &MeasurementLog,
    source: &str,
    window: Interval,
    order: usize,
) -> Result<TFoT> {
    if window.is_empty() {
        return Err(Error::DegenerateWindow { start: window.start, end: window.end });
    }
    let samples = log.source_in_window(source, window);
    let params = order + 1;
    let mut distinct: Vec<f64> = samples.iter().map(|s| s.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < params {
        return Err(Error::Underdetermined { points: distinct.len(), params });
    }
    let dim = samples[0].1.len();
    let t0 = (window.start + window.end) / 2.0;
    let a = DMatrix::from_fn(samples.len(), params, |r, c| (samples[r].0 - t0).powi(c as i32));
    let b = DMatrix::from_fn(samples.len(), dim, |r, c| samples[r].1[c]);
    let sol = a
        .svd(true, true)
        .solve(&b, 1e-12)
        .map_err(|e| Error::DegenerateGeometry(e.to_string()))?;
    let coeffs: Vec<Vec<f64>> = (0..dim)
        .map(|d| {
            let centered: Vec<f64> = (0..params).map(|c| sol[(c, d)]).collect();
            shift_poly(&centered, t0)
        })
        .collect();
    TFoT::from_coeffs(source, coeffs, window)
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(std::f64::consts::TAU);
    if w > std::f64::consts::PI {
        w -= std::f64::consts::TAU;
    }
    w
}

/// Bearing-only fit outcome; `degenerate` flags near-singular geometry.
#[derive(Clone, Debug)]
pub struct BearingFit {
    pub tfot: TFoT,
    pub iterations: usize,
    /// Final sum of squared wrapped residuals, square radians.
    pub residual: f64,
    pub degenerate: bool,
}

/// Least-squares intersection of bearing rays at one instant.
fn triangulate(obs: &[(f64, usize, f64)], sensors: &[Sensor], t: f64) -> Result<[f64; 2]> {
    let mut m = [[0.0_f64; 2]; 2];
    let mut rhs = [0.0_f64; 2];
    let mut count = 0;
    for &(tt, si, y) in obs {
        if tt != t {
            continue;
        }
        let (ux, uy) = (y.cos(), y.sin());
        let proj = [[1.0 - ux * ux, -ux * uy], [-ux * uy, 1.0 - uy * uy]];
        let s = sensors[si].position;
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] += proj[r][c];
            }
            rhs[r] += proj[r][0] * s[0] + proj[r][1] * s[1];
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::DegenerateGeometry(format!("no bearings at time {t}")));
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m[0][0].abs() + m[1][1].abs();
    if det.abs() <= 1e-9 * scale * scale {
        return Err(Error::DegenerateGeometry(format!("parallel bearing rays at time {t}")));
    }
    Ok([
        (rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
        (rhs[1] * m[0][0] - rhs[0] * m[1][0]) / det,
    ])
}

/// Fits a polynomial position trajectory to bearing measurements from several
/// sensors by damped iterative least squares.
///
/// Residuals are wrapped into `(-pi, pi]`. The initial guess triangulates the
/// first and last window instants. Iteration stops when the relative
/// coefficient step drops below 1e-9, when no descent step exists, or after
/// 100 iterations; the last case reports non-convergence carrying the best
/// iterate.
pub fn fit_bearing_tfot(
    log: &MeasurementLog,
    sensors: &[Sensor],
    window: Interval,
    order: usize,
) -> Result<BearingFit> {
    if window.is_empty() {
        return Err(Error::DegenerateWindow { start: window.start, end: window.end });
    }
    let mut obs: Vec<(f64, usize, f64)> = Vec::new();
    for m in &log.entries {
        if window.contains(m.time) {
            if let Some(si) = sensors.iter().position(|s| s.id == m.sensor_id) {
                obs.push((m.time, si, m.value[0]));
            }
        }
    }
    let mut instants: Vec<f64> = obs.iter().map(|o| o.0).collect();
    instants.sort_by(f64::total_cmp);
    instants.dedup();
    let params = 2 * (order + 1);
    if instants.len() < order + 1 {
        return Err(Error::Underdetermined { points: instants.len(), params });
    }
    let used: BTreeSet<usize> = obs.iter().map(|o| o.1).collect();
    let mut positions: Vec<[f64; 2]> = used.iter().map(|&si| sensors[si].position).collect();
    positions.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    positions.dedup();
    if positions.len() < 2 {
        return Err(Error::DegenerateGeometry(
            "bearing-only fit needs at least two distinct sensor positions".into(),
        ));
    }

    let t0 = (window.start + window.end) / 2.0;
    let t_first = instants[0];
    let t_last = *instants.last().expect("checked non-empty");
    let p_first = triangulate(&obs, sensors, t_first)?;
    let p_last = triangulate(&obs, sensors, t_last)?;
    let vel = if t_last > t_first {
        [(p_last[0] - p_first[0]) / (t_last - t_first), (p_last[1] - p_first[1]) / (t_last - t_first)]
    } else {
        [0.0, 0.0]
    };
    let mut theta = DVector::<f64>::zeros(params);
    theta[0] = p_first[0] + vel[0] * (t0 - t_first);
    theta[order + 1] = p_first[1] + vel[1] * (t0 - t_first);
    if order >= 1 {
        theta[1] = vel[0];
        theta[order + 2] = vel[1];
    }

    // Residual and its gradient row for one observation.
    let eval = |theta: &DVector<f64>, t: f64, si: usize, y: f64| -> (f64, Vec<f64>) {
        let s = t - t0;
        let mut pow = vec![1.0; order + 1];
        for j in 1..=order {
            pow[j] = pow[j - 1] * s;
        }
        let px: f64 = (0..=order).map(|j| theta[j] * pow[j]).sum();
        let py: f64 = (0..=order).map(|j| theta[order + 1 + j] * pow[j]).sum();
        let dx = px - sensors[si].position[0];
        let dy = py - sensors[si].position[1];
        let d2 = (dx * dx + dy * dy).max(1e-30);
        let res = wrap_angle(y - dy.atan2(dx));
        let mut grad = vec![0.0; params];
        for j in 0..=order {
            grad[j] = (dy / d2) * pow[j];
            grad[order + 1 + j] = (-dx / d2) * pow[j];
        }
        (res, grad)
    };
    let cost_fn = |theta: &DVector<f64>| -> f64 {
        obs.iter().map(|&(t, si, y)| eval(theta, t, si, y).0.powi(2)).sum()
    };

    let normal_equations = |theta: &DVector<f64>| -> (DMatrix<f64>, DVector<f64>) {
        let mut jt_j = DMatrix::<f64>::zeros(params, params);
        let mut jt_r = DVector::<f64>::zeros(params);
        for &(t, si, y) in &obs {
            let (res, grad) = eval(theta, t, si, y);
            for a in 0..params {
                jt_r[a] += grad[a] * res;
                for b in 0..params {
                    jt_j[(a, b)] += grad[a] * grad[b];
                }
            }
        }
        (jt_j, jt_r)
    };

    let mut lambda = 1e-3;
    let mut cost = cost_fn(&theta);
    let mut best_theta = theta.clone();
    let mut best_cost = cost;
    let mut converged = cost < 1e-30;
    let mut iterations = 0;
    while iterations < 100 && !converged {
        iterations += 1;
        let (jt_j, jt_r) = normal_equations(&theta);
        let mut accepted = false;
        for _ in 0..25 {
            let mut m = jt_j.clone();
            for d in 0..params {
                m[(d, d)] += lambda * jt_j[(d, d)].max(1e-12);
            }
            if let Some(delta) = m.lu().solve(&(-&jt_r)) {
                let cand = &theta + &delta;
                let cand_cost = cost_fn(&cand);
                if cand_cost <= cost {
                    let step_rel = delta.norm() / (theta.norm() + 1e-12);
                    theta = cand;
                    cost = cand_cost;
                    if cost < best_cost {
                        best_cost = cost;
                        best_theta = theta.clone();
                    }
                    lambda = (lambda / 10.0).max(1e-15);
                    accepted = true;
                    if step_rel < 1e-9 || cost < 1e-30 {
                        converged = true;
                    }
                    break;
                }
            }
            lambda = (lambda * 10.0).min(1e18);
        }
        if !accepted {
            // No descent direction: stationary point.
            converged = true;
        }
    }

    let to_tfot = |theta: &DVector<f64>| -> Result<TFoT> {
        let coeffs: Vec<Vec<f64>> = (0..2)
            .map(|d| {
                let centered: Vec<f64> =
                    (0..=order).map(|j| theta[d * (order + 1) + j]).collect();
                shift_poly(&centered, t0)
            })
            .collect();
        TFoT::from_coeffs("fit", coeffs, window)
    };
    if !converged {
        return Err(Error::FitNonConvergence {
            iterations,
            residual: best_cost,
            best: Box::new(to_tfot(&best_theta)?),
        });
    }
    let (jt_j, _) = normal_equations(&best_theta);
    let svd = jt_j.svd(false, false);
    let s_max = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let s_min = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let degenerate = !(s_min > 1e-10 * s_max);
    Ok(BearingFit { tfot: to_tfot(&best_theta)?, iterations, residual: best_cost, degenerate })
}

/// Stitches per-instant window fits into one estimate per measured target.
///
/// Each instant's fit contributes the newest segment, reaching back to the
/// previous fit instant; the first fit only opens the track, so an order-g
/// estimate starts g steps after the first measurement. Targets with too few
/// measurements produce no estimate.
pub fn estimate_multitarget(
    log: &MeasurementLog,
    spec: &ScenarioSpec,
    fit_policy: &WindowPolicy,
) -> Result<TrajectorySet> {
    fit_policy.validate()?;
    let mut estimates = Vec::new();
    for idx in 0..spec.targets.len() {
        let id = format!("t{}", idx + 1);
        let mut times: Vec<f64> = log
            .entries
            .iter()
            .filter(|m| m.sensor_id == id)
            .map(|m| m.time)
            .collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        if times.is_empty() {
            continue;
        }
        let mut pieces = Vec::new();
        let mut prev: Option<f64> = None;
        for &t in &times {
            let window = Interval::new((t - fit_policy.length).max(times[0]).min(t), t);
            if window.is_empty() {
                continue;
            }
            match fit_polynomial_ls(log, &id, window, spec.order) {
                Ok(fit) => {
                    if let Some(p) = prev {
                        pieces.push(PolyPiece::new(p, t, fit.pieces()[0].coeffs.clone()));
                    }
                    prev = Some(t);
                }
                Err(Error::Underdetermined { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        if !pieces.is_empty() {
            estimates.push(TFoT::new(id, pieces)?);
        }
    }
    TrajectorySet::new(2, estimates)
}

/// Bearing counterpart of [`estimate_multitarget`] for the single maneuvering
/// target. Fits that stop without formal convergence contribute their best
/// iterate; the count of such instants is returned alongside the set.
pub fn estimate_bearing(log: &MeasurementLog, spec: &ManeuverSpec) -> Result<(TrajectorySet, usize)> {
    let mut times: Vec<f64> = log.entries.iter().map(|m| m.time).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut pieces = Vec::new();
    let mut prev: Option<f64> = None;
    let mut nonconverged = 0;
    for &t in &times {
        let window = Interval::new((t - spec.fit_window).max(times[0]).min(t), t);
        if window.is_empty() {
            continue;
        }
        let coeffs = match fit_bearing_tfot(log, &spec.sensors, window, spec.order) {
            Ok(fit) => fit.tfot.pieces()[0].coeffs.clone(),
            Err(Error::FitNonConvergence { best, .. }) => {
                nonconverged += 1;
                best.pieces()[0].coeffs.clone()
            }
            Err(Error::Underdetermined { .. }) => continue,
            Err(e) => return Err(e),
        };
        if let Some(p) = prev {
            pieces.push(PolyPiece::new(p, t, coeffs));
        }
        prev = Some(t);
    }
    let set = if pieces.is_empty() {
        TrajectorySet::empty(2)
    } else {
        TrajectorySet::new(2, vec![TFoT::new("t1", pieces)?])?
    };
    Ok((set, nonconverged))
}

/// One requested output series of a Monte-Carlo comparison.
#[derive(Clone, Debug)]
pub struct SeriesRequest {
    /// Tag used in output file names.
    pub label: String,
    pub kind: MetricKind,
    pub cfg: MetricConfig,
    pub params: EvalParams,
}

/// Deterministic per-run seed derived from the master seed.
pub fn run_seed(master: u64, run: u64) -> u64 {
    splitmix64(master ^ (run + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn accumulate(
    sums: &mut [Option<MetricSeries>],
    requests: &[SeriesRequest],
    truth: &TrajectorySet,
    est: &TrajectorySet,
    eval_times: &[f64],
    eval_policy: &WindowPolicy,
) -> Result<()> {
    for (ri, req) in requests.iter().enumerate() {
        let s = windowed_series(truth, est, req.kind, &req.cfg, &req.params, eval_times, eval_policy)?;
        match &mut sums[ri] {
            None => sums[ri] = Some(s),
            Some(acc) => {
                if acc.times != s.times {
                    return Err(Error::InvalidArgument(
                        "evaluation grids diverged across runs".into(),
                    ));
                }
                for (a, v) in acc.values.iter_mut().zip(&s.values) {
                    *a += v;
                }
            }
        }
    }
    Ok(())
}

fn finish_mean(sums: Vec<Option<MetricSeries>>, runs: usize) -> Vec<MetricSeries> {
    sums.into_iter()
        .map(|s| {
            let mut s = s.expect("every request accumulated at least one run");
            for v in &mut s.values {
                *v /= runs as f64;
            }
            s
        })
        .collect()
}

/// Mean metric series over independent noise realizations of the
/// multi-target scenario. Run `i` uses the derived seed `run_seed(seed, i)`,
/// so results are reproducible and independent of evaluation order.
pub fn monte_carlo_multitarget(
    spec: &ScenarioSpec,
    runs: usize,
    requests: &[SeriesRequest],
    eval_times: &[f64],
    fit_policy: &WindowPolicy,
    eval_policy: &WindowPolicy,
) -> Result<Vec<MetricSeries>> {
    if runs == 0 {
        return Err(Error::InvalidArgument("need at least one run".into()));
    }
    let mut sums: Vec<Option<MetricSeries>> = vec![None; requests.len()];
    for run in 0..runs {
        let mut run_spec = spec.clone();
        run_spec.seed = run_seed(spec.seed, run as u64);
        let (truth, log) = gen_multitarget(&run_spec)?;
        let est = estimate_multitarget(&log, &run_spec, fit_policy)?;
        accumulate(&mut sums, requests, &truth, &est, eval_times, eval_policy)?;
    }
    Ok(finish_mean(sums, runs))
}

/// Mean metric series over independent noise realizations of the maneuvering
/// scenario.
pub fn monte_carlo_maneuvering(
    spec: &ManeuverSpec,
    runs: usize,
    requests: &[SeriesRequest],
    eval_times: &[f64],
    eval_policy: &WindowPolicy,
) -> Result<Vec<MetricSeries>> {
    if runs == 0 {
        return Err(Error::InvalidArgument("need at least one run".into()));
    }
    let mut sums: Vec<Option<MetricSeries>> = vec![None; requests.len()];
    for run in 0..runs {
        let mut run_spec = spec.clone();
        run_spec.seed = run_seed(spec.seed, run as u64);
        let (truth, log) = gen_maneuvering(&run_spec)?;
        let (est, _) = estimate_bearing(&log, &run_spec)?;
        accumulate(&mut sums, requests, &truth, &est, eval_times, eval_policy)?;
    }
    Ok(finish_mean(sums, runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn multitarget_durations_match_the_lifetimes() {
        let (truth, log) = gen_multitarget(&ScenarioSpec::default()).unwrap();
        let durations: Vec<f64> = truth.trajectories().iter().map(|t| t.duration()).collect();
        assert_eq!(durations, vec![99.0, 65.0, 89.0, 80.0]);
        assert!(log.entries().iter().all(|m| m.sensor_id != "t4"));
        assert!(log.entries().iter().any(|m| m.sensor_id == "t2"));
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let spec = ScenarioSpec::default();
        let (_, a) = gen_multitarget(&spec).unwrap();
        let (_, b) = gen_multitarget(&spec).unwrap();
        assert_eq!(a, b);
        let mut other = spec.clone();
        other.seed = 2;
        let (_, c) = gen_multitarget(&other).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_noise_measurements_lie_on_the_truth() {
        let mut spec = ScenarioSpec::default();
        spec.noise_var = 0.0;
        let (truth, log) = gen_multitarget(&spec).unwrap();
        for m in log.entries().iter().take(50) {
            let idx: usize = m.sensor_id[1..].parse::<usize>().unwrap() - 1;
            let pos = truth.trajectories()[idx].evaluate(m.time).unwrap();
            assert_eq!(m.value, pos);
        }
    }

    fn quadratic_log() -> MeasurementLog {
        // One source sampled from x(t) = 3 - 2t + 0.5t^2, y(t) = 1 + t.
        let entries = (0..=10)
            .map(|k| {
                let t = k as f64;
                Measurement {
                    sensor_id: "t1".into(),
                    time: t,
                    value: vec![3.0 - 2.0 * t + 0.5 * t * t, 1.0 + t],
                }
            })
            .collect();
        MeasurementLog::new(1.0, entries).unwrap()
    }

    #[test]
    fn ls_fit_recovers_noiseless_polynomials() {
        let log = quadratic_log();
        let fit = fit_polynomial_ls(&log, "t1", Interval::new(0.0, 10.0), 2).unwrap();
        for k in 0..=20 {
            let t = k as f64 / 2.0;
            let v = fit.evaluate(t).unwrap();
            assert_abs_diff_eq!(v[0], 3.0 - 2.0 * t + 0.5 * t * t, epsilon = 1e-9);
            assert_abs_diff_eq!(v[1], 1.0 + t, epsilon = 1e-9);
        }
    }

    #[test]
    fn ls_fit_interpolates_two_points_with_a_line() {
        let log = quadratic_log();
        let fit = fit_polynomial_ls(&log, "t1", Interval::new(3.0, 4.0), 1).unwrap();
        let a = fit.evaluate(3.0).unwrap();
        let b = fit.evaluate(4.0).unwrap();
        assert_abs_diff_eq!(a[0], 3.0 - 6.0 + 4.5, epsilon = 1e-9);
        assert_abs_diff_eq!(b[0], 3.0 - 8.0 + 8.0, epsilon = 1e-9);
    }

    #[test]
    fn ls_fit_reports_underdetermined_windows() {
        let log = quadratic_log();
        assert!(matches!(
            fit_polynomial_ls(&log, "t1", Interval::new(3.0, 4.0), 2),
            Err(Error::Underdetermined { points: 2, params: 3 })
        ));
        assert!(matches!(
            fit_polynomial_ls(&log, "nobody", Interval::new(0.0, 10.0), 1),
            Err(Error::Underdetermined { points: 0, params: 2 })
        ));
    }

    #[test]
    fn ls_residual_does_not_grow_with_order() {
        // Deterministic wobble so neither order fits exactly.
        let entries = (0..=10)
            .map(|k| {
                let t = k as f64;
                Measurement {
                    sensor_id: "t1".into(),
                    time: t,
                    value: vec![2.0 * t + (1.3 * t).sin()],
                }
            })
            .collect();
        let log = MeasurementLog::new(1.0, entries).unwrap();
        let rss = |order: usize| -> f64 {
            let fit = fit_polynomial_ls(&log, "t1", Interval::new(0.0, 10.0), order).unwrap();
            log.entries()
                .iter()
                .map(|m| (fit.evaluate(m.time).unwrap()[0] - m.value[0]).powi(2))
                .sum()
        };
        assert!(rss(2) <= rss(1) + 1e-9);
        assert!(rss(3) <= rss(2) + 1e-9);
    }

    fn linear_bearing_log(sensors: &[Sensor]) -> MeasurementLog {
        // Noiseless bearings of p(t) = (30 + 2t, 40 + 1.5t).
        let mut entries = Vec::new();
        for k in 0..=10 {
            let t = k as f64 * 0.1;
            let p = [30.0 + 2.0 * t, 40.0 + 1.5 * t];
            for s in sensors {
                let bearing = (p[1] - s.position[1]).atan2(p[0] - s.position[0]);
                entries.push(Measurement { sensor_id: s.id.clone(), time: t, value: vec![bearing] });
            }
        }
        MeasurementLog::new(0.1, entries).unwrap()
    }

    #[test]
    fn bearing_fit_recovers_a_linear_trajectory_from_clean_bearings() {
        let sensors = ManeuverSpec::default().sensors;
        let log = linear_bearing_log(&sensors);
        let fit = fit_bearing_tfot(&log, &sensors, Interval::new(0.0, 1.0), 1).unwrap();
        assert!(!fit.degenerate);
        assert!(fit.residual < 1e-12);
        let mid = fit.tfot.evaluate(0.5).unwrap();
        assert_abs_diff_eq!(mid[0], 31.0, epsilon = 1e-6);
        assert_abs_diff_eq!(mid[1], 40.75, epsilon = 1e-6);
    }

    #[test]
    fn bearing_fit_rejects_unobservable_geometry() {
        let sensors = vec![ManeuverSpec::default().sensors[0].clone()];
        let log = linear_bearing_log(&sensors);
        assert!(matches!(
            fit_bearing_tfot(&log, &sensors, Interval::new(0.0, 1.0), 1),
            Err(Error::DegenerateGeometry(_))
        ));
    }

    #[test]
    fn bearing_fit_needs_enough_instants() {
        let sensors = ManeuverSpec::default().sensors;
        let log = linear_bearing_log(&sensors);
        assert!(matches!(
            fit_bearing_tfot(&log, &sensors, Interval::new(0.0, 0.05), 1),
            Err(Error::Underdetermined { points: 1, params: 4 })
        ));
    }

    #[test]
    fn wrapping_maps_into_the_half_open_interval() {
        use std::f64::consts::PI;
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert_abs_diff_eq!(wrap_angle(3.0 * PI), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(wrap_angle(0.1 - 2.0 * PI), 0.1, epsilon = 1e-12);
        for a in [-10.0, -1.0, 0.0, 2.5, 400.0] {
            let w = wrap_angle(a);
            assert!(w > -PI && w <= PI);
            let cycles = (a - w) / (2.0 * PI);
            assert_abs_diff_eq!(cycles, cycles.round(), epsilon = 1e-9);
        }
    }

    #[test]
    fn maneuvering_truth_stays_in_the_sensor_box() {
        let spec = ManeuverSpec::default();
        let (truth, log) = gen_maneuvering(&spec).unwrap();
        let tr = &truth.trajectories()[0];
        assert_eq!(tr.domain(), Interval::new(0.0, 20.0));
        let mut t = 0.0;
        while t <= 20.0 {
            let p = tr.evaluate(t).unwrap();
            assert!(p[0] > 0.0 && p[0] < 15.0 && p[1] > 0.0 && p[1] < 15.0);
            t += 0.5;
        }
        // Four bearings per instant, 201 instants.
        assert_eq!(log.entries().len(), 4 * 201);
    }

    #[test]
    fn multitarget_estimates_start_after_the_fit_delay() {
        let mut spec = ScenarioSpec::default();
        spec.noise_var = 0.0;
        let (truth, log) = gen_multitarget(&spec).unwrap();
        let est = estimate_multitarget(&log, &spec, &WindowPolicy::default()).unwrap();
        // Target 4 is never measured, so only three estimates exist.
        assert_eq!(est.len(), 3);
        let e1 = &est.trajectories()[0];
        assert_eq!(e1.domain(), Interval::new(3.0, 100.0));
        // Quadratic fits of noiseless linear data reproduce the truth.
        for t in [3.0, 40.0, 99.5] {
            let a = e1.evaluate(t).unwrap();
            let b = truth.trajectories()[0].evaluate(t).unwrap();
            assert_abs_diff_eq!(a[0], b[0], epsilon = 1e-6);
            assert_abs_diff_eq!(a[1], b[1], epsilon = 1e-6);
        }
    }

    #[test]
    fn bearing_estimate_tracks_clean_truth_closely() {
        let mut spec = ManeuverSpec::default();
        for s in &mut spec.sensors {
            s.bearing_noise_var = 0.0;
        }
        let (truth, log) = gen_maneuvering(&spec).unwrap();
        let (est, nonconverged) = estimate_bearing(&log, &spec).unwrap();
        assert_eq!(nonconverged, 0);
        let e = &est.trajectories()[0];
        assert_eq!(e.domain(), Interval::new(0.1, 20.0));
        let mut worst = 0.0_f64;
        let mut t = 0.2;
        while t <= 20.0 {
            let a = e.evaluate(t).unwrap();
            let b = truth.trajectories()[0].evaluate(t).unwrap();
            worst = worst.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
            t += 0.3;
        }
        // Line fits over one-second windows track the gentle turns closely.
        assert!(worst < 1.0, "worst position error {worst}");
    }

    #[test]
    fn derived_run_seeds_are_deterministic_and_spread() {
        assert_eq!(run_seed(1, 0), run_seed(1, 0));
        assert_ne!(run_seed(1, 0), run_seed(1, 1));
        assert_ne!(run_seed(1, 0), run_seed(2, 0));
    }

    #[test]
    fn single_run_mean_equals_the_run_itself() {
        let mut spec = ScenarioSpec::default();
        spec.targets.truncate(2);
        let requests = vec![SeriesRequest {
            label: "star".into(),
            kind: MetricKind::TaStarId,
            cfg: MetricConfig::symmetric(2.0, 10.0, 10.0),
            params: EvalParams::default(),
        }];
        let eval_times: Vec<f64> = (10..=20).map(|k| k as f64).collect();
        let policy = WindowPolicy::default();
        let mean = monte_carlo_multitarget(&spec, 1, &requests, &eval_times, &policy, &policy)
            .unwrap();
        let mut run_spec = spec.clone();
        run_spec.seed = run_seed(spec.seed, 0);
        let (truth, log) = gen_multitarget(&run_spec).unwrap();
        let est = estimate_multitarget(&log, &run_spec, &policy).unwrap();
        let single = windowed_series(
            &truth,
            &est,
            MetricKind::TaStarId,
            &requests[0].cfg,
            &requests[0].params,
            &eval_times,
            &policy,
        )
        .unwrap();
        assert_eq!(mean[0], single);
    }

    #[test]
    fn measurement_csv_round_trips() {
        let spec = ScenarioSpec::default();
        let (_, log) = gen_multitarget(&spec).unwrap();
        let text = log.to_csv_string().unwrap();
        assert!(text.starts_with("sensor_id,time,v1,v2\n"));
        let back = MeasurementLog::parse_csv(&text, spec.step).unwrap();
        assert_eq!(log, back);
        assert!(MeasurementLog::parse_csv("bogus,header\n", 1.0).is_err());
        assert!(MeasurementLog::parse_csv("sensor_id,time,v1\nt1,0.5,nan_or_so\n", 1.0).is_err());
    }

    #[test]
    fn spec_files_round_trip_in_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let spec = ScenarioSpec::default();
        for name in ["spec.toml", "spec.json"] {
            let path = dir.path().join(name);
            spec.save(&path).unwrap();
            assert_eq!(ScenarioSpec::load(&path).unwrap(), spec);
        }
        let m = ManeuverSpec::default();
        let path = dir.path().join("m.toml");
        m.save(&path).unwrap();
        assert_eq!(ManeuverSpec::load(&path).unwrap(), m);
        assert!(ScenarioSpec::load(&dir.path().join("spec.yaml")).is_err());
    }
}
