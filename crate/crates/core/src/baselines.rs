//! Established point-set and track-set distances used for comparison.
//!
//! `ospa` and `gospa` compare point sets at one instant, `ospa2` extends the
//! former over a discrete time window, and `imta` scores continuous tracks by
//! integrated squared error with cardinality penalties.

use std::collections::BTreeMap;
use std::path::Path;

use crate::assignment::{solve, AssignmentProblem};
use crate::error::{Error, Result};
use crate::pairwise::{align, MetricConfig};
use crate::quadrature::integrate_sq_l2;
use crate::trajectory::TrajectorySet;
use crate::util::{euclid, pow_p, root_p};

fn check_order_cutoff(p: f64, c: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidConfig(format!("order p={p}, need 1 <= p < inf")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidConfig(format!("cutoff c={c}, need 0 < c < inf")));
    }
    Ok(())
}

fn check_points(x: &[Vec<f64>], y: &[Vec<f64>]) -> Result<()> {
    let mut dim = None;
    for pt in x.iter().chain(y) {
        if pt.is_empty() || pt.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("points must be non-empty and finite".into()));
        }
        match dim {
            None => dim = Some(pt.len()),
            Some(d) if d != pt.len() => {
                return Err(Error::DimMismatch { left: d, right: pt.len() })
            }
            _ => {}
        }
    }
    Ok(())
}

/// Minimum-cost complete matching of the smaller point set, with every
/// unmatched larger-side item charged `unmatched_pow`. Requires m <= n.
fn matched_total_pow(pair_pow: Vec<Vec<f64>>, m: usize, n: usize, unmatched_pow: f64) -> f64 {
    let mut big = 1.0 + n as f64 * unmatched_pow.abs();
    for row in &pair_pow {
        for v in row {
            big += v.abs();
        }
    }
    let problem = AssignmentProblem::new(pair_pow, vec![big; m], vec![unmatched_pow; n])
        .expect("finite costs by construction");
    solve(&problem).total_cost
}

/// Point-set distance at one instant: optimally matched cutoff errors plus a
/// cutoff charge per cardinality difference, averaged over the larger set.
pub fn ospa(x: &[Vec<f64>], y: &[Vec<f64>], p: f64, c: f64) -> Result<f64> {
    check_order_cutoff(p, c)?;
    check_points(x, y)?;
    let (a, b) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let (m, n) = (a.len(), b.len());
    if n == 0 {
        return Ok(0.0);
    }
    if m == 0 {
        return Ok(c);
    }
    let pair: Vec<Vec<f64>> = a
        .iter()
        .map(|xa| b.iter().map(|yb| pow_p(euclid(xa, yb).min(c), p)).collect())
        .collect();
    let total = matched_total_pow(pair, m, n, pow_p(c, p));
    Ok(root_p(total / n as f64, p))
}

/// Unnormalized variant of [`ospa`] charging `c^p / alpha` per unmatched point.
pub fn gospa(x: &[Vec<f64>], y: &[Vec<f64>], p: f64, c: f64, alpha: f64) -> Result<f64> {
    check_order_cutoff(p, c)?;
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::InvalidConfig(format!("alpha={alpha}, need 0 < alpha <= 2")));
    }
    check_points(x, y)?;
    let (a, b) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let (m, n) = (a.len(), b.len());
    if n == 0 {
        return Ok(0.0);
    }
    let unmatched = pow_p(c, p) / alpha;
    if m == 0 {
        return Ok(root_p(unmatched * n as f64, p));
    }
    let pair: Vec<Vec<f64>> = a
        .iter()
        .map(|xa| b.iter().map(|yb| pow_p(euclid(xa, yb).min(c), p)).collect())
        .collect();
    let total = matched_total_pow(pair, m, n, unmatched);
    Ok(root_p(total, p))
}

/// Discrete-time track: labelled points keyed by an integer time index.
#[derive(Clone, Debug, PartialEq)]
pub struct Track {
    id: String,
    points: BTreeMap<i64, Vec<f64>>,
}

impl Track {
    /// Validates that the track is non-empty with finite, equal-length points.
    pub fn new(id: impl Into<String>, points: BTreeMap<i64, Vec<f64>>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidTrajectory("track id must be non-empty".into()));
        }
        let dim = match points.values().next() {
            Some(first) if !first.is_empty() => first.len(),
            _ => {
                return Err(Error::InvalidTrajectory(format!(
                    "track {id} needs at least one non-empty point"
                )))
            }
        };
        for (t, pt) in &points {
            if pt.len() != dim {
                return Err(Error::DimMismatch { left: dim, right: pt.len() });
            }
            if pt.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidTrajectory(format!(
                    "track {id} has a non-finite coordinate at index {t}"
                )));
            }
        }
        Ok(Track { id, points })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.points.values().next().map_or(0, Vec::len)
    }

    pub fn point_at(&self, t: i64) -> Option<&[f64]> {
        self.points.get(&t).map(Vec::as_slice)
    }

    pub fn points(&self) -> &BTreeMap<i64, Vec<f64>> {
        &self.points
    }
}

fn check_tracks(x: &[Track], y: &[Track]) -> Result<()> {
    let mut dim = None;
    for tr in x.iter().chain(y) {
        match dim {
            None => dim = Some(tr.dim()),
            Some(d) if d != tr.dim() => {
                return Err(Error::DimMismatch { left: d, right: tr.dim() })
            }
            _ => {}
        }
    }
    Ok(())
}

/// Windowed track distance: per-track-pair time-weighted cutoff errors rolled
/// up by the same matched-plus-cardinality rule as [`ospa`].
///
/// At each index both tracks absent costs nothing, exactly one present costs
/// the full cutoff, both present cost the cutoff Euclidean error. `weights`
/// must be positive and sum to one over the window.
pub fn ospa2(
    x: &[Track],
    y: &[Track],
    indices: &[i64],
    weights: &[f64],
    p: f64,
    q: f64,
    c: f64,
) -> Result<f64> {
    check_order_cutoff(p, c)?;
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidConfig(format!("time order q={q}, need 1 <= q < inf")));
    }
    if indices.is_empty() || indices.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "need matching non-empty window: {} indices, {} weights",
            indices.len(),
            weights.len()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    if !indices.iter().all(|t| seen.insert(*t)) {
        return Err(Error::InvalidArgument("duplicate window index".into()));
    }
    if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(Error::InvalidArgument("weights must be positive and finite".into()));
    }
    let total_w: f64 = weights.iter().sum();
    if (total_w - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!("weights sum to {total_w}, need 1")));
    }
    check_tracks(x, y)?;

    let base = |tx: &Track, ty: &Track| -> f64 {
        let mut acc = 0.0;
        for (t, w) in indices.iter().zip(weights) {
            let d = match (tx.point_at(*t), ty.point_at(*t)) {
                (None, None) => 0.0,
                (Some(a), Some(b)) => euclid(a, b).min(c),
                _ => c,
            };
            acc += pow_p(w * d, q);
        }
        root_p(acc, q)
    };

    let (a, b) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let (m, n) = (a.len(), b.len());
    if n == 0 {
        return Ok(0.0);
    }
    if m == 0 {
        return Ok(c);
    }
    let pair: Vec<Vec<f64>> = a
        .iter()
        .map(|ta| b.iter().map(|tb| pow_p(base(ta, tb).min(c), p)).collect())
        .collect();
    let total = matched_total_pow(pair, m, n, pow_p(c, p));
    Ok(root_p(total / n as f64, p))
}

/// Largest number of complete matchings [`imta`] will enumerate.
pub const IMTA_ARRANGEMENT_LIMIT: u128 = 1_000_000;

fn arrangements(m: usize, n: usize) -> u128 {
    (0..m).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

/// Integral track-error distance: every track of the smaller set is matched,
/// each matched pair contributing its integrated squared separation plus a
/// segment false-alarm and missed-detection charge, normalized by the union
/// duration raised to `order`; leftover tracks are charged as whole-track
/// false alarms or missed detections in one closing term.
pub fn imta(truth: &TrajectorySet, estimate: &TrajectorySet, cfg: &MetricConfig, order: f64) -> Result<f64> {
    cfg.validate()?;
    if !(order >= 1.0) || !order.is_finite() {
        return Err(Error::InvalidConfig(format!("order r={order}, need 1 <= r < inf")));
    }
    if truth.dim() != estimate.dim() {
        return Err(Error::DimMismatch { left: truth.dim(), right: estimate.dim() });
    }
    let truths = truth.trajectories();
    let ests = estimate.trajectories();
    let truth_is_small = truths.len() <= ests.len();
    let (m, n) = if truth_is_small {
        (truths.len(), ests.len())
    } else {
        (ests.len(), truths.len())
    };
    let count = arrangements(m, n);
    if count > IMTA_ARRANGEMENT_LIMIT {
        return Err(Error::SizeGuard {
            size: count.min(usize::MAX as u128) as usize,
            limit: IMTA_ARRANGEMENT_LIMIT as usize,
        });
    }

    // pair_term[j][i] pairs small-set index j with large-set index i.
    let mut pair_term = vec![vec![0.0_f64; n]; m];
    for (j, row) in pair_term.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            let (f, g) = if truth_is_small { (&truths[j], &ests[i]) } else { (&truths[i], &ests[j]) };
            let a = align(f, g);
            let (ov_len, integral) = match a.overlap {
                Some(ov) => (ov.len(), integrate_sq_l2(f, g, ov, &cfg.quad)?),
                None => (0.0, 0.0),
            };
            let seg = pow_p(cfg.c_sfa * a.t_sfa + cfg.c_smd * a.t_smd, order);
            let tau = pow_p(ov_len + a.t_sfa + a.t_smd, order);
            *cell = (integral + seg) / tau;
        }
    }
    let large_durations: Vec<f64> = if truth_is_small {
        ests.iter().map(|g| g.duration()).collect()
    } else {
        truths.iter().map(|f| f.duration()).collect()
    };
    // Whole leftover tracks are estimates when the truth set is smaller.
    let leftover_rate = if truth_is_small { cfg.c_tfa } else { cfg.c_tmd };

    fn search(
        row: usize,
        m: usize,
        n: usize,
        pair_term: &[Vec<f64>],
        large_durations: &[f64],
        leftover_rate: f64,
        order: f64,
        used: &mut Vec<bool>,
        acc: f64,
        best: &mut f64,
    ) {
        if row == m {
            let leftover: f64 = (0..n).filter(|i| !used[*i]).map(|i| large_durations[i]).sum();
            let total = acc + pow_p(leftover_rate * leftover, order);
            if total < *best {
                *best = total;
            }
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                search(row + 1, m, n, pair_term, large_durations, leftover_rate, order, used, acc + pair_term[row][i], best);
                used[i] = false;
            }
        }
    }

    let mut best = f64::INFINITY;
    let mut used = vec![false; n];
    search(0, m, n, &pair_term, &large_durations, leftover_rate, order, &mut used, 0.0, &mut best);
    Ok(best)
}

/// Points of every trajectory alive at instant `t`, in set order.
pub fn points_at(set: &TrajectorySet, t: f64) -> Vec<Vec<f64>> {
    set.trajectories()
        .iter()
        .filter(|tr| tr.domain().contains(t))
        .map(|tr| tr.evaluate(t).expect("alive trajectories evaluate inside their domain"))
        .collect()
}

/// Samples each trajectory on the grid `times`, keyed by grid position.
///
/// Instants outside a trajectory's domain are simply absent from its track;
/// trajectories alive at no grid instant are dropped.
pub fn sample_tracks(set: &TrajectorySet, times: &[f64]) -> Vec<Track> {
    let mut out = Vec::new();
    for tr in set.trajectories() {
        let mut points = BTreeMap::new();
        for (j, t) in times.iter().enumerate() {
            if tr.domain().contains(*t) {
                points.insert(j as i64, tr.evaluate(*t).expect("alive implies in domain"));
            }
        }
        if !points.is_empty() {
            out.push(Track::new(tr.id(), points).expect("sampled points are finite and uniform"));
        }
    }
    out
}

/// Serializes tracks as `track_id,time_index,x1..xr` rows sorted by id then index.
pub fn tracks_to_csv_string(tracks: &[Track]) -> Result<String> {
    let dim = tracks.first().map_or(1, Track::dim);
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["track_id".to_string(), "time_index".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    wtr.write_record(&header).map_err(|e| Error::Parse(e.to_string()))?;
    let mut sorted: Vec<&Track> = tracks.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    for tr in sorted {
        for (t, pt) in &tr.points {
            let mut record = vec![tr.id.clone(), t.to_string()];
            record.extend(pt.iter().map(|v| format!("{v}")));
            wtr.write_record(&record).map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf8"))
}

/// Parses the format written by [`tracks_to_csv_string`].
pub fn parse_tracks_csv(text: &str) -> Result<Vec<Track>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if header.len() < 3 || header.get(0) != Some("track_id") || header.get(1) != Some("time_index") {
        return Err(Error::Parse(format!(
            "expected header track_id,time_index,x1,... got {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    let dim = header.len() - 2;
    let mut by_id: BTreeMap<String, BTreeMap<i64, Vec<f64>>> = BTreeMap::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() != dim + 2 {
            return Err(Error::Parse(format!(
                "row {} has {} fields, expected {}",
                line + 2,
                record.len(),
                dim + 2
            )));
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(Error::Parse(format!("row {}: empty track_id", line + 2)));
        }
        let t: i64 = record[1]
            .parse()
            .map_err(|_| Error::Parse(format!("row {}: bad time_index {:?}", line + 2, &record[1])))?;
        let mut pt = Vec::with_capacity(dim);
        for field in record.iter().skip(2) {
            pt.push(
                field
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: bad coordinate {field:?}", line + 2)))?,
            );
        }
        if by_id.entry(id.clone()).or_default().insert(t, pt).is_some() {
            return Err(Error::Parse(format!("duplicate point for track {id} at index {t}")));
        }
    }
    by_id.into_iter().map(|(id, points)| Track::new(id, points)).collect()
}

pub fn save_tracks_csv<P: AsRef<Path>>(path: P, tracks: &[Track]) -> Result<()> {
    Ok(std::fs::write(path, tracks_to_csv_string(tracks)?)?)
}

pub fn load_tracks_csv<P: AsRef<Path>>(path: P) -> Result<Vec<Track>> {
    parse_tracks_csv(&std::fs::read_to_string(path)?)
}
