//! Continuous-time trajectories as piecewise polynomials and finite sets thereof.
//!
//! A trajectory maps a closed time interval to an r-dimensional state. Pieces
//! store polynomial coefficients in global time, so clipping a piece never
//! changes its coefficients, only its endpoints.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed time interval `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    pub fn new(start: f64, end: f64) -> Self {
        Interval { start, end }
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    /// True when the interval has no positive length.
    pub fn is_empty(&self) -> bool {
        !(self.end > self.start)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }

    /// Overlap with positive length, if any.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let s = self.start.max(other.start);
        let e = self.end.min(other.end);
        if e > s {
            Some(Interval::new(s, e))
        } else {
            None
        }
    }
}

/// One polynomial segment of a trajectory.
///
/// `coeffs[i][j]` multiplies `t^j` in dimension `i`; the value of dimension
/// `i` at time `t` is the usual polynomial sum in global time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyPiece {
    pub t_start: f64,
    pub t_end: f64,
    pub coeffs: Vec<Vec<f64>>,
}

impl PolyPiece {
    pub fn new(t_start: f64, t_end: f64, coeffs: Vec<Vec<f64>>) -> Self {
        PolyPiece { t_start, t_end, coeffs }
    }

    fn eval_dim(&self, dim: usize, t: f64) -> f64 {
        let row = &self.coeffs[dim];
        let mut acc = 0.0;
        for &c in row.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

/// Trajectory function of time: contiguous polynomial pieces over one interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTfot")]
pub struct TFoT {
    id: String,
    pieces: Vec<PolyPiece>,
    #[serde(skip)]
    dim: usize,
}

#[derive(Deserialize)]
struct RawTfot {
    id: String,
    pieces: Vec<PolyPiece>,
}

impl TryFrom<RawTfot> for TFoT {
    type Error = Error;

    fn try_from(raw: RawTfot) -> Result<TFoT> {
        TFoT::new(raw.id, raw.pieces)
    }
}

impl TFoT {
    /// Builds a trajectory, checking piece ordering, contiguity and coefficient shape.
    pub fn new(id: impl Into<String>, pieces: Vec<PolyPiece>) -> Result<TFoT> {
        let id = id.into();
        if pieces.is_empty() {
            return Err(Error::InvalidTrajectory(format!("'{id}': no pieces")));
        }
        let dim = pieces[0].coeffs.len();
        if dim == 0 {
            return Err(Error::InvalidTrajectory(format!("'{id}': piece 0 has no dimensions")));
        }
        for (k, pc) in pieces.iter().enumerate() {
            if !pc.t_start.is_finite() || !pc.t_end.is_finite() || !(pc.t_start < pc.t_end) {
                return Err(Error::InvalidTrajectory(format!(
                    "'{id}': piece {k} has bad interval [{}, {}]",
                    pc.t_start, pc.t_end
                )));
            }
            if pc.coeffs.len() != dim {
                return Err(Error::InvalidTrajectory(format!(
                    "'{id}': piece {k} has {} dimensions, expected {dim}",
                    pc.coeffs.len()
                )));
            }
            for (i, row) in pc.coeffs.iter().enumerate() {
                if row.is_empty() {
                    return Err(Error::InvalidTrajectory(format!(
                        "'{id}': piece {k} dimension {i} has no coefficients"
                    )));
                }
                if row.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidTrajectory(format!(
                        "'{id}': piece {k} dimension {i} has non-finite coefficients"
                    )));
                }
            }
            if k > 0 && pieces[k - 1].t_end != pc.t_start {
                return Err(Error::InvalidTrajectory(format!(
                    "'{id}': piece {k} starts at {} but piece {} ends at {}",
                    pc.t_start,
                    k - 1,
                    pieces[k - 1].t_end
                )));
            }
        }
        Ok(TFoT { id, pieces, dim })
    }

    /// Single-piece trajectory from one coefficient matrix.
    pub fn from_coeffs(id: impl Into<String>, coeffs: Vec<Vec<f64>>, domain: Interval) -> Result<TFoT> {
        TFoT::new(id, vec![PolyPiece::new(domain.start, domain.end, coeffs)])
    }

    /// Trajectory holding a constant state over `domain`.
    pub fn constant(id: impl Into<String>, value: &[f64], domain: Interval) -> Result<TFoT> {
        let coeffs = value.iter().map(|&v| vec![v]).collect();
        TFoT::from_coeffs(id, coeffs, domain)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[PolyPiece] {
        &self.pieces
    }

    pub fn domain(&self) -> Interval {
        Interval::new(self.pieces[0].t_start, self.pieces[self.pieces.len() - 1].t_end)
    }

    pub fn duration(&self) -> f64 {
        self.domain().len()
    }

    /// Index of the piece governing time `t`.
    ///
    /// Interior piece boundaries belong to the right piece; the final domain
    /// endpoint belongs to the last piece.
    fn piece_index(&self, t: f64) -> usize {
        let idx = self.pieces.partition_point(|pc| pc.t_end <= t);
        idx.min(self.pieces.len() - 1)
    }

    /// State at time `t`, or an error when `t` lies outside the domain.
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        let dom = self.domain();
        if !dom.contains(t) {
            return Err(Error::OutOfDomain { t, start: dom.start, end: dom.end });
        }
        let mut out = vec![0.0; self.dim];
        self.eval_into(t, &mut out);
        Ok(out)
    }

    /// Allocation-free evaluation for hot loops; `t` must already be in domain.
    pub(crate) fn eval_into(&self, t: f64, out: &mut [f64]) {
        debug_assert!(out.len() == self.dim);
        let pc = &self.pieces[self.piece_index(t)];
        for i in 0..self.dim {
            out[i] = pc.eval_dim(i, t);
        }
    }

    /// Restriction to `window`; `None` when the overlap has no positive length.
    ///
    /// Coefficients are untouched because they live in global time.
    pub fn clip(&self, window: Interval) -> Option<TFoT> {
        let dom = self.domain();
        let iv = dom.intersect(&window)?;
        let mut kept: Vec<PolyPiece> = self
            .pieces
            .iter()
            .filter(|pc| pc.t_end > iv.start && pc.t_start < iv.end)
            .cloned()
            .collect();
        debug_assert!(!kept.is_empty());
        let last = kept.len() - 1;
        kept[0].t_start = kept[0].t_start.max(iv.start);
        kept[last].t_end = kept[last].t_end.min(iv.end);
        Some(TFoT { id: self.id.clone(), pieces: kept, dim: self.dim })
    }
}

/// Finite set of trajectories sharing one state dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct TrajectorySet {
    dim: usize,
    trajectories: Vec<TFoT>,
}

#[derive(Deserialize)]
struct RawSet {
    dim: usize,
    trajectories: Vec<TFoT>,
}

impl TryFrom<RawSet> for TrajectorySet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<TrajectorySet> {
        TrajectorySet::new(raw.dim, raw.trajectories)
    }
}

impl TrajectorySet {
    /// Builds a set, checking the shared dimension and id uniqueness.
    pub fn new(dim: usize, trajectories: Vec<TFoT>) -> Result<TrajectorySet> {
        if dim == 0 {
            return Err(Error::InvalidTrajectory("set dimension must be positive".into()));
        }
        for tr in &trajectories {
            if tr.dim() != dim {
                return Err(Error::DimMismatch { left: dim, right: tr.dim() });
            }
        }
        for (a, tr) in trajectories.iter().enumerate() {
            if trajectories[..a].iter().any(|other| other.id() == tr.id()) {
                return Err(Error::InvalidTrajectory(format!("duplicate trajectory id '{}'", tr.id())));
            }
        }
        Ok(TrajectorySet { dim, trajectories })
    }

    /// Empty set of the given dimension.
    pub fn empty(dim: usize) -> TrajectorySet {
        TrajectorySet { dim, trajectories: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trajectories(&self) -> &[TFoT] {
        &self.trajectories
    }

    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    /// Clips every member to `window`, dropping those with empty overlap.
    pub fn clip(&self, window: Interval) -> TrajectorySet {
        let kept = self.trajectories.iter().filter_map(|tr| tr.clip(window)).collect();
        TrajectorySet { dim: self.dim, trajectories: kept }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("trajectory sets always serialize")
    }

    pub fn from_json_str(text: &str) -> Result<TrajectorySet> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("trajectory set: {e}")))
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<TrajectorySet> {
        let text = std::fs::read_to_string(path)?;
        TrajectorySet::from_json_str(&text)
    }
}
