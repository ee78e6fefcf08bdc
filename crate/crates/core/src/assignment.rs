//! Rectangular assignment with per-item unassignment costs.
//!
//! Every row may pair with at most one column and vice versa; leaving a row or
//! column unmatched incurs its own cost. Solved exactly by padding to an
//! (m+n) x (m+n) square matrix, where row j may take dummy column j at the
//! row's unassignment cost, column i may be taken by dummy row i at the
//! column's unassignment cost, dummy-dummy cells are free, and every other
//! dummy cell is priced above any feasible total, then running Kuhn-Munkres.

use crate::error::{Error, Result};

/// Cost matrix plus unassignment costs for both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentProblem {
    pair_cost: Vec<Vec<f64>>,
    row_unassigned: Vec<f64>,
    col_unassigned: Vec<f64>,
}

impl AssignmentProblem {
    /// Validates shapes and finiteness.
    pub fn new(pair_cost: Vec<Vec<f64>>, row_unassigned: Vec<f64>, col_unassigned: Vec<f64>) -> Result<Self> {
        let m = row_unassigned.len();
        let n = col_unassigned.len();
        if pair_cost.len() != m {
            return Err(Error::InvalidArgument(format!(
                "pair_cost has {} rows, row_unassigned has {m}",
                pair_cost.len()
            )));
        }
        for (j, row) in pair_cost.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "pair_cost row {j} has {} columns, col_unassigned has {n}",
                    row.len()
                )));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite cost in pair_cost row {j}")));
            }
        }
        if row_unassigned.iter().chain(&col_unassigned).any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite unassignment cost".into()));
        }
        Ok(AssignmentProblem { pair_cost, row_unassigned, col_unassigned })
    }

    pub fn rows(&self) -> usize {
        self.row_unassigned.len()
    }

    pub fn cols(&self) -> usize {
        self.col_unassigned.len()
    }

    pub fn pair_cost(&self) -> &[Vec<f64>] {
        &self.pair_cost
    }
}

/// Optimal matching plus the exact recomputed objective.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentResult {
    /// Matched (row, col) pairs, ascending by row.
    pub matches: Vec<(usize, usize)>,
    pub unmatched_rows: Vec<usize>,
    pub unmatched_cols: Vec<usize>,
    pub total_cost: f64,
}

/// Canonical objective: rows in order, then unmatched columns in order.
///
/// Both solvers report through this one summation so equal matchings produce
/// bit-identical totals.
fn build_result(problem: &AssignmentProblem, row_to_col: &[Option<usize>]) -> AssignmentResult {
    let n = problem.cols();
    let mut matches = Vec::new();
    let mut unmatched_rows = Vec::new();
    let mut col_taken = vec![false; n];
    let mut total = 0.0;
    for (j, assigned) in row_to_col.iter().enumerate() {
        match assigned {
            Some(i) => {
                total += problem.pair_cost[j][*i];
                col_taken[*i] = true;
                matches.push((j, *i));
            }
            None => {
                total += problem.row_unassigned[j];
                unmatched_rows.push(j);
            }
        }
    }
    let mut unmatched_cols = Vec::new();
    for i in 0..n {
        if !col_taken[i] {
            total += problem.col_unassigned[i];
            unmatched_cols.push(i);
        }
    }
    AssignmentResult { matches, unmatched_rows, unmatched_cols, total_cost: total }
}

const NONE: usize = usize::MAX;

/// Exact minimum-cost perfect matching on a dense square matrix.
///
/// Shortest-augmenting-path Kuhn-Munkres with row/column potentials; ties are
/// broken toward the lowest column index. Returns the column of each row.
fn kuhn_munkres(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let mut u = vec![0.0_f64; n];
    let mut v = vec![0.0_f64; n + 1];
    let mut row_of = vec![NONE; n + 1]; // column -> matched row; index n is the virtual root
    for i in 0..n {
        row_of[n] = i;
        let mut j0 = n;
        let mut minv = vec![f64::INFINITY; n];
        let mut way = vec![n; n];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = NONE;
            for j in 0..n {
                if !used[j] {
                    let cur = cost[i0][j] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            debug_assert!(j1 != NONE, "augmenting path ran out of columns");
            for j in 0..n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            u[row_of[n]] += delta;
            v[n] -= delta;
            j0 = j1;
            if row_of[j0] == NONE {
                break;
            }
        }
        while j0 != n {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        }
    }
    let mut col_of = vec![NONE; n];
    for (j, &r) in row_of.iter().enumerate().take(n) {
        if r != NONE {
            col_of[r] = j;
        }
    }
    col_of
}

/// Exact optimal assignment via the padded square construction.
pub fn solve(problem: &AssignmentProblem) -> AssignmentResult {
    let m = problem.rows();
    let n = problem.cols();
    let size = m + n;
    if size == 0 {
        return AssignmentResult {
            matches: Vec::new(),
            unmatched_rows: Vec::new(),
            unmatched_cols: Vec::new(),
            total_cost: 0.0,
        };
    }
    // Strictly dominates any total that avoids forbidden dummy cells.
    let mut big = 1.0;
    for row in &problem.pair_cost {
        for c in row {
            big += c.abs();
        }
    }
    for c in problem.row_unassigned.iter().chain(&problem.col_unassigned) {
        big += c.abs();
    }
    let mut padded = vec![vec![0.0_f64; size]; size];
    for j in 0..size {
        for i in 0..size {
            padded[j][i] = match (j < m, i < n) {
                (true, true) => problem.pair_cost[j][i],
                (true, false) => {
                    if i - n == j {
                        problem.row_unassigned[j]
                    } else {
                        big
                    }
                }
                (false, true) => {
                    if j - m == i {
                        problem.col_unassigned[i]
                    } else {
                        big
                    }
                }
                (false, false) => 0.0,
            };
        }
    }
    let col_of = kuhn_munkres(&padded);
    let row_to_col: Vec<Option<usize>> = (0..m)
        .map(|j| if col_of[j] < n { Some(col_of[j]) } else { None })
        .collect();
    build_result(problem, &row_to_col)
}

/// Exhaustive-search limit on m + n for [`brute_force`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Enumerates every partial matching; the independent oracle for [`solve`].
pub fn brute_force(problem: &AssignmentProblem) -> Result<AssignmentResult> {
    let m = problem.rows();
    let n = problem.cols();
    if m + n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard { size: m + n, limit: BRUTE_FORCE_LIMIT });
    }
    let mut current: Vec<Option<usize>> = vec![None; m];
    let mut best: Option<AssignmentResult> = None;
    fn recurse(
        problem: &AssignmentProblem,
        row: usize,
        used: &mut [bool],
        current: &mut Vec<Option<usize>>,
        best: &mut Option<AssignmentResult>,
    ) {
        let m = problem.rows();
        if row == m {
            let cand = build_result(problem, current);
            if best.as_ref().map_or(true, |b| cand.total_cost < b.total_cost) {
                *best = Some(cand);
            }
            return;
        }
        current[row] = None;
        recurse(problem, row + 1, used, current, best);
        for i in 0..problem.cols() {
            if !used[i] {
                used[i] = true;
                current[row] = Some(i);
                recurse(problem, row + 1, used, current, best);
                current[row] = None;
                used[i] = false;
            }
        }
    }
    let mut used = vec![false; n];
    recurse(problem, 0, &mut used, &mut current, &mut best);
    Ok(best.expect("at least the all-unmatched arrangement exists"))
}
