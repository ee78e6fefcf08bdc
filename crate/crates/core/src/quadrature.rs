//! Adaptive quadrature of trajectory separation over time.
//!
//! Integrands are piecewise-smooth (norms of polynomial differences), so the
//! integration range is pre-split at every piece boundary of both inputs and
//! each segment is refined with a Gauss-Kronrod 7/15 pair until the summed
//! error estimate meets tolerance.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::trajectory::{Interval, TFoT};

/// Tolerances and the subdivision guard for adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { rel_tol: 1e-9, abs_tol: 1e-12, max_depth: 40 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol.is_finite()
            && self.abs_tol.is_finite()
            && self.rel_tol >= 0.0
            && self.abs_tol >= 0.0
            && self.rel_tol + self.abs_tol > 0.0
            && self.max_depth >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "quadrature tolerances rel={} abs={} max_depth={}",
                self.rel_tol, self.abs_tol, self.max_depth
            )))
        }
    }
}

// 15-point Kronrod abscissae on [-1, 1]; odd indices are the embedded
// 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod pass over `[a, b]`: returns (estimate, error bound).
fn qk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let fc = f(centr);
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0_f64; 7];
    let mut fv2 = [0.0_f64; 7];
    for j in 0..7 {
        let absc = hlgth * XGK[j];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        let fsum = f1 + f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * hlgth;
    resabs *= hlgth.abs();
    resasc *= hlgth.abs();
    let mut abserr = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && abserr != 0.0 {
        abserr = resasc * (200.0 * abserr / resasc).powf(1.5).min(1.0);
    }
    let eps50 = 50.0 * f64::EPSILON;
    if resabs > f64::MIN_POSITIVE / eps50 {
        abserr = abserr.max(eps50 * resabs);
    }
    (result, abserr)
}

struct Panel {
    err: f64,
    a: f64,
    b: f64,
    val: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .total_cmp(&other.err)
            .then(self.a.total_cmp(&other.a))
            .then(self.b.total_cmp(&other.b))
    }
}

const MAX_PANELS: usize = 200_000;

/// Left-to-right sum of panel values, independent of heap layout.
fn panel_sum(heap: BinaryHeap<Panel>) -> f64 {
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    panels.iter().map(|p| p.val).sum()
}

/// Worst-panel-first refinement over pre-split segments.
fn adaptive(f: &mut impl FnMut(f64) -> f64, segments: &[(f64, f64)], cfg: &QuadConfig) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    let mut sum_val = 0.0;
    let mut sum_err = 0.0;
    for &(a, b) in segments {
        let (val, err) = qk15(f, a, b);
        sum_val += val;
        sum_err += err;
        heap.push(Panel { err, a, b, val, depth: 0 });
    }
    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * sum_val.abs());
        if sum_err <= tol || heap.is_empty() {
            return Ok(panel_sum(heap));
        }
        let can_split = {
            let worst = heap.peek().expect("non-empty checked above");
            worst.depth < cfg.max_depth && heap.len() < MAX_PANELS
        };
        if !can_split {
            let best = panel_sum(heap);
            return Err(Error::QuadratureNonConvergence { best, err: sum_err, tol });
        }
        let worst = heap.pop().expect("non-empty checked above");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Splitting exhausted floating-point resolution; freeze this panel.
            sum_err -= worst.err;
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (val, err) = qk15(f, a, b);
            sum_val += val;
            sum_err += err;
            heap.push(Panel { err, a, b, val, depth: worst.depth + 1 });
        }
        sum_val -= worst.val;
        sum_err -= worst.err;
    }
}

fn check_inputs(f: &TFoT, g: &TFoT, interval: Interval, cfg: &QuadConfig) -> Result<()> {
    cfg.validate()?;
    if f.dim() != g.dim() {
        return Err(Error::DimMismatch { left: f.dim(), right: g.dim() });
    }
    if !interval.start.is_finite() || !interval.end.is_finite() || interval.start > interval.end {
        return Err(Error::InvalidArgument(format!(
            "integration interval [{}, {}]",
            interval.start, interval.end
        )));
    }
    for tr in [f, g] {
        let dom = tr.domain();
        for t in [interval.start, interval.end] {
            if !dom.contains(t) {
                return Err(Error::OutOfDomain { t, start: dom.start, end: dom.end });
            }
        }
    }
    Ok(())
}

/// Segment list over `interval`, split at every piece boundary of `f` and `g`.
fn split_segments(f: &TFoT, g: &TFoT, interval: Interval) -> Vec<(f64, f64)> {
    let mut pts = vec![interval.start, interval.end];
    for tr in [f, g] {
        for pc in tr.pieces() {
            for t in [pc.t_start, pc.t_end] {
                if t > interval.start && t < interval.end {
                    pts.push(t);
                }
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1]))
        .collect()
}

fn lp_diff(a: &[f64], b: &[f64], p: f64) -> f64 {
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    if p == 1.0 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
    } else if p == 2.0 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    } else {
        let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y).abs().powf(p)).sum();
        s.powf(1.0 / p)
    }
}

/// Integral over `interval` of the pointwise lp norm of `f - g`.
pub fn integrate_lp(f: &TFoT, g: &TFoT, interval: Interval, p: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidConfig(format!("norm order p={p}, need 1 <= p < inf")));
    }
    check_inputs(f, g, interval, cfg)?;
    if interval.end == interval.start {
        return Ok(0.0);
    }
    let segments = split_segments(f, g, interval);
    let dim = f.dim();
    let mut bf = vec![0.0; dim];
    let mut bg = vec![0.0; dim];
    let mut integrand = |t: f64| {
        f.eval_into(t, &mut bf);
        g.eval_into(t, &mut bg);
        lp_diff(&bf, &bg, p)
    };
    adaptive(&mut integrand, &segments, cfg)
}

/// Integral over `interval` of the squared Euclidean separation of `f` and `g`.
pub fn integrate_sq_l2(f: &TFoT, g: &TFoT, interval: Interval, cfg: &QuadConfig) -> Result<f64> {
    check_inputs(f, g, interval, cfg)?;
    if interval.end == interval.start {
        return Ok(0.0);
    }
    let segments = split_segments(f, g, interval);
    let dim = f.dim();
    let mut bf = vec![0.0; dim];
    let mut bg = vec![0.0; dim];
    let mut integrand = |t: f64| {
        f.eval_into(t, &mut bf);
        g.eval_into(t, &mut bg);
        bf.iter().zip(&bg).map(|(x, y)| (x - y) * (x - y)).sum::<f64>()
    };
    adaptive(&mut integrand, &segments, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::PolyPiece;

    fn line_1d() -> TFoT {
        TFoT::from_coeffs("line", vec![vec![0.0, 1.0]], Interval::new(0.0, 1.0)).unwrap()
    }

    fn zero_1d(domain: Interval) -> TFoT {
        TFoT::constant("zero", &[0.0], domain).unwrap()
    }

    #[test]
    fn integrates_linear_ramp() {
        let cfg = QuadConfig::default();
        let v = integrate_lp(&line_1d(), &zero_1d(Interval::new(0.0, 1.0)), Interval::new(0.0, 1.0), 2.0, &cfg).unwrap();
        assert!((v - 0.5).abs() < 1e-12, "{v}");
    }

    #[test]
    fn integrates_parabolic_hump() {
        let f = TFoT::from_coeffs("hump", vec![vec![0.0, 1.0, -1.0]], Interval::new(0.0, 1.0)).unwrap();
        let cfg = QuadConfig::default();
        let v = integrate_lp(&f, &zero_1d(Interval::new(0.0, 1.0)), Interval::new(0.0, 1.0), 1.0, &cfg).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn presplits_at_piece_boundaries() {
        let steps = TFoT::new(
            "steps",
            vec![
                PolyPiece::new(0.0, 1.0, vec![vec![1.0]]),
                PolyPiece::new(1.0, 2.0, vec![vec![3.0]]),
            ],
        )
        .unwrap();
        let cfg = QuadConfig::default();
        let v = integrate_lp(&steps, &zero_1d(Interval::new(0.0, 2.0)), Interval::new(0.0, 2.0), 2.0, &cfg).unwrap();
        assert!((v - 4.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn norm_orders_differ_in_two_dims() {
        let f = TFoT::from_coeffs("f", vec![vec![0.0, 1.0], vec![0.0, -1.0]], Interval::new(0.0, 1.0)).unwrap();
        let g = TFoT::constant("g", &[0.0, 0.0], Interval::new(0.0, 1.0)).unwrap();
        let cfg = QuadConfig::default();
        let v1 = integrate_lp(&f, &g, Interval::new(0.0, 1.0), 1.0, &cfg).unwrap();
        let v2 = integrate_lp(&f, &g, Interval::new(0.0, 1.0), 2.0, &cfg).unwrap();
        assert!((v1 - 1.0).abs() < 1e-12, "{v1}");
        assert!((v2 - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-12, "{v2}");
    }

    #[test]
    fn squared_l2_matches_closed_form() {
        // f - g = (t, -t): squared norm 2 t^2, integral over [0,1] = 2/3.
        let f = TFoT::from_coeffs("f", vec![vec![0.0, 1.0], vec![0.0, -1.0]], Interval::new(0.0, 1.0)).unwrap();
        let g = TFoT::constant("g", &[0.0, 0.0], Interval::new(0.0, 1.0)).unwrap();
        let v = integrate_sq_l2(&f, &g, Interval::new(0.0, 1.0), &QuadConfig::default()).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn zero_length_interval_is_zero() {
        let f = line_1d();
        let g = zero_1d(Interval::new(0.0, 1.0));
        let v = integrate_lp(&f, &g, Interval::new(0.5, 0.5), 2.0, &QuadConfig::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn rejects_bad_interval_order_and_domain() {
        let f = line_1d();
        let g = zero_1d(Interval::new(0.0, 1.0));
        let cfg = QuadConfig::default();
        assert!(matches!(
            integrate_lp(&f, &g, Interval::new(0.8, 0.2), 2.0, &cfg),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            integrate_lp(&f, &g, Interval::new(0.0, 1.5), 2.0, &cfg),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            integrate_lp(&f, &g, Interval::new(0.0, 1.0), 0.5, &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn symmetry_is_bitwise() {
        let f = TFoT::from_coeffs("f", vec![vec![1.0, -2.0, 0.25]], Interval::new(0.0, 4.0)).unwrap();
        let g = TFoT::from_coeffs("g", vec![vec![-0.5, 1.0]], Interval::new(0.0, 4.0)).unwrap();
        let cfg = QuadConfig::default();
        let iv = Interval::new(0.0, 4.0);
        let a = integrate_lp(&f, &g, iv, 1.0, &cfg).unwrap();
        let b = integrate_lp(&g, &f, iv, 1.0, &cfg).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn depth_limit_reports_best_estimate() {
        let f = TFoT::from_coeffs("f", vec![vec![-0.5, 1.0]], Interval::new(0.0, 1.0)).unwrap();
        let g = zero_1d(Interval::new(0.0, 1.0));
        let cfg = QuadConfig { rel_tol: 1e-15, abs_tol: f64::MIN_POSITIVE, max_depth: 2 };
        match integrate_lp(&f, &g, Interval::new(0.0, 1.0), 1.0, &cfg) {
            Err(Error::QuadratureNonConvergence { best, err, .. }) => {
                assert!((best - 0.25).abs() < 1e-3, "{best}");
                assert!(err > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn additivity_across_split_points() {
        let f = TFoT::from_coeffs("f", vec![vec![0.0, 0.0, 1.0]], Interval::new(0.0, 2.0)).unwrap();
        let g = zero_1d(Interval::new(0.0, 2.0));
        let cfg = QuadConfig::default();
        let whole = integrate_lp(&f, &g, Interval::new(0.0, 2.0), 2.0, &cfg).unwrap();
        let left = integrate_lp(&f, &g, Interval::new(0.0, 0.7), 2.0, &cfg).unwrap();
        let right = integrate_lp(&f, &g, Interval::new(0.7, 2.0), 2.0, &cfg).unwrap();
        assert!((whole - left - right).abs() < 1e-9 * whole.max(1.0));
    }

    /// Uniform-grid trapezoid sum, deliberately independent of the adaptive path.
    fn trapezoid(f: &TFoT, g: &TFoT, iv: Interval, p: f64, steps: usize) -> f64 {
        let h = iv.len() / steps as f64;
        let dim = f.dim();
        let mut bf = vec![0.0; dim];
        let mut bg = vec![0.0; dim];
        let mut eval = |t: f64| {
            f.eval_into(t, &mut bf);
            g.eval_into(t, &mut bg);
            lp_diff(&bf, &bg, p)
        };
        let mut sum = 0.5 * (eval(iv.start) + eval(iv.end));
        for i in 1..steps {
            sum += eval(iv.start + h * i as f64);
        }
        sum * h
    }

    #[test]
    fn agrees_with_trapezoid_oracle_on_kinked_integrand() {
        // Sign change at t=0.5 puts a kink inside the panel for p=1.
        let f = TFoT::from_coeffs("f", vec![vec![-0.5, 1.0], vec![0.3, -0.1]], Interval::new(0.0, 1.0)).unwrap();
        let g = TFoT::constant("g", &[0.0, 0.0], Interval::new(0.0, 1.0)).unwrap();
        let cfg = QuadConfig::default();
        for p in [1.0, 2.0, 3.0] {
            let a = integrate_lp(&f, &g, Interval::new(0.0, 1.0), p, &cfg).unwrap();
            let o = trapezoid(&f, &g, Interval::new(0.0, 1.0), p, 200_000);
            assert!((a - o).abs() <= 1e-6 * o.abs().max(1e-3), "p={p}: {a} vs {o}");
        }
    }
}
