//! Distance between two individual trajectories.
//!
//! Two trajectories are compared over the overlap of their domains; time where
//! only the estimate exists is charged as segment false alarm and time where
//! only the truth exists as segment missed detection. The aligned part is the
//! integrated lp separation, clamped so that no overlap can cost more than
//! being wrong everywhere. A further cap bounds the whole pair cost by the
//! cost of treating both trajectories as unmatched.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_lp, QuadConfig};
use crate::trajectory::{Interval, TFoT};
use crate::util::{pow_p, root_p};

/// Orders, cutoffs and quadrature settings for the trajectory metrics.
///
/// `c_sfa`/`c_smd` price one second of segment false alarm / missed detection,
/// `c_tfa`/`c_tmd` one second of unmatched whole trajectory. With
/// `distance_mode` set, the segment pair and the trajectory pair must each be
/// equal, which is the regime where the metric axioms hold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    pub p: f64,
    pub c_sfa: f64,
    pub c_smd: f64,
    pub c_tfa: f64,
    pub c_tmd: f64,
    #[serde(skip, default)]
    pub quad: QuadConfig,
    pub distance_mode: bool,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig::symmetric(2.0, 10.0, 10.0)
    }
}

impl MetricConfig {
    /// Config with equal false-alarm and missed-detection cutoffs.
    pub fn symmetric(p: f64, c_s: f64, c_t: f64) -> Self {
        MetricConfig {
            p,
            c_sfa: c_s,
            c_smd: c_s,
            c_tfa: c_t,
            c_tmd: c_t,
            quad: QuadConfig::default(),
            distance_mode: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) || !self.p.is_finite() {
            return Err(Error::InvalidConfig(format!("order p={}, need 1 <= p < inf", self.p)));
        }
        for (name, c) in [
            ("c_sfa", self.c_sfa),
            ("c_smd", self.c_smd),
            ("c_tfa", self.c_tfa),
            ("c_tmd", self.c_tmd),
        ] {
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::InvalidConfig(format!("cutoff {name}={c}, need 0 < {name} < inf")));
            }
        }
        if self.distance_mode && !self.is_distance() {
            return Err(Error::InvalidConfig(format!(
                "distance mode requires c_sfa == c_smd and c_tfa == c_tmd, got {}/{} and {}/{}",
                self.c_sfa, self.c_smd, self.c_tfa, self.c_tmd
            )));
        }
        self.quad.validate()
    }

    /// True when the cutoff symmetry needed for the metric axioms holds.
    pub fn is_distance(&self) -> bool {
        self.c_sfa == self.c_smd && self.c_tfa == self.c_tmd
    }
}

/// Temporal relation of an estimate `g` to a truth `f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Alignment {
    /// Common domain with positive length, if any.
    pub overlap: Option<Interval>,
    /// Seconds where only the estimate exists.
    pub t_sfa: f64,
    /// Seconds where only the truth exists.
    pub t_smd: f64,
}

/// Splits the two domains into overlap, false-alarm and missed-detection time.
pub fn align(f: &TFoT, g: &TFoT) -> Alignment {
    match f.domain().intersect(&g.domain()) {
        Some(ov) => Alignment {
            overlap: Some(ov),
            t_sfa: g.duration() - ov.len(),
            t_smd: f.duration() - ov.len(),
        },
        None => Alignment { overlap: None, t_sfa: g.duration(), t_smd: f.duration() },
    }
}

/// Cost of the aligned part, in p-th-power units.
///
/// The integrated lp separation over the overlap is clamped at the cost of
/// disagreeing by both cutoffs for the whole overlap length; an empty overlap
/// costs nothing here.
pub fn clamped_aligned_term(f: &TFoT, g: &TFoT, cfg: &MetricConfig) -> Result<f64> {
    cfg.validate()?;
    if f.dim() != g.dim() {
        return Err(Error::DimMismatch { left: f.dim(), right: g.dim() });
    }
    let ov = match align(f, g).overlap {
        Some(ov) => ov,
        None => return Ok(0.0),
    };
    let integral = integrate_lp(f, g, ov, cfg.p, &cfg.quad)?;
    let r = f.dim() as f64;
    let clamp = r * pow_p(cfg.c_sfa + cfg.c_smd, cfg.p) * pow_p(ov.len(), cfg.p);
    Ok(pow_p(integral, cfg.p).min(clamp))
}

pub(crate) fn pair_distance_pow(f: &TFoT, g: &TFoT, cfg: &MetricConfig) -> Result<f64> {
    let a = align(f, g);
    let aligned = clamped_aligned_term(f, g, cfg)?;
    let r = f.dim() as f64;
    Ok(r * pow_p(cfg.c_sfa * a.t_sfa + cfg.c_smd * a.t_smd, cfg.p) + aligned)
}

/// Distance between truth `f` and estimate `g`, charging segment false-alarm
/// and missed-detection time plus the clamped aligned separation.
pub fn pair_distance(f: &TFoT, g: &TFoT, cfg: &MetricConfig) -> Result<f64> {
    Ok(root_p(pair_distance_pow(f, g, cfg)?, cfg.p))
}

/// p-th power of [`capped_pair_distance`].
///
/// The cap bound holds exactly in this power space: the result never exceeds
/// `r*(c_tfa*T_g)^p + r*(c_tmd*T_f)^p`.
pub fn capped_pair_distance_pow(f: &TFoT, g: &TFoT, cfg: &MetricConfig) -> Result<f64> {
    let pair = pair_distance_pow(f, g, cfg)?;
    Ok(pair.min(unmatched_cap_pow(f, g, cfg)))
}

/// Cost of leaving the pair unmatched entirely, in p-th-power units.
pub(crate) fn unmatched_cap_pow(f: &TFoT, g: &TFoT, cfg: &MetricConfig) -> f64 {
    let r = f.dim() as f64;
    r * pow_p(cfg.c_tfa * g.duration(), cfg.p) + r * pow_p(cfg.c_tmd * f.duration(), cfg.p)
}

/// Pair distance capped at the cost of treating both trajectories as unmatched.
pub fn capped_pair_distance(f: &TFoT, g: &TFoT, cfg: &MetricConfig) -> Result<f64> {
    Ok(root_p(capped_pair_distance_pow(f, g, cfg)?, cfg.p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg_11(c_s: f64, c_t: f64) -> MetricConfig {
        MetricConfig::symmetric(1.0, c_s, c_t)
    }

    fn const_1d(id: &str, v: f64, a: f64, b: f64) -> TFoT {
        TFoT::constant(id, &[v], Interval::new(a, b)).unwrap()
    }

    #[test]
    fn align_splits_overlap_and_exclusive_time() {
        let f = const_1d("f", 0.0, 0.0, 10.0);
        let g = const_1d("g", 5.0, 2.0, 12.0);
        let a = align(&f, &g);
        assert_eq!(a.overlap, Some(Interval::new(2.0, 10.0)));
        assert_eq!(a.t_sfa, 2.0);
        assert_eq!(a.t_smd, 2.0);
    }

    #[test]
    fn align_disjoint_charges_full_durations() {
        let f = const_1d("f", 0.0, 0.0, 5.0);
        let g = const_1d("g", 0.0, 6.0, 10.0);
        let a = align(&f, &g);
        assert_eq!(a.overlap, None);
        assert_eq!(a.t_sfa, 4.0);
        assert_eq!(a.t_smd, 5.0);
    }

    #[test]
    fn aligned_term_clamps_only_when_cheaper() {
        let cfg = cfg_11(10.0, 10.0);
        let f = const_1d("f", 0.0, 0.0, 10.0);
        let g = const_1d("g", 5.0, 2.0, 12.0);
        // Integral 40 beats the clamp 160.
        assert!((clamped_aligned_term(&f, &g, &cfg).unwrap() - 40.0).abs() < 1e-9);

        let far = const_1d("far", 1e6, 0.0, 1.0);
        let near = const_1d("near", 0.0, 0.0, 1.0);
        // Clamp 20 beats the integral 1e6.
        assert!((clamped_aligned_term(&near, &far, &cfg).unwrap() - 20.0).abs() < 1e-9);
    }

    #[test]
    fn pair_distance_spot_values() {
        let cfg = cfg_11(10.0, 10.0);
        let f = const_1d("f", 0.0, 0.0, 10.0);
        let g = const_1d("g", 5.0, 2.0, 12.0);
        assert!((pair_distance(&f, &g, &cfg).unwrap() - 80.0).abs() < 1e-9);

        let a = const_1d("a", 0.0, 0.0, 5.0);
        let b = const_1d("b", 0.0, 6.0, 10.0);
        assert!((pair_distance(&a, &b, &cfg).unwrap() - 90.0).abs() < 1e-9);
    }

    #[test]
    fn identity_is_exact_zero() {
        let f = TFoT::from_coeffs("f", vec![vec![1.0, -0.5, 0.125]], Interval::new(0.0, 7.0)).unwrap();
        let cfg = MetricConfig::default();
        assert_eq!(pair_distance(&f, &f.clone(), &cfg).unwrap(), 0.0);
    }

    #[test]
    fn symmetry_is_bitwise_with_equal_cutoffs() {
        let f = TFoT::from_coeffs("f", vec![vec![0.0, 1.0]], Interval::new(0.0, 9.0)).unwrap();
        let g = const_1d("g", 2.0, 3.0, 12.0);
        for cfg in [cfg_11(10.0, 10.0), MetricConfig::symmetric(2.0, 1.0, 5.0)] {
            let d1 = pair_distance(&f, &g, &cfg).unwrap();
            let d2 = pair_distance(&g, &f, &cfg).unwrap();
            assert_eq!(d1.to_bits(), d2.to_bits());
        }
    }

    #[test]
    fn cap_prices_double_unmatch() {
        let cfg = cfg_11(10.0, 10.0);
        let f = const_1d("f", 0.0, 0.0, 10.0);
        let g = const_1d("g", 5.0, 2.0, 12.0);
        // Cap is 10*10 + 10*10 = 200, far above 80.
        assert!((capped_pair_distance(&f, &g, &cfg).unwrap() - 80.0).abs() < 1e-9);

        let mut huge = cfg_11(1e6, 1.0);
        huge.c_tfa = 1.0;
        huge.c_tmd = 1.0;
        let near = const_1d("near", 0.0, 0.0, 1.0);
        let far = const_1d("far", 1e9, 0.0, 1.0);
        assert!((capped_pair_distance(&near, &far, &huge).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_configs_and_dims() {
        let f = const_1d("f", 0.0, 0.0, 1.0);
        let g2 = TFoT::constant("g", &[0.0, 0.0], Interval::new(0.0, 1.0)).unwrap();
        let cfg = MetricConfig::default();
        assert!(matches!(pair_distance(&f, &g2, &cfg), Err(Error::DimMismatch { .. })));

        let mut zero_cut = cfg;
        zero_cut.c_sfa = 0.0;
        assert!(matches!(zero_cut.validate(), Err(Error::InvalidConfig(_))));

        let mut lopsided = cfg;
        lopsided.c_sfa = 1.0;
        assert!(matches!(lopsided.validate(), Err(Error::InvalidConfig(_))));
        lopsided.distance_mode = false;
        assert!(lopsided.validate().is_ok());
        assert!(!lopsided.is_distance());
    }

    #[test]
    fn cap_dominance_holds_exactly_in_power_space() {
        let cfg = MetricConfig::symmetric(2.0, 3.0, 7.0);
        let f = TFoT::from_coeffs("f", vec![vec![0.0, 2.0]], Interval::new(0.0, 6.0)).unwrap();
        let g = const_1d("g", 40.0, 4.0, 9.0);
        let capped = capped_pair_distance_pow(&f, &g, &cfg).unwrap();
        assert!(capped <= unmatched_cap_pow(&f, &g, &cfg));
        assert!(capped <= pair_distance_pow(&f, &g, &cfg).unwrap());
    }
}
