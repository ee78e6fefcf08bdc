//! Spatiotemporal distances between sets of continuous-time trajectories.
//!
//! Trajectories are piecewise polynomials of time. The crate evaluates a
//! set-level mismatch that charges false-alarm and missed-detection time at
//! both segment and whole-trajectory granularity, its time-averaged variant,
//! and point/track baselines for comparison, plus scenario generators and a
//! property harness exercising the metric axioms.

pub mod assignment;
pub mod axioms;
pub mod baselines;
pub mod cli;
pub mod error;
pub mod pairwise;
pub mod quadrature;
pub mod scenarios;
pub mod starid;
pub mod trajectory;
mod util;

pub use assignment::{brute_force, solve, AssignmentProblem, AssignmentResult};
pub use axioms::{rand_continuous_tfot, rand_set, rand_tfot, run_all, trapezoid_lp, AxiomReport};
pub use baselines::{
    gospa, imta, load_tracks_csv, ospa, ospa2, points_at, sample_tracks, save_tracks_csv, Track,
};
pub use error::{Error, Result};
pub use pairwise::{align, capped_pair_distance, pair_distance, Alignment, MetricConfig};
pub use quadrature::{integrate_lp, integrate_sq_l2, QuadConfig};
pub use scenarios::{
    estimate_bearing, estimate_multitarget, fit_bearing_tfot, fit_polynomial_ls, gen_maneuvering,
    gen_multitarget, monte_carlo_maneuvering, monte_carlo_multitarget, run_seed, wrap_angle,
    BearingFit, ManeuverSegment, ManeuverSpec, Measurement, MeasurementLog, ScenarioSpec, Sensor,
    SeriesRequest, TargetSpec,
};
pub use starid::{
    star_id, star_id_detailed, ta_star_id, windowed_series, EvalParams, MetricKind, MetricSeries,
    WindowPolicy,
};
pub use trajectory::{Interval, PolyPiece, TFoT, TrajectorySet};
