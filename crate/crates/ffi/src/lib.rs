//! C interface to the trajectory-set distances: opaque handles, status
//! codes, and a thread-local last-error message.

use std::cell::RefCell;
use std::ffi::CStr;
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::{c_char, size_t};
use starid::{Error, Interval, MetricConfig, TrajectorySet};

/// Outcome of a call; anything but `Ok` leaves a message readable through
/// `starid_last_error`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaridStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseFailure = 3,
    DimMismatch = 4,
    NumericFailure = 5,
    InvalidInput = 6,
    Panic = 7,
}

/// Opaque set of continuous-time trajectories.
pub struct StaridTrajectorySet {
    inner: TrajectorySet,
}

/// Distance parameters; `starid_config_default` fills the single-target
/// preset (p = 2, all cutoffs 10).
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct StaridMetricConfig {
    pub p: f64,
    pub c_sfa: f64,
    pub c_smd: f64,
    pub c_tfa: f64,
    pub c_tmd: f64,
    /// Reject unequal false-alarm/missed-detection cutoffs.
    pub distance_mode: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(message: &str) {
    LAST_ERROR.with(|slot| {
        let mut bytes = slot.borrow_mut();
        bytes.clear();
        bytes.extend_from_slice(message.as_bytes());
        bytes.push(0);
    });
}

fn fail(err: &Error) -> StaridStatus {
    set_last_error(&err.to_string());
    match err {
        Error::Parse(_) | Error::Io(_) => StaridStatus::ParseFailure,
        Error::DimMismatch { .. } => StaridStatus::DimMismatch,
        Error::QuadratureNonConvergence { .. } | Error::FitNonConvergence { .. } => {
            StaridStatus::NumericFailure
        }
        _ => StaridStatus::InvalidInput,
    }
}

fn null_argument(name: &str) -> StaridStatus {
    set_last_error(&format!("{name} is null"));
    StaridStatus::NullArgument
}

fn guarded(body: impl FnOnce() -> StaridStatus) -> StaridStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            StaridStatus::Panic
        }
    }
}

fn to_config(cfg: &StaridMetricConfig) -> MetricConfig {
    let mut out = MetricConfig::symmetric(cfg.p, cfg.c_sfa, cfg.c_tfa);
    out.c_smd = cfg.c_smd;
    out.c_tmd = cfg.c_tmd;
    out.distance_mode = cfg.distance_mode;
    out
}

/// Copies the message of the most recent failure on this thread into `buf`
/// (NUL-terminated, truncated to `cap`) and returns the full length the
/// message needs including the terminator; 0 means no failure yet.
///
/// # Safety
/// `buf` must point to `cap` writable bytes, or be null with `cap` 0 to
/// query the needed length.
#[no_mangle]
pub unsafe extern "C" fn starid_last_error(buf: *mut c_char, cap: size_t) -> size_t {
    LAST_ERROR.with(|slot| {
        let bytes = slot.borrow();
        if bytes.is_empty() {
            return 0;
        }
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Parses a trajectory set from its JSON form and hands back an owned
/// handle in `out`; free it with `starid_set_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn starid_set_from_json(
    json: *const c_char,
    out: *mut *mut StaridTrajectorySet,
) -> StaridStatus {
    if json.is_null() {
        return null_argument("json");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(text) => text,
        Err(_) => {
            set_last_error("json is not valid UTF-8");
            return StaridStatus::InvalidUtf8;
        }
    };
    guarded(|| match TrajectorySet::from_json_str(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(StaridTrajectorySet { inner }));
            StaridStatus::Ok
        }
        Err(err) => fail(&err),
    })
}

/// Releases a handle from `starid_set_from_json`; null is a no-op.
///
/// # Safety
/// `set` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn starid_set_free(set: *mut StaridTrajectorySet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Writes the state dimension of the set into `out`.
///
/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn starid_set_dim(
    set: *const StaridTrajectorySet,
    out: *mut size_t,
) -> StaridStatus {
    if set.is_null() {
        return null_argument("set");
    }
    if out.is_null() {
        return null_argument("out");
    }
    *out = (*set).inner.dim();
    StaridStatus::Ok
}

/// Writes the number of trajectories in the set into `out`.
///
/// # Safety
/// `set` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn starid_set_len(
    set: *const StaridTrajectorySet,
    out: *mut size_t,
) -> StaridStatus {
    if set.is_null() {
        return null_argument("set");
    }
    if out.is_null() {
        return null_argument("out");
    }
    *out = (*set).inner.len();
    StaridStatus::Ok
}

/// Fills `out` with the single-target preset.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn starid_config_default(out: *mut StaridMetricConfig) -> StaridStatus {
    if out.is_null() {
        return null_argument("out");
    }
    *out = StaridMetricConfig {
        p: 2.0,
        c_sfa: 10.0,
        c_smd: 10.0,
        c_tfa: 10.0,
        c_tmd: 10.0,
        distance_mode: true,
    };
    StaridStatus::Ok
}

/// Set distance between truth and estimate, written to `out` in
/// meter-seconds.
///
/// # Safety
/// All pointers must be valid; the sets must outlive the call.
#[no_mangle]
pub unsafe extern "C" fn starid_star_id(
    truth: *const StaridTrajectorySet,
    estimate: *const StaridTrajectorySet,
    cfg: *const StaridMetricConfig,
    out: *mut f64,
) -> StaridStatus {
    if truth.is_null() {
        return null_argument("truth");
    }
    if estimate.is_null() {
        return null_argument("estimate");
    }
    if cfg.is_null() {
        return null_argument("cfg");
    }
    if out.is_null() {
        return null_argument("out");
    }
    guarded(|| {
        match starid::star_id(&(*truth).inner, &(*estimate).inner, &to_config(&*cfg)) {
            Ok(value) => {
                *out = value;
                StaridStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Time-averaged set distance over `[window_start, window_end]`, written to
/// `out` in meters.
///
/// # Safety
/// All pointers must be valid; the sets must outlive the call.
#[no_mangle]
pub unsafe extern "C" fn starid_ta_star_id(
    truth: *const StaridTrajectorySet,
    estimate: *const StaridTrajectorySet,
    cfg: *const StaridMetricConfig,
    window_start: f64,
    window_end: f64,
    out: *mut f64,
) -> StaridStatus {
    if truth.is_null() {
        return null_argument("truth");
    }
    if estimate.is_null() {
        return null_argument("estimate");
    }
    if cfg.is_null() {
        return null_argument("cfg");
    }
    if out.is_null() {
        return null_argument("out");
    }
    guarded(|| {
        let window = Interval::new(window_start, window_end);
        match starid::ta_star_id(&(*truth).inner, &(*estimate).inner, &to_config(&*cfg), window) {
            Ok(value) => {
                *out = value;
                StaridStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

unsafe fn points(buf: *const f64, count: size_t, dim: size_t) -> Vec<Vec<f64>> {
    let flat = std::slice::from_raw_parts(buf, count * dim);
    flat.chunks_exact(dim).map(<[f64]>::to_vec).collect()
}

/// Point-set distance between `x` (`m` rows) and `y` (`n` rows), both
/// row-major with `dim` columns, written to `out`.
///
/// # Safety
/// `x` must hold `m * dim` doubles and `y` `n * dim`; `out` must be valid.
/// Null row buffers are accepted only for zero row counts.
#[no_mangle]
pub unsafe extern "C" fn starid_ospa(
    x: *const f64,
    m: size_t,
    y: *const f64,
    n: size_t,
    dim: size_t,
    p: f64,
    cutoff: f64,
    out: *mut f64,
) -> StaridStatus {
    if x.is_null() && m > 0 {
        return null_argument("x");
    }
    if y.is_null() && n > 0 {
        return null_argument("y");
    }
    if out.is_null() {
        return null_argument("out");
    }
    if dim == 0 {
        set_last_error("dim must be positive");
        return StaridStatus::InvalidInput;
    }
    guarded(|| {
        let xs = if m == 0 { Vec::new() } else { points(x, m, dim) };
        let ys = if n == 0 { Vec::new() } else { points(y, n, dim) };
        match starid::ospa(&xs, &ys, p, cutoff) {
            Ok(value) => {
                *out = value;
                StaridStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Unnormalized point-set distance with cardinality term `alpha`, same
/// buffer layout as `starid_ospa`.
///
/// # Safety
/// As for `starid_ospa`.
#[no_mangle]
pub unsafe extern "C" fn starid_gospa(
    x: *const f64,
    m: size_t,
    y: *const f64,
    n: size_t,
    dim: size_t,
    p: f64,
    cutoff: f64,
    alpha: f64,
    out: *mut f64,
) -> StaridStatus {
    if x.is_null() && m > 0 {
        return null_argument("x");
    }
    if y.is_null() && n > 0 {
        return null_argument("y");
    }
    if out.is_null() {
        return null_argument("out");
    }
    if dim == 0 {
        set_last_error("dim must be positive");
        return StaridStatus::InvalidInput;
    }
    guarded(|| {
        let xs = if m == 0 { Vec::new() } else { points(x, m, dim) };
        let ys = if n == 0 { Vec::new() } else { points(y, n, dim) };
        match starid::gospa(&xs, &ys, p, cutoff, alpha) {
            Ok(value) => {
                *out = value;
                StaridStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}
