//! C interface over the threshold-analysis toolkit.
//!
//! Conventions:
//!
//! - Every fallible function returns an [`RkStatus`]; `RK_STATUS_OK` means
//!   all output parameters were written, any other value means none were
//!   (except for the `BUFFER_TOO_SMALL` protocols, which still report the
//!   required size). [`rk_last_error`] describes the most recent failure
//!   on the calling thread.
//! - Handles (`RkScoreSet`, `RkRocCurve`, `RkSweep`, `RkDataset`) are
//!   opaque. Every handle returned through an out-parameter is owned by
//!   the caller and must be released with the matching `rk_*_free`
//!   function exactly once. The free functions accept null.
//! - Buffers are passed as pointer + capacity. Calling with capacity 0
//!   queries the required size through the length out-parameter.
//!
//! A panic never crosses the boundary: it is caught and reported as
//! `RK_STATUS_INTERNAL`.

use rocknee::gaussian::{self, GaussianModel, ScoreSet};
use rocknee::ingest::{self, DatasetFile, GeneratorConfig, IngestError};
use rocknee::knee::{self, CurveDirection, KneeError, KneePoint, SampleProbabilities, Shape};
use rocknee::roc::{
    self, Method2Params, Method2Sweep, RocCurve, RocError, Semantics, SweepConfig, SweepDirection,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkStatus {
    /// The call succeeded and all output parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument or parsed payload was malformed.
    InvalidInput = 2,
    /// The data was well-formed but too small for the computation.
    InsufficientData = 3,
    /// An internal invariant failed; the handle state is unchanged.
    Internal = 4,
    /// The provided buffer cannot hold the result; the required size was
    /// written to the length out-parameter.
    BufferTooSmall = 5,
}

/// Owned score collection split into positives and negatives.
pub struct RkScoreSet {
    inner: ScoreSet,
}

/// Owned ROC curve: sampled points plus the trapezoid AUC.
pub struct RkRocCurve {
    inner: RocCurve,
}

/// Owned result of a redistribution sweep: derived curves and one record
/// per iteration.
pub struct RkSweep {
    inner: Method2Sweep,
}

/// Owned multi-class probability dataset.
pub struct RkDataset {
    inner: DatasetFile,
}

/// Knee location on a sampled curve. `found == 0` means the detector ran
/// successfully but no point qualified; the remaining fields are zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkKneePoint {
    pub found: u8,
    pub index: u64,
    pub x: f64,
    pub y: f64,
}

/// Knee-to-diagonal geometry: perpendicular foot, signed distance, and the
/// maximum threshold `0.5 + distance` clamped to `[0, 1]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkThreshold {
    pub foot_x: f64,
    pub foot_y: f64,
    pub distance: f64,
    pub threshold: f64,
}

/// One redistribution iteration: the snapped threshold, holder sizes, and
/// the index of the derived curve when one was produced (`has_curve != 0`).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkIteration {
    pub threshold: f64,
    pub skipped: u8,
    pub has_curve: u8,
    pub curve_index: u64,
    pub true_positive_count: u64,
    pub false_negative_count: u64,
    pub false_positive_count: u64,
    pub true_negative_count: u64,
}

/// Aggregate knee statistics over a dataset. `in_range_fraction` is only
/// meaningful when `has_in_range_fraction != 0` (it requires at least one
/// sample above the probability cutoff).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkKneeStats {
    pub total: u64,
    pub high_count: u64,
    pub high_fraction: f64,
    pub in_range_count: u64,
    pub has_in_range_fraction: u8,
    pub in_range_fraction: f64,
    pub no_knee_count: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl AsRef<str>) {
    let sanitized = message.as_ref().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default());
}

fn fail(status: RkStatus, err: impl Display) -> RkStatus {
    set_last_error(err.to_string());
    status
}

fn null_arg(name: &str) -> RkStatus {
    fail(RkStatus::NullArgument, format!("null argument: {name}"))
}

/// Catches panics so they surface as a status instead of unwinding into C.
fn guarded(body: impl FnOnce() -> RkStatus) -> RkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(RkStatus::Internal, "internal panic crossed the C boundary"),
    }
}

fn roc_status(err: &RocError) -> RkStatus {
    match err {
        RocError::InsufficientScores { .. }
        | RocError::InsufficientPoints(_)
        | RocError::NoCurves => RkStatus::InsufficientData,
        RocError::NonPositiveStep(_) | RocError::InvalidSweep(_) | RocError::Gaussian(_) => {
            RkStatus::InvalidInput
        }
        RocError::InvalidCurve(_) => RkStatus::Internal,
    }
}

fn knee_status(err: &KneeError) -> RkStatus {
    match err {
        KneeError::InsufficientPoints(_)
        | KneeError::InsufficientClasses(_)
        | KneeError::NoSamples => RkStatus::InsufficientData,
        // Everything else describes caller-supplied coordinates or
        // probabilities, which makes it an input problem at this boundary.
        _ => RkStatus::InvalidInput,
    }
}

fn ingest_status(_err: &IngestError) -> RkStatus {
    RkStatus::InvalidInput
}

/// Reads `len` doubles, treating a null pointer as an error unless the
/// length is zero.
unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char) -> Result<&'a str, RkStatus> {
    if ptr.is_null() {
        return Err(null_arg("text"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|err| fail(RkStatus::InvalidInput, format!("text is not UTF-8: {err}")))
}

fn knee_point_out(knee: Option<KneePoint>) -> RkKneePoint {
    match knee {
        Some(k) => RkKneePoint {
            found: 1,
            index: k.index as u64,
            x: k.x,
            y: k.y,
        },
        None => RkKneePoint {
            found: 0,
            index: 0,
            x: 0.0,
            y: 0.0,
        },
    }
}

/// Version of the library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent failure on the calling thread, or
/// null if none occurred. The pointer stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn rk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        let guard = slot.borrow();
        if guard.as_bytes().is_empty() {
            std::ptr::null()
        } else {
            guard.as_ptr()
        }
    })
}

/// Error function approximation (Abramowitz & Stegun 7.1.26, max absolute
/// error 1.5e-7).
#[no_mangle]
pub extern "C" fn rk_erf(x: f64) -> f64 {
    gaussian::erf(x)
}

/// Gaussian CDF at `t` for the model `(mu, sigma)`; sigma is floored to a
/// small positive value inside the library.
#[no_mangle]
pub extern "C" fn rk_gaussian_cdf(t: f64, mu: f64, sigma: f64) -> f64 {
    gaussian::cdf(t, &GaussianModel { mu, sigma })
}

/// Upper tail mass at `t`: the exact complement of [`rk_gaussian_cdf`].
#[no_mangle]
pub extern "C" fn rk_gaussian_tail_mass(t: f64, mu: f64, sigma: f64) -> f64 {
    gaussian::tail_mass(t, &GaussianModel { mu, sigma })
}

/// Fits a Gaussian model (mean, floored population standard deviation) to
/// the scores.
///
/// # Safety
/// `scores` must point to `len` readable doubles; the out-pointers must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rk_fit_gaussian(
    scores: *const f64,
    len: usize,
    out_mu: *mut f64,
    out_sigma: *mut f64,
) -> RkStatus {
    guarded(|| {
        let Some(scores) = slice_arg(scores, len) else {
            return null_arg("scores");
        };
        if out_mu.is_null() || out_sigma.is_null() {
            return null_arg("out_mu / out_sigma");
        }
        match gaussian::fit_gaussian(scores) {
            Ok(model) => {
                *out_mu = model.mu;
                *out_sigma = model.sigma;
                RkStatus::Ok
            }
            Err(err) => fail(RkStatus::InvalidInput, err),
        }
    })
}

/// Builds a score set from two arrays of finite scores.
///
/// # Safety
/// The arrays must hold the stated number of readable doubles and `out`
/// must be writable. The returned handle must be released with
/// [`rk_scoreset_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_scoreset_new(
    positives: *const f64,
    positives_len: usize,
    negatives: *const f64,
    negatives_len: usize,
    out: *mut *mut RkScoreSet,
) -> RkStatus {
    guarded(|| {
        let Some(positives) = slice_arg(positives, positives_len) else {
            return null_arg("positives");
        };
        let Some(negatives) = slice_arg(negatives, negatives_len) else {
            return null_arg("negatives");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match ScoreSet::new(positives.to_vec(), negatives.to_vec()) {
            Ok(scores) => {
                *out = Box::into_raw(Box::new(RkScoreSet { inner: scores }));
                RkStatus::Ok
            }
            Err(err) => fail(RkStatus::InvalidInput, err),
        }
    })
}

/// Parses a `score,label` CSV document (labels `pos` / `neg`) into a score
/// set.
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string and `out` must be
/// writable. The returned handle must be released with
/// [`rk_scoreset_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_scoreset_parse(
    text: *const c_char,
    out: *mut *mut RkScoreSet,
) -> RkStatus {
    guarded(|| {
        let text = match str_arg(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        if out.is_null() {
            return null_arg("out");
        }
        match ingest::parse_scores_str(text) {
            Ok(scores) => {
                *out = Box::into_raw(Box::new(RkScoreSet { inner: scores }));
                RkStatus::Ok
            }
            Err(err) => fail(ingest_status(&err), err),
        }
    })
}

/// Number of positive scores in the set; 0 for a null handle.
///
/// # Safety
/// `scores` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_scoreset_positive_count(scores: *const RkScoreSet) -> usize {
    scores.as_ref().map_or(0, |s| s.inner.positives().len())
}

/// Number of negative scores in the set; 0 for a null handle.
///
/// # Safety
/// `scores` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_scoreset_negative_count(scores: *const RkScoreSet) -> usize {
    scores.as_ref().map_or(0, |s| s.inner.negatives().len())
}

/// Releases a score set. Null is ignored.
///
/// # Safety
/// `scores` must be null or an owned handle returned by this interface
/// that has not already been freed; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rk_scoreset_free(scores: *mut RkScoreSet) {
    if !scores.is_null() {
        drop(Box::from_raw(scores));
    }
}

/// Builds the direct (method 1) ROC curve by sweeping thresholds over
/// Gaussian models of the two score lists. Pass NaN for `sweep_lo` /
/// `sweep_hi` to derive the window from the data, and 0 for `sweep_steps`
/// to use the default of 200.
///
/// # Safety
/// `scores` must be a live handle and `out` writable. The returned curve
/// must be released with [`rk_curve_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_method1_roc(
    scores: *const RkScoreSet,
    sweep_lo: f64,
    sweep_hi: f64,
    sweep_steps: usize,
    out: *mut *mut RkRocCurve,
) -> RkStatus {
    guarded(|| {
        let Some(scores) = scores.as_ref() else {
            return null_arg("scores");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let sweep = SweepConfig {
            lo: (!sweep_lo.is_nan()).then_some(sweep_lo),
            hi: (!sweep_hi.is_nan()).then_some(sweep_hi),
            steps: if sweep_steps == 0 {
                roc::DEFAULT_SWEEP_STEPS
            } else {
                sweep_steps
            },
        };
        match roc::method1_roc(&scores.inner, &sweep) {
            Ok(curve) => {
                *out = Box::into_raw(Box::new(RkRocCurve { inner: curve }));
                RkStatus::Ok
            }
            Err(err) => fail(roc_status(&err), err),
        }
    })
}

/// Trapezoid AUC of the curve; NaN for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_curve_auc(curve: *const RkRocCurve) -> f64 {
    curve.as_ref().map_or(f64::NAN, |c| c.inner.auc)
}

/// Number of sampled points on the curve; 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_curve_point_count(curve: *const RkRocCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.inner.points.len())
}

/// Copies one curve point (sweep threshold, false-positive rate,
/// true-positive rate) into the out-pointers.
///
/// # Safety
/// `curve` must be a live handle and the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn rk_curve_point(
    curve: *const RkRocCurve,
    index: usize,
    out_threshold: *mut f64,
    out_fpr: *mut f64,
    out_tpr: *mut f64,
) -> RkStatus {
    guarded(|| {
        let Some(curve) = curve.as_ref() else {
            return null_arg("curve");
        };
        if out_threshold.is_null() || out_fpr.is_null() || out_tpr.is_null() {
            return null_arg("out_threshold / out_fpr / out_tpr");
        }
        let Some(point) = curve.inner.points.get(index) else {
            return fail(
                RkStatus::InvalidInput,
                format!(
                    "point index {index} out of range (curve has {})",
                    curve.inner.points.len()
                ),
            );
        };
        *out_threshold = point.threshold;
        *out_fpr = point.fpr;
        *out_tpr = point.tpr;
        RkStatus::Ok
    })
}

/// Releases a curve. Null is ignored.
///
/// # Safety
/// `curve` must be null or an owned handle returned by this interface
/// that has not already been freed; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rk_curve_free(curve: *mut RkRocCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Runs the iterative redistribution sweep (method 2): thresholds from
/// `t_init` through `t_stop` in steps of `step` (descending when
/// `descending != 0`), each iteration splitting the scores into
/// confusion-matrix holders and re-deriving a ROC curve when both derived
/// lists keep at least two elements. `conventional != 0` selects the
/// conventional holder pairing; 0 keeps the as-written pairing. Pass 0 for
/// `sweep_steps` to sample derived curves at the default resolution.
///
/// # Safety
/// `scores` must be a live handle and `out` writable. The returned sweep
/// must be released with [`rk_sweep_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_method2_sweep(
    scores: *const RkScoreSet,
    t_init: f64,
    step: f64,
    t_stop: f64,
    descending: u8,
    conventional: u8,
    sweep_steps: usize,
    out: *mut *mut RkSweep,
) -> RkStatus {
    guarded(|| {
        let Some(scores) = scores.as_ref() else {
            return null_arg("scores");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let params = Method2Params {
            t_init,
            step,
            t_stop,
            direction: if descending != 0 {
                SweepDirection::Descending
            } else {
                SweepDirection::Ascending
            },
            semantics: if conventional != 0 {
                Semantics::Conventional
            } else {
                Semantics::AsWritten
            },
            curve_sweep: SweepConfig {
                lo: None,
                hi: None,
                steps: if sweep_steps == 0 {
                    roc::DEFAULT_SWEEP_STEPS
                } else {
                    sweep_steps
                },
            },
        };
        match roc::method2_sweep(&scores.inner, &params) {
            Ok(sweep) => {
                *out = Box::into_raw(Box::new(RkSweep { inner: sweep }));
                RkStatus::Ok
            }
            Err(err) => fail(roc_status(&err), err),
        }
    })
}

/// Number of derived curves the sweep produced; 0 for a null handle.
///
/// # Safety
/// `sweep` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_sweep_curve_count(sweep: *const RkSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.inner.curves.len())
}

/// Number of iterations the sweep recorded (including skipped ones); 0 for
/// a null handle.
///
/// # Safety
/// `sweep` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_sweep_iteration_count(sweep: *const RkSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.inner.iterations.len())
}

/// Copies one derived curve out of the sweep as an independent handle.
///
/// # Safety
/// `sweep` must be a live handle and `out` writable. The returned curve is
/// owned by the caller and must be released with [`rk_curve_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_sweep_curve(
    sweep: *const RkSweep,
    index: usize,
    out: *mut *mut RkRocCurve,
) -> RkStatus {
    guarded(|| {
        let Some(sweep) = sweep.as_ref() else {
            return null_arg("sweep");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let Some(curve) = sweep.inner.curves.get(index) else {
            return fail(
                RkStatus::InvalidInput,
                format!(
                    "curve index {index} out of range (sweep has {})",
                    sweep.inner.curves.len()
                ),
            );
        };
        *out = Box::into_raw(Box::new(RkRocCurve {
            inner: curve.clone(),
        }));
        RkStatus::Ok
    })
}

/// Copies one iteration record out of the sweep.
///
/// # Safety
/// `sweep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rk_sweep_iteration(
    sweep: *const RkSweep,
    index: usize,
    out: *mut RkIteration,
) -> RkStatus {
    guarded(|| {
        let Some(sweep) = sweep.as_ref() else {
            return null_arg("sweep");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let Some(record) = sweep.inner.iterations.get(index) else {
            return fail(
                RkStatus::InvalidInput,
                format!(
                    "iteration index {index} out of range (sweep has {})",
                    sweep.inner.iterations.len()
                ),
            );
        };
        *out = RkIteration {
            threshold: record.threshold,
            skipped: record.skipped as u8,
            has_curve: record.curve_index.is_some() as u8,
            curve_index: record.curve_index.unwrap_or(0) as u64,
            true_positive_count: record.true_positive_count as u64,
            false_negative_count: record.false_negative_count as u64,
            false_positive_count: record.false_positive_count as u64,
            true_negative_count: record.true_negative_count as u64,
        };
        RkStatus::Ok
    })
}

/// Releases a sweep. Null is ignored.
///
/// # Safety
/// `sweep` must be null or an owned handle returned by this interface
/// that has not already been freed; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rk_sweep_free(sweep: *mut RkSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Picks the curve farthest from chance (largest `|auc - 0.5|`, earliest
/// index on ties) out of an array of curve handles.
///
/// # Safety
/// `curves` must point to `len` live curve handles and `out_index` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rk_select_best(
    curves: *const *const RkRocCurve,
    len: usize,
    out_index: *mut usize,
) -> RkStatus {
    guarded(|| {
        if curves.is_null() && len > 0 {
            return null_arg("curves");
        }
        if out_index.is_null() {
            return null_arg("out_index");
        }
        let handles = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(curves, len)
        };
        let mut pool = Vec::with_capacity(len);
        for (i, handle) in handles.iter().enumerate() {
            let Some(curve) = handle.as_ref() else {
                return null_arg(&format!("curves[{i}]"));
            };
            pool.push(curve.inner.clone());
        }
        match roc::select_best_index(&pool) {
            Ok(index) => {
                *out_index = index;
                RkStatus::Ok
            }
            Err(err) => fail(roc_status(&err), err),
        }
    })
}

/// Runs knee detection over `(x, y)` points with strictly monotone x.
/// `convex != 0` selects the convex difference curve, `decreasing != 0`
/// declares y decreasing in x. A successful call with `out->found == 0`
/// means no point qualified at the given sensitivity.
///
/// # Safety
/// `xs` and `ys` must each point to `len` readable doubles and `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_find_knee(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    convex: u8,
    decreasing: u8,
    sensitivity: f64,
    out: *mut RkKneePoint,
) -> RkStatus {
    guarded(|| {
        let Some(xs) = slice_arg(xs, len) else {
            return null_arg("xs");
        };
        let Some(ys) = slice_arg(ys, len) else {
            return null_arg("ys");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let points: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let shape = if convex != 0 {
            Shape::Convex
        } else {
            Shape::Concave
        };
        let direction = if decreasing != 0 {
            CurveDirection::Decreasing
        } else {
            CurveDirection::Increasing
        };
        match knee::find_knee(&points, shape, direction, sensitivity) {
            Ok(found) => {
                *out = knee_point_out(found);
                RkStatus::Ok
            }
            Err(err) => fail(knee_status(&err), err),
        }
    })
}

/// Maps a knee on a ROC curve to the chance diagonal: perpendicular foot,
/// distance, and the maximum threshold. Knees below the diagonal are
/// rejected as invalid input.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_knee_to_threshold(x: f64, y: f64, out: *mut RkThreshold) -> RkStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        match knee::knee_to_threshold((x, y)) {
            Ok(result) => {
                *out = RkThreshold {
                    foot_x: result.foot.0,
                    foot_y: result.foot.1,
                    distance: result.distance,
                    threshold: result.threshold,
                };
                RkStatus::Ok
            }
            Err(err) => fail(knee_status(&err), err),
        }
    })
}

/// Runs per-sample knee detection (method 3) on one probability vector:
/// the probabilities are sorted ascending and the knee is located on the
/// sorted sequence. `out->index` refers to positions in that sorted order.
///
/// # Safety
/// `probs` must point to `len` readable doubles and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rk_method3_knee(
    probs: *const f64,
    len: usize,
    out: *mut RkKneePoint,
) -> RkStatus {
    guarded(|| {
        let Some(probs) = slice_arg(probs, len) else {
            return null_arg("probs");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let sample = match SampleProbabilities::new(probs.to_vec()) {
            Ok(sample) => sample,
            Err(err) => return fail(knee_status(&err), err),
        };
        match knee::method3_knee(&sample) {
            Ok(found) => {
                *out = knee_point_out(found);
                RkStatus::Ok
            }
            Err(err) => fail(knee_status(&err), err),
        }
    })
}

/// Lists the class indices whose probability lies strictly above the knee
/// height. Requires a knee with `found != 0`. Writes the class count to
/// `out_len`; when it exceeds `capacity` the status is `BUFFER_TOO_SMALL`
/// and no indices are written (call with capacity 0 to query the size).
///
/// # Safety
/// `probs` must point to `len` readable doubles, `knee` and `out_len` must
/// be readable/writable, and `out_indices` must hold `capacity` writable
/// entries when `capacity > 0`.
#[no_mangle]
pub unsafe extern "C" fn rk_detected_classes(
    probs: *const f64,
    len: usize,
    knee: *const RkKneePoint,
    out_indices: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> RkStatus {
    guarded(|| {
        let Some(probs) = slice_arg(probs, len) else {
            return null_arg("probs");
        };
        let Some(knee) = knee.as_ref() else {
            return null_arg("knee");
        };
        if out_len.is_null() {
            return null_arg("out_len");
        }
        if out_indices.is_null() && capacity > 0 {
            return null_arg("out_indices");
        }
        if knee.found == 0 {
            return fail(RkStatus::InvalidInput, "no knee available");
        }
        let sample = match SampleProbabilities::new(probs.to_vec()) {
            Ok(sample) => sample,
            Err(err) => return fail(knee_status(&err), err),
        };
        let point = KneePoint {
            index: knee.index as usize,
            x: knee.x,
            y: knee.y,
        };
        let classes = knee::detected_classes(&sample, &point);
        *out_len = classes.len();
        if classes.len() > capacity {
            return fail(
                RkStatus::BufferTooSmall,
                format!("need capacity {}, got {capacity}", classes.len()),
            );
        }
        for (i, class) in classes.iter().enumerate() {
            *out_indices.add(i) = *class as u64;
        }
        RkStatus::Ok
    })
}

/// Parses a probability CSV document (`p0..p{k-1}` columns, optional
/// `labels` column) into a dataset.
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string and `out` must be
/// writable. The returned handle must be released with
/// [`rk_dataset_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_parse(
    text: *const c_char,
    out: *mut *mut RkDataset,
) -> RkStatus {
    guarded(|| {
        let text = match str_arg(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        if out.is_null() {
            return null_arg("out");
        }
        match ingest::parse_probabilities_str(text) {
            Ok(dataset) => {
                *out = Box::into_raw(Box::new(RkDataset { inner: dataset }));
                RkStatus::Ok
            }
            Err(err) => fail(ingest_status(&err), err),
        }
    })
}

/// Generates the deterministic synthetic dataset: `sample_count` rows over
/// `class_count` classes, a `high_prob_fraction` share of samples carrying
/// one dominant class among the first `active_classes`, identical output
/// for identical arguments.
///
/// # Safety
/// `out` must be writable. The returned handle must be released with
/// [`rk_dataset_free`].
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_generate(
    sample_count: usize,
    class_count: usize,
    active_classes: usize,
    high_prob_fraction: f64,
    noise_scale: f64,
    seed: u64,
    out: *mut *mut RkDataset,
) -> RkStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let config = GeneratorConfig {
            sample_count,
            class_count,
            active_classes,
            high_prob_fraction,
            noise_scale,
            seed,
        };
        match ingest::generate_dataset(&config) {
            Ok(dataset) => {
                *out = Box::into_raw(Box::new(RkDataset { inner: dataset }));
                RkStatus::Ok
            }
            Err(err) => fail(ingest_status(&err), err),
        }
    })
}

/// Number of samples in the dataset; 0 for a null handle.
///
/// # Safety
/// `dataset` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_sample_count(dataset: *const RkDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.samples.len())
}

/// Number of classes per sample; 0 for a null handle.
///
/// # Safety
/// `dataset` must be null or a live handle returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_class_count(dataset: *const RkDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.class_count)
}

/// Serializes the dataset to its canonical CSV form, NUL-terminated.
/// Writes the required buffer size (including the terminator) to
/// `out_len`; when it exceeds `capacity` the status is `BUFFER_TOO_SMALL`
/// and nothing is copied (call with capacity 0 to query the size).
///
/// # Safety
/// `dataset` must be a live handle, `out_len` writable, and `buf` must
/// hold `capacity` writable bytes when `capacity > 0`.
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_format(
    dataset: *const RkDataset,
    buf: *mut c_char,
    capacity: usize,
    out_len: *mut usize,
) -> RkStatus {
    guarded(|| {
        let Some(dataset) = dataset.as_ref() else {
            return null_arg("dataset");
        };
        if out_len.is_null() {
            return null_arg("out_len");
        }
        if buf.is_null() && capacity > 0 {
            return null_arg("buf");
        }
        let text = ingest::format_probabilities(&dataset.inner);
        let required = text.len() + 1;
        *out_len = required;
        if required > capacity {
            return fail(
                RkStatus::BufferTooSmall,
                format!("need capacity {required}, got {capacity}"),
            );
        }
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
        *buf.add(text.len()) = 0;
        RkStatus::Ok
    })
}

/// Computes aggregate knee statistics over every sample in the dataset:
/// how many reach `prob_cutoff`, and how many of those knee inside
/// `[knee_lo, knee_hi]` on the sorted probability axis.
///
/// # Safety
/// `dataset` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_knee_statistics(
    dataset: *const RkDataset,
    prob_cutoff: f64,
    knee_lo: u64,
    knee_hi: u64,
    out: *mut RkKneeStats,
) -> RkStatus {
    guarded(|| {
        let Some(dataset) = dataset.as_ref() else {
            return null_arg("dataset");
        };
        if out.is_null() {
            return null_arg("out");
        }
        match knee::knee_statistics(
            &dataset.inner.samples,
            prob_cutoff,
            knee_lo as usize,
            knee_hi as usize,
        ) {
            Ok(stats) => {
                *out = RkKneeStats {
                    total: stats.total as u64,
                    high_count: stats.high_count as u64,
                    high_fraction: stats.high_fraction,
                    in_range_count: stats.in_range_count as u64,
                    has_in_range_fraction: stats.in_range_fraction.is_some() as u8,
                    in_range_fraction: stats.in_range_fraction.unwrap_or(0.0),
                    no_knee_count: stats.no_knee_count as u64,
                };
                RkStatus::Ok
            }
            Err(err) => fail(knee_status(&err), err),
        }
    })
}

/// Releases a dataset. Null is ignored.
///
/// # Safety
/// `dataset` must be null or an owned handle returned by this interface
/// that has not already been freed; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn rk_dataset_free(dataset: *mut RkDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}
