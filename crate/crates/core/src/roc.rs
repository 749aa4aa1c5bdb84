//! ROC construction: the CDF-sweep curve, the iterative threshold-driven
//! score-redistribution family of curves, trapezoidal AUC, and best-curve
//! selection.
//!
//! All operations are pure and deterministic; curves are immutable after
//! construction.

use crate::gaussian::{fit_gaussian, tail_mass, GaussianError, ScoreSet};
use thiserror::Error;

/// Errors from ROC construction and sweeps.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RocError {
    /// A score list had fewer than the two elements ROC construction needs.
    #[error("insufficient scores: {side} list has {len}, need at least 2")]
    InsufficientScores { side: &'static str, len: usize },
    /// AUC was requested over fewer than two points.
    #[error("insufficient points: AUC needs at least 2, got {0}")]
    InsufficientPoints(usize),
    /// A sweep was configured with `step <= 0`.
    #[error("non-positive step: {0}")]
    NonPositiveStep(f64),
    /// A sweep configuration was unusable for another reason.
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    /// Best-curve selection over an empty list.
    #[error("no curves")]
    NoCurves,
    /// A curve was constructed from points violating its invariants.
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    /// Score validation failed below the ROC layer.
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

/// One ROC sample: the threshold it was evaluated at and the resulting
/// false/true positive rates, each within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub threshold: f64,
    pub fpr: f64,
    pub tpr: f64,
}

/// Which construction produced a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSource {
    /// The direct CDF sweep over the original score set.
    Method1,
    /// A redistribution iteration; carries the iteration threshold.
    Method2 { threshold: f64 },
}

/// An ROC curve: points ordered by strictly ascending threshold, the
/// trapezoidal AUC over them, and a tag naming the construction.
///
/// Along ascending threshold both rates are monotone nonincreasing, since
/// each is a Gaussian upper tail mass.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
    pub source: CurveSource,
}

impl RocCurve {
    /// Builds a curve from points, validating ordering and bounds and
    /// computing the AUC.
    pub fn new(points: Vec<RocPoint>, source: CurveSource) -> Result<Self, RocError> {
        if points.len() < 2 {
            return Err(RocError::InsufficientPoints(points.len()));
        }
        for pair in points.windows(2) {
            // A plain `<` comparison so NaN thresholds also fail validation.
            let ascending = pair[0].threshold < pair[1].threshold;
            if !ascending {
                return Err(RocError::InvalidCurve(
                    "thresholds must be strictly ascending".into(),
                ));
            }
        }
        for p in &points {
            if !(0.0..=1.0).contains(&p.fpr) || !(0.0..=1.0).contains(&p.tpr) {
                return Err(RocError::InvalidCurve(format!(
                    "rate outside [0,1] at threshold {}",
                    p.threshold
                )));
            }
        }
        let auc = auc(&points)?;
        Ok(Self {
            points,
            auc,
            source,
        })
    }
}

/// Default number of thresholds in a CDF sweep.
pub const DEFAULT_SWEEP_STEPS: usize = 200;

/// Threshold-sweep configuration for curve construction. `lo`/`hi` default to
/// the data-relative range `[min(scores) - 3*max(sigma), max(scores) +
/// 3*max(sigma)]`; `steps` thresholds are spaced uniformly across the range,
/// endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub steps: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            lo: None,
            hi: None,
            steps: DEFAULT_SWEEP_STEPS,
        }
    }
}

/// Builds the CDF-sweep ROC curve from a score set: one Gaussian model is
/// fitted per list, and each sweep threshold `t` contributes the point
/// `(tail_mass(t, negatives_model), tail_mass(t, positives_model))`.
///
/// Both lists must hold at least two scores.
pub fn method1_roc(scores: &ScoreSet, sweep: &SweepConfig) -> Result<RocCurve, RocError> {
    roc_with_source(scores, sweep, CurveSource::Method1)
}

fn roc_with_source(
    scores: &ScoreSet,
    sweep: &SweepConfig,
    source: CurveSource,
) -> Result<RocCurve, RocError> {
    if scores.positives().len() < 2 {
        return Err(RocError::InsufficientScores {
            side: "positive",
            len: scores.positives().len(),
        });
    }
    if scores.negatives().len() < 2 {
        return Err(RocError::InsufficientScores {
            side: "negative",
            len: scores.negatives().len(),
        });
    }
    if sweep.steps < 2 {
        return Err(RocError::InvalidSweep(format!(
            "sweep needs at least 2 steps, got {}",
            sweep.steps
        )));
    }

    let tpr_model = fit_gaussian(scores.positives())?;
    let fpr_model = fit_gaussian(scores.negatives())?;

    let (lo, hi) = match (sweep.lo, sweep.hi) {
        (Some(lo), Some(hi)) if lo < hi => (lo, hi),
        (Some(lo), Some(hi)) => {
            return Err(RocError::InvalidSweep(format!(
                "lower bound {lo} must be below upper bound {hi}"
            )));
        }
        _ => {
            let all = scores.positives().iter().chain(scores.negatives());
            let min = all.clone().cloned().fold(f64::INFINITY, f64::min);
            let max = all.cloned().fold(f64::NEG_INFINITY, f64::max);
            let sigma_max = tpr_model.sigma.max(fpr_model.sigma);
            (
                sweep.lo.unwrap_or(min - 3.0 * sigma_max),
                sweep.hi.unwrap_or(max + 3.0 * sigma_max),
            )
        }
    };
    // A plain `<` comparison so NaN bounds also fail validation.
    let ordered = lo < hi;
    if !ordered {
        return Err(RocError::InvalidSweep(format!(
            "lower bound {lo} must be below upper bound {hi}"
        )));
    }

    let spacing = (hi - lo) / (sweep.steps - 1) as f64;
    let points: Vec<RocPoint> = (0..sweep.steps)
        .map(|i| {
            let t = lo + i as f64 * spacing;
            RocPoint {
                threshold: t,
                fpr: tail_mass(t, &fpr_model),
                tpr: tail_mass(t, &tpr_model),
            }
        })
        .collect();

    RocCurve::new(points, source)
}

/// Trapezoidal area under the curve: points are sorted by ascending FPR
/// (ties broken by ascending TPR) and integrated; the result is clamped to
/// `[0, 1]`.
pub fn auc(points: &[RocPoint]) -> Result<f64, RocError> {
    if points.len() < 2 {
        return Err(RocError::InsufficientPoints(points.len()));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .fpr
            .total_cmp(&points[b].fpr)
            .then(points[a].tpr.total_cmp(&points[b].tpr))
    });
    let mut area = 0.0;
    for pair in order.windows(2) {
        let a = points[pair[0]];
        let b = points[pair[1]];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    Ok(area.clamp(0.0, 1.0))
}

/// How scores are assigned to the four confusion-matrix holders during
/// redistribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// The literal redistribution rules: positives at or above the threshold
    /// become true positives, negatives at or above it false negatives,
    /// positives below it false positives, negatives below it true negatives.
    AsWritten,
    /// Standard confusion-matrix semantics: positives split into true
    /// positives / false negatives, negatives into false positives / true
    /// negatives.
    Conventional,
}

/// The four holder arrays produced by one redistribution pass, plus the
/// threshold that produced them.
///
/// Under [`Semantics::AsWritten`], `true_positives`/`false_positives`
/// partition the positive scores and `false_negatives`/`true_negatives`
/// partition the negatives, with the at-or-above-threshold values in the
/// first holder of each pair. Under [`Semantics::Conventional`] the pairing
/// is `true_positives`/`false_negatives` over positives and
/// `false_positives`/`true_negatives` over negatives. Either way every input
/// score lands in exactly one holder.
#[derive(Debug, Clone, PartialEq)]
pub struct RedistributedArrays {
    pub true_positives: Vec<f64>,
    pub false_negatives: Vec<f64>,
    pub false_positives: Vec<f64>,
    pub true_negatives: Vec<f64>,
    pub threshold: f64,
}

/// Assigns every score to a confusion-matrix holder by comparing it with the
/// threshold `t` (`>= t` goes to the upper holder of its pair).
pub fn redistribute(scores: &ScoreSet, t: f64, semantics: Semantics) -> RedistributedArrays {
    debug_assert!(t.is_finite(), "redistribution threshold must be finite");
    let mut out = RedistributedArrays {
        true_positives: Vec::new(),
        false_negatives: Vec::new(),
        false_positives: Vec::new(),
        true_negatives: Vec::new(),
        threshold: t,
    };
    match semantics {
        Semantics::AsWritten => {
            for &p in scores.positives() {
                if p >= t {
                    out.true_positives.push(p);
                } else {
                    out.false_positives.push(p);
                }
            }
            for &n in scores.negatives() {
                if n >= t {
                    out.false_negatives.push(n);
                } else {
                    out.true_negatives.push(n);
                }
            }
        }
        Semantics::Conventional => {
            for &p in scores.positives() {
                if p >= t {
                    out.true_positives.push(p);
                } else {
                    out.false_negatives.push(p);
                }
            }
            for &n in scores.negatives() {
                if n >= t {
                    out.false_positives.push(n);
                } else {
                    out.true_negatives.push(n);
                }
            }
        }
    }
    out
}

/// Iteration order of a redistribution sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepDirection {
    /// Lowest iteration threshold first (the written procedure).
    Ascending,
    /// Highest iteration threshold first (the narrated variant). The
    /// threshold set is identical; only the iteration order differs.
    Descending,
}

/// Parameters of a redistribution sweep. Defaults follow the reference
/// procedure: thresholds 0.05, 0.06, ..., 0.95, ascending, literal
/// redistribution rules, and the default CDF sweep for each derived curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Method2Params {
    pub t_init: f64,
    pub step: f64,
    pub t_stop: f64,
    pub direction: SweepDirection,
    pub semantics: Semantics,
    pub curve_sweep: SweepConfig,
}

impl Default for Method2Params {
    fn default() -> Self {
        Self {
            t_init: 0.05,
            step: 0.01,
            t_stop: 0.95,
            direction: SweepDirection::Ascending,
            semantics: Semantics::AsWritten,
            curve_sweep: SweepConfig::default(),
        }
    }
}

/// What happened at one sweep iteration: the holder sizes after
/// redistribution, whether the iteration was skipped for lack of data, and
/// the index of the curve it contributed (when it did).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// Iteration threshold, snapped to 9 decimals.
    pub threshold: f64,
    pub skipped: bool,
    pub true_positive_count: usize,
    pub false_negative_count: usize,
    pub false_positive_count: usize,
    pub true_negative_count: usize,
    pub curve_index: Option<usize>,
}

/// Result of a redistribution sweep: the derived curves in iteration order
/// plus one record per iteration (including skipped ones).
#[derive(Debug, Clone, PartialEq)]
pub struct Method2Sweep {
    pub curves: Vec<RocCurve>,
    pub iterations: Vec<IterationRecord>,
}

/// Snap a sweep threshold to 9 decimals, the sweep's stated resolution.
/// Keeps accumulated float error from dropping the final threshold or
/// leaking digit noise into artifact names.
fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Runs the redistribution sweep: for each iteration threshold (ascending
/// from `t_init` by `step` while within `t_stop`), scores are redistributed,
/// the derived score set (positives := the true-positive holder, negatives
/// := the false-negative holder) is formed, and a CDF-sweep curve is built
/// when both derived lists hold at least two values. Iterations below that
/// minimum are recorded as skipped and contribute no curve.
pub fn method2_sweep(scores: &ScoreSet, params: &Method2Params) -> Result<Method2Sweep, RocError> {
    // A plain `>` comparison so a NaN step also fails validation.
    let positive_step = params.step > 0.0;
    if !positive_step {
        return Err(RocError::NonPositiveStep(params.step));
    }
    if params.step < 1e-9 {
        return Err(RocError::InvalidSweep(format!(
            "step {} is below the 1e-9 threshold resolution",
            params.step
        )));
    }
    for (name, v) in [("t_init", params.t_init), ("t_stop", params.t_stop)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(RocError::InvalidSweep(format!(
                "{name} {v} is outside [0, 1]"
            )));
        }
    }

    let mut thresholds = Vec::new();
    if params.t_init <= params.t_stop {
        let count = ((params.t_stop - params.t_init) / params.step + 1e-9).floor() as usize + 1;
        for i in 0..count {
            let t = round9(params.t_init + i as f64 * params.step);
            if t <= params.t_stop + 5e-10 {
                thresholds.push(t);
            }
        }
    }
    if params.direction == SweepDirection::Descending {
        thresholds.reverse();
    }

    let mut sweep = Method2Sweep {
        curves: Vec::new(),
        iterations: Vec::new(),
    };
    for t in thresholds {
        let holders = redistribute(scores, t, params.semantics);
        let tp = holders.true_positives.len();
        let fn_ = holders.false_negatives.len();
        let fp = holders.false_positives.len();
        let tn = holders.true_negatives.len();
        let curve_index = if tp >= 2 && fn_ >= 2 {
            let derived = ScoreSet::new(holders.true_positives, holders.false_negatives)?;
            let curve = roc_with_source(
                &derived,
                &params.curve_sweep,
                CurveSource::Method2 { threshold: t },
            )?;
            sweep.curves.push(curve);
            Some(sweep.curves.len() - 1)
        } else {
            None
        };
        sweep.iterations.push(IterationRecord {
            threshold: t,
            skipped: curve_index.is_none(),
            true_positive_count: tp,
            false_negative_count: fn_,
            false_positive_count: fp,
            true_negative_count: tn,
            curve_index,
        });
    }
    Ok(sweep)
}

/// Index of the curve maximizing `|auc - 0.5|`; ties go to the earliest
/// curve in list order.
pub fn select_best_index(curves: &[RocCurve]) -> Result<usize, RocError> {
    if curves.is_empty() {
        return Err(RocError::NoCurves);
    }
    let mut best = 0;
    for (i, c) in curves.iter().enumerate().skip(1) {
        if (c.auc - 0.5).abs() > (curves[best].auc - 0.5).abs() {
            best = i;
        }
    }
    Ok(best)
}

/// The curve maximizing `|auc - 0.5|`; ties go to the earliest in list order.
pub fn select_best(curves: &[RocCurve]) -> Result<&RocCurve, RocError> {
    select_best_index(curves).map(|i| &curves[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pt(fpr: f64, tpr: f64) -> RocPoint {
        RocPoint {
            threshold: 0.0,
            fpr,
            tpr,
        }
    }

    #[test]
    fn auc_perfect_classifier() {
        let points = [pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0)];
        assert_eq!(auc(&points).unwrap(), 1.0);
    }

    #[test]
    fn auc_chance_diagonal() {
        let points = [pt(0.0, 0.0), pt(1.0, 1.0)];
        assert_eq!(auc(&points).unwrap(), 0.5);
    }

    #[test]
    fn auc_hand_trapezoid() {
        let points = [pt(0.0, 0.0), pt(0.5, 0.75), pt(1.0, 1.0)];
        assert_abs_diff_eq!(auc(&points).unwrap(), 0.625, epsilon = 1e-15);
    }

    #[test]
    fn auc_sorts_before_integrating() {
        let shuffled = [pt(1.0, 1.0), pt(0.0, 0.0), pt(0.5, 0.75)];
        assert_abs_diff_eq!(auc(&shuffled).unwrap(), 0.625, epsilon = 1e-15);
    }

    #[test]
    fn auc_rejects_single_point() {
        assert_eq!(auc(&[pt(0.5, 0.5)]), Err(RocError::InsufficientPoints(1)));
    }

    fn well_separated() -> ScoreSet {
        ScoreSet::new(vec![0.7, 0.8, 0.9], vec![0.1, 0.2, 0.3]).unwrap()
    }

    #[test]
    fn method1_separated_curve_is_near_perfect() {
        let curve = method1_roc(&well_separated(), &SweepConfig::default()).unwrap();
        assert!(curve.auc > 0.99);
        assert_eq!(curve.points.len(), DEFAULT_SWEEP_STEPS);
        assert_eq!(curve.source, CurveSource::Method1);
    }

    #[test]
    fn method1_identical_lists_give_chance_auc() {
        let same = vec![0.2, 0.4, 0.6, 0.8];
        let scores = ScoreSet::new(same.clone(), same).unwrap();
        let curve = method1_roc(&scores, &SweepConfig::default()).unwrap();
        assert!((curve.auc - 0.5).abs() <= 0.01);
    }

    #[test]
    fn method1_sweep_endpoints_cover_the_square() {
        let curve = method1_roc(&well_separated(), &SweepConfig::default()).unwrap();
        let first = curve.points.first().unwrap();
        let last = curve.points.last().unwrap();
        assert!(first.fpr > 0.99 && first.tpr > 0.99);
        assert!(last.fpr < 0.01 && last.tpr < 0.01);
    }

    #[test]
    fn method1_rates_are_monotone_nonincreasing() {
        let curve = method1_roc(&well_separated(), &SweepConfig::default()).unwrap();
        for pair in curve.points.windows(2) {
            assert!(pair[1].threshold > pair[0].threshold);
            assert!(pair[1].fpr <= pair[0].fpr);
            assert!(pair[1].tpr <= pair[0].tpr);
        }
    }

    #[test]
    fn method1_rejects_sub_minimum_lists() {
        let scores = ScoreSet::new(vec![0.9], vec![0.1, 0.2]).unwrap();
        let err = method1_roc(&scores, &SweepConfig::default()).unwrap_err();
        assert!(err.to_string().contains("insufficient scores"));
    }

    #[test]
    fn method1_shift_invariance() {
        let base = ScoreSet::new(vec![0.30, 0.42, 0.55], vec![0.20, 0.28, 0.33]).unwrap();
        let shifted = ScoreSet::new(
            base.positives().iter().map(|s| s + 0.13).collect(),
            base.negatives().iter().map(|s| s + 0.13).collect(),
        )
        .unwrap();
        let a = method1_roc(&base, &SweepConfig::default()).unwrap();
        let b = method1_roc(&shifted, &SweepConfig::default()).unwrap();
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert_abs_diff_eq!(pa.fpr, pb.fpr, epsilon = 1e-9);
            assert_abs_diff_eq!(pa.tpr, pb.tpr, epsilon = 1e-9);
        }
    }

    #[test]
    fn redistribute_below_all_scores() {
        let scores = well_separated();
        let r = redistribute(&scores, 0.0, Semantics::AsWritten);
        assert_eq!(r.true_positives, scores.positives());
        assert_eq!(r.false_negatives, scores.negatives());
        assert!(r.false_positives.is_empty());
        assert!(r.true_negatives.is_empty());
    }

    #[test]
    fn redistribute_above_all_scores() {
        let scores = well_separated();
        let r = redistribute(&scores, 0.95, Semantics::AsWritten);
        assert_eq!(r.false_positives, scores.positives());
        assert_eq!(r.true_negatives, scores.negatives());
        assert!(r.true_positives.is_empty());
        assert!(r.false_negatives.is_empty());
    }

    #[test]
    fn redistribute_literal_rules_example() {
        let scores = ScoreSet::new(vec![0.3, 0.7], vec![0.4, 0.1]).unwrap();
        let r = redistribute(&scores, 0.35, Semantics::AsWritten);
        assert_eq!(r.true_positives, vec![0.7]);
        assert_eq!(r.false_positives, vec![0.3]);
        assert_eq!(r.false_negatives, vec![0.4]);
        assert_eq!(r.true_negatives, vec![0.1]);
    }

    #[test]
    fn redistribute_conventional_example() {
        let scores = ScoreSet::new(vec![0.3, 0.7], vec![0.4, 0.1]).unwrap();
        let r = redistribute(&scores, 0.35, Semantics::Conventional);
        assert_eq!(r.true_positives, vec![0.7]);
        assert_eq!(r.false_negatives, vec![0.3]);
        assert_eq!(r.false_positives, vec![0.4]);
        assert_eq!(r.true_negatives, vec![0.1]);
    }

    #[test]
    fn method2_all_above_t_init_skips_everything() {
        // Every score sits below every iteration threshold, so nothing
        // transfers into the upper holders and no curve can be built.
        let scores = ScoreSet::new(vec![0.01, 0.02], vec![0.03, 0.04]).unwrap();
        let params = Method2Params {
            t_init: 0.5,
            t_stop: 0.6,
            ..Method2Params::default()
        };
        let sweep = method2_sweep(&scores, &params).unwrap();
        assert!(sweep.curves.is_empty());
        assert!(!sweep.iterations.is_empty());
        assert!(sweep.iterations.iter().all(|it| it.skipped));
    }

    #[test]
    fn method2_identity_iteration_reproduces_method1() {
        let scores = well_separated();
        let params = Method2Params {
            t_init: 0.0,
            t_stop: 0.0,
            ..Method2Params::default()
        };
        let sweep = method2_sweep(&scores, &params).unwrap();
        assert_eq!(sweep.curves.len(), 1);
        let m1 = method1_roc(&scores, &SweepConfig::default()).unwrap();
        assert_eq!(sweep.curves[0].points, m1.points);
        assert_eq!(sweep.curves[0].auc, m1.auc);
        assert_eq!(
            sweep.curves[0].source,
            CurveSource::Method2 { threshold: 0.0 }
        );
    }

    #[test]
    fn method2_default_sweep_covers_the_endpoints() {
        let scores = well_separated();
        let sweep = method2_sweep(&scores, &Method2Params::default()).unwrap();
        assert_eq!(sweep.iterations.len(), 91);
        assert_eq!(sweep.iterations.first().unwrap().threshold, 0.05);
        assert_eq!(sweep.iterations.last().unwrap().threshold, 0.95);
    }

    #[test]
    fn method2_descending_reverses_iteration_order() {
        let scores = well_separated();
        let params = Method2Params {
            direction: SweepDirection::Descending,
            ..Method2Params::default()
        };
        let sweep = method2_sweep(&scores, &params).unwrap();
        assert_eq!(sweep.iterations.first().unwrap().threshold, 0.95);
        assert_eq!(sweep.iterations.last().unwrap().threshold, 0.05);
    }

    #[test]
    fn method2_rejects_bad_steps() {
        let scores = well_separated();
        let nonpositive = Method2Params {
            step: 0.0,
            ..Method2Params::default()
        };
        assert!(matches!(
            method2_sweep(&scores, &nonpositive),
            Err(RocError::NonPositiveStep(_))
        ));
        let below_resolution = Method2Params {
            step: 1e-12,
            ..Method2Params::default()
        };
        assert!(matches!(
            method2_sweep(&scores, &below_resolution),
            Err(RocError::InvalidSweep(_))
        ));
        let out_of_range = Method2Params {
            t_init: -0.2,
            ..Method2Params::default()
        };
        assert!(matches!(
            method2_sweep(&scores, &out_of_range),
            Err(RocError::InvalidSweep(_))
        ));
    }

    #[test]
    fn select_best_prefers_distance_from_chance() {
        let mk = |auc| RocCurve {
            points: vec![pt(0.0, 0.0), pt(1.0, 1.0)],
            auc,
            source: CurveSource::Method1,
        };
        let curves = vec![mk(0.5), mk(0.8)];
        assert_eq!(select_best_index(&curves).unwrap(), 1);
        let curves = vec![mk(0.2), mk(0.7)];
        assert_eq!(select_best_index(&curves).unwrap(), 0);
        let curves = vec![mk(0.6)];
        assert_eq!(select_best_index(&curves).unwrap(), 0);
        // 0.75 and 0.25 are exactly representable, so the criterion ties
        // exactly; decimal pairs like 0.7/0.3 do not tie in binary.
        let curves = vec![mk(0.75), mk(0.3), mk(0.25)];
        assert_eq!(
            select_best_index(&curves).unwrap(),
            0,
            "ties keep the earliest"
        );
        assert!(select_best(&[]).is_err());
    }
}
