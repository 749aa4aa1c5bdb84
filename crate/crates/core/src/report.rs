//! End-to-end analysis runs: orchestrates the three methods over input
//! files, stages every artifact in memory, and only then writes the output
//! directory, so a failed run never leaves partial artifacts behind.
//!
//! Artifacts per run (all deterministic byte-for-byte):
//! - `report.json` — the machine-readable [`AnalysisReport`].
//! - `roc_method1.{svg,csv}` — the direct CDF-sweep curve.
//! - `roc_method2_t{T}.{svg,csv}` — one pair per redistribution iteration
//!   that generated a curve; `T` is the iteration threshold.
//! - `method2_summary.csv` — one row per iteration, skipped or not.
//! - `method3_knees.csv` and `method3_sample{N}.svg` — per-sample knees.

use crate::gaussian::ScoreSet;
use crate::ingest::{self, DatasetFile, IngestError};
use crate::knee::find_knee;
use crate::knee::{
    detected_classes, knee_statistics, knee_to_threshold, method3_knee, KneeError, KneePoint,
    KneeThresholdResult,
};
use crate::roc::{
    method1_roc, method2_sweep, select_best_index, CurveSource, Method2Params, Method2Sweep,
    RocCurve, RocError, Semantics, SweepConfig, SweepDirection,
};
use crate::svg;
use crate::util::write_atomic;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Report schema version, bumped on any breaking field change.
pub const SCHEMA_VERSION: &str = "1";

/// A failed run, classified by exit code.
#[derive(Debug, Error)]
pub enum RunError {
    /// Unreadable, unparseable, or out-of-contract input (exit 2). An
    /// unwritable output directory lands here too: the path is an input.
    #[error("{0}")]
    Input(String),
    /// Input was valid but too small for the requested analysis (exit 3).
    #[error("{0}")]
    Insufficient(String),
    /// An internal invariant failed to hold (exit 4).
    #[error("internal error: {0}")]
    Internal(String),
}

impl RunError {
    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 2,
            RunError::Insufficient(_) => 3,
            RunError::Internal(_) => 4,
        }
    }
}

impl From<IngestError> for RunError {
    fn from(err: IngestError) -> Self {
        RunError::Input(err.to_string())
    }
}

impl From<RocError> for RunError {
    fn from(err: RocError) -> Self {
        match err {
            RocError::InsufficientScores { .. }
            | RocError::InsufficientPoints(_)
            | RocError::NoCurves => RunError::Insufficient(err.to_string()),
            RocError::NonPositiveStep(_) | RocError::InvalidSweep(_) => {
                RunError::Input(err.to_string())
            }
            RocError::InvalidCurve(_) | RocError::Gaussian(_) => {
                RunError::Internal(err.to_string())
            }
        }
    }
}

impl From<KneeError> for RunError {
    fn from(err: KneeError) -> Self {
        match err {
            KneeError::InsufficientPoints(_)
            | KneeError::InsufficientClasses(_)
            | KneeError::NoSamples => RunError::Insufficient(err.to_string()),
            KneeError::InvalidProbability { .. } | KneeError::LabelOutOfRange(_) => {
                RunError::Input(err.to_string())
            }
            KneeError::NonMonotoneX
            | KneeError::BelowDiagonal { .. }
            | KneeError::NonFiniteCoordinate => RunError::Internal(err.to_string()),
        }
    }
}

/// Tunable analysis parameters shared by all runs; every field has a CLI
/// flag. Defaults match the documented per-method defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// Thresholds per CDF sweep (Method 1 and per-iteration curves).
    pub sweep_steps: usize,
    /// Knee-detector sensitivity for the best ROC curve's knee.
    pub sensitivity: f64,
    /// Redistribution sweep start threshold.
    pub t_init: f64,
    /// Redistribution sweep increment.
    pub step: f64,
    /// Redistribution sweep stop threshold (inclusive).
    pub t_stop: f64,
    /// Order the redistribution thresholds are visited in.
    pub direction: SweepDirection,
    /// Which confusion-quadrant bookkeeping redistribution uses.
    pub semantics: Semantics,
    /// Minimum max-probability for a sample to count as "high".
    pub prob_cutoff: f64,
    /// Inclusive knee-index range used by the aggregate statistics.
    pub knee_lo: usize,
    /// Inclusive upper end of the knee-index range.
    pub knee_hi: usize,
    /// Cap on emitted per-sample probability plots.
    pub max_plots: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            sweep_steps: crate::roc::DEFAULT_SWEEP_STEPS,
            sensitivity: 1.0,
            t_init: 0.05,
            step: 0.01,
            t_stop: 0.95,
            direction: SweepDirection::Ascending,
            semantics: Semantics::AsWritten,
            prob_cutoff: 0.35,
            knee_lo: 6,
            knee_hi: 8,
            max_plots: 20,
        }
    }
}

/// The machine-readable analysis report. Field order is serialization
/// order; identical inputs and options serialize byte-identically. Sections
/// for methods a run did not execute are omitted entirely.
#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub toolkit_version: &'static str,
    /// `sha256:` digest over the raw input file contents (tagged per file).
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method1: Option<Method1Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method2: Option<Method2Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_curve: Option<BestCurveSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knee: Option<KneeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_result: Option<ThresholdSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method3: Option<Method3Section>,
    pub warnings: Vec<String>,
}

/// Summary of the direct CDF-sweep curve.
#[derive(Debug, Serialize)]
pub struct Method1Section {
    pub auc: f64,
    pub point_count: usize,
    pub sweep_lo: f64,
    pub sweep_hi: f64,
}

/// Summary of the redistribution sweep.
#[derive(Debug, Serialize)]
pub struct Method2Section {
    pub semantics: &'static str,
    pub direction: &'static str,
    pub t_init: f64,
    pub step: f64,
    pub t_stop: f64,
    /// Iterations that produced a curve.
    pub curve_count: usize,
    /// Iterations skipped by the both-lists-need-two-elements gate.
    pub skipped_count: usize,
    pub iterations: Vec<IterationSection>,
}

/// One redistribution iteration, mirroring a `method2_summary.csv` row.
#[derive(Debug, Serialize)]
pub struct IterationSection {
    pub threshold: f64,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub auc: Option<f64>,
    pub true_positive_count: usize,
    pub false_negative_count: usize,
    pub false_positive_count: usize,
    pub true_negative_count: usize,
}

/// The curve that maximizes `|auc - 0.5|` across everything generated.
#[derive(Debug, Serialize)]
pub struct BestCurveSection {
    /// `"method1"` or `"method2"`.
    pub source: &'static str,
    /// The iteration threshold, when the winner is a Method 2 curve.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iteration_threshold: Option<f64>,
    pub auc: f64,
}

/// Knee of the best curve in (fpr, tpr) space. `index` refers to the
/// zero-based data row of that curve's CSV (the highest-threshold point of
/// an equal-fpr run is collapsed away before detection).
#[derive(Debug, Serialize)]
pub struct KneeSection {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

/// Knee-to-diagonal geometry and the resulting maximum threshold.
#[derive(Debug, Serialize)]
pub struct ThresholdSection {
    pub foot: [f64; 2],
    pub distance: f64,
    pub threshold: f64,
}

/// Per-sample knee analysis plus aggregate statistics.
#[derive(Debug, Serialize)]
pub struct Method3Section {
    pub sample_count: usize,
    pub statistics: StatisticsSection,
    pub samples: Vec<SampleKneeSection>,
}

/// Aggregate knee statistics with the parameters they were computed under.
#[derive(Debug, Serialize)]
pub struct StatisticsSection {
    pub prob_cutoff: f64,
    pub knee_lo: usize,
    pub knee_hi: usize,
    pub high_count: usize,
    pub high_fraction: f64,
    pub in_range_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_range_fraction: Option<f64>,
    pub no_knee_count: usize,
}

/// One sample's knee, mirroring a `method3_knees.csv` row. `knee_index`
/// refers to the ascending-sorted probability vector; `detected_classes`
/// are original class indices.
#[derive(Debug, Serialize)]
pub struct SampleKneeSection {
    pub sample: usize,
    pub max_prob: f64,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knee_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knee_y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detected_classes: Option<Vec<usize>>,
}

/// In-memory artifact staging: nothing touches the output directory until
/// every artifact is built, and each file is written whole then renamed.
struct Artifacts {
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    fn new() -> Self {
        Self { files: Vec::new() }
    }

    fn stage(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    /// Writes every staged artifact into `out_dir`, removing anything it
    /// already wrote if a later write fails.
    fn write_all(self, out_dir: &Path) -> Result<(), RunError> {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| RunError::Input(format!("{}: {e}", out_dir.display())))?;
        let mut written: Vec<PathBuf> = Vec::new();
        for (name, bytes) in &self.files {
            let path = out_dir.join(name);
            if let Err(e) = write_atomic(&path, bytes) {
                for done in &written {
                    let _ = std::fs::remove_file(done);
                }
                return Err(RunError::Input(format!("{}: {e}", path.display())));
            }
            written.push(path);
        }
        Ok(())
    }
}

fn read_input(path: &Path) -> Result<String, RunError> {
    std::fs::read_to_string(path).map_err(|e| RunError::Input(format!("{}: {e}", path.display())))
}

fn parse_scores_input(path: &Path, content: &str) -> Result<ScoreSet, RunError> {
    ingest::parse_scores_str(content)
        .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))
}

fn parse_probabilities_input(path: &Path, content: &str) -> Result<DatasetFile, RunError> {
    ingest::parse_probabilities_str(content)
        .map_err(|e| RunError::Input(format!("{}: {e}", path.display())))
}

/// `sha256:` hex digest over tagged input contents: each part contributes
/// its tag, a NUL separator, then its bytes.
fn input_digest(parts: &[(&str, &[u8])]) -> String {
    let mut hasher = Sha256::new();
    for (tag, bytes) in parts {
        hasher.update(tag.as_bytes());
        hasher.update([0u8]);
        hasher.update(bytes);
    }
    format!("sha256:{:x}", hasher.finalize())
}

/// Iteration threshold as it appears in artifact names: 9 decimals with
/// trailing zeros (and a bare trailing dot) trimmed.
fn threshold_tag(t: f64) -> String {
    let s = format!("{t:.9}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn roc_csv(curve: &RocCurve) -> Vec<u8> {
    let mut out = String::from("threshold,fpr,tpr\n");
    for p in &curve.points {
        let _ = writeln!(out, "{:.12},{:.12},{:.12}", p.threshold, p.fpr, p.tpr);
    }
    out.into_bytes()
}

fn method2_summary_csv(sweep: &Method2Sweep) -> Vec<u8> {
    let mut out = String::from(
        "threshold,skipped,auc,true_positive_count,false_negative_count,\
         false_positive_count,true_negative_count\n",
    );
    for it in &sweep.iterations {
        let auc = it
            .curve_index
            .map(|ci| format!("{:.12}", sweep.curves[ci].auc))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{:.9},{},{},{},{},{},{}",
            it.threshold,
            it.skipped,
            auc,
            it.true_positive_count,
            it.false_negative_count,
            it.false_positive_count,
            it.true_negative_count
        );
    }
    out.into_bytes()
}

/// Knee analysis of an ROC curve: the curve's points are reduced to their
/// upper envelope over distinct fpr values (saturated sweep tails repeat
/// endpoints), then scanned as a concave curve. Detection problems degrade
/// to warnings, never failures; `knee.index` refers to the original curve.
pub struct CurveKnee {
    pub knee: Option<KneePoint>,
    pub threshold: Option<KneeThresholdResult>,
    pub warnings: Vec<String>,
}

/// Locates the knee of `curve` and derives the maximum threshold from it.
pub fn curve_knee(curve: &RocCurve, sensitivity: f64) -> CurveKnee {
    let mut warnings = Vec::new();

    // Ascending-threshold points have nonincreasing fpr; scan reversed so
    // fpr ascends, collapsing equal-fpr runs to their maximum tpr. `origin`
    // remembers each survivor's index in `curve.points`.
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    for (i, p) in curve.points.iter().enumerate().rev() {
        match pts.last_mut() {
            Some(last) if last.0 == p.fpr => {
                if p.tpr > last.1 {
                    last.1 = p.tpr;
                    *origin.last_mut().expect("pts and origin move together") = i;
                }
            }
            _ => {
                pts.push((p.fpr, p.tpr));
                origin.push(i);
            }
        }
    }

    if pts.len() < 3 {
        warnings.push(format!(
            "curve has only {} distinct fpr values; knee detection needs 3",
            pts.len()
        ));
        return CurveKnee {
            knee: None,
            threshold: None,
            warnings,
        };
    }

    let knee = match find_knee(
        &pts,
        crate::knee::Shape::Concave,
        crate::knee::CurveDirection::Increasing,
        sensitivity,
    ) {
        Ok(Some(k)) => Some(KneePoint {
            index: origin[k.index],
            x: k.x,
            y: k.y,
        }),
        Ok(None) => {
            warnings.push("no qualifying knee on the selected curve".into());
            None
        }
        Err(e) => {
            warnings.push(format!("curve knee detection failed: {e}"));
            None
        }
    };

    let threshold = knee
        .as_ref()
        .and_then(|k| match knee_to_threshold((k.x, k.y)) {
            Ok(t) => Some(t),
            Err(e) => {
                warnings.push(format!("no threshold from curve knee: {e}"));
                None
            }
        });

    CurveKnee {
        knee,
        threshold,
        warnings,
    }
}

fn direction_tag(direction: SweepDirection) -> &'static str {
    match direction {
        SweepDirection::Ascending => "asc",
        SweepDirection::Descending => "desc",
    }
}

fn semantics_tag(semantics: Semantics) -> &'static str {
    match semantics {
        Semantics::AsWritten => "as-written",
        Semantics::Conventional => "conventional",
    }
}

fn method1_section(curve: &RocCurve) -> Method1Section {
    Method1Section {
        auc: curve.auc,
        point_count: curve.points.len(),
        sweep_lo: curve
            .points
            .first()
            .map(|p| p.threshold)
            .unwrap_or(f64::NAN),
        sweep_hi: curve.points.last().map(|p| p.threshold).unwrap_or(f64::NAN),
    }
}

/// Everything score-driven: both curve families, their artifacts, the
/// best-curve selection, and the winner's knee geometry.
struct ScoreAnalysis {
    method1: Method1Section,
    method2: Method2Section,
    best_curve: BestCurveSection,
    knee: KneeSection,
    threshold_result: Option<ThresholdSection>,
    warnings: Vec<String>,
}

fn analyze_scores(
    scores: &ScoreSet,
    options: &AnalysisOptions,
    artifacts: &mut Artifacts,
) -> Result<ScoreAnalysis, RunError> {
    let curve_sweep = SweepConfig {
        lo: None,
        hi: None,
        steps: options.sweep_steps,
    };
    let m1 = method1_roc(scores, &curve_sweep)?;
    let sweep = method2_sweep(
        scores,
        &Method2Params {
            t_init: options.t_init,
            step: options.step,
            t_stop: options.t_stop,
            direction: options.direction,
            semantics: options.semantics,
            curve_sweep,
        },
    )?;

    let mut warnings = Vec::new();
    if sweep.curves.is_empty() {
        warnings.push(
            "every redistribution iteration was skipped; no iteration curves generated".into(),
        );
    }

    // The selection pool lists the direct curve first, then the iteration
    // curves in sweep order; ties go to the earliest entry.
    let mut pool: Vec<RocCurve> = Vec::with_capacity(1 + sweep.curves.len());
    pool.push(m1.clone());
    pool.extend(sweep.curves.iter().cloned());
    let best_idx = select_best_index(&pool)?;
    let winner = &pool[best_idx];

    let ck = curve_knee(winner, options.sensitivity);
    warnings.extend(ck.warnings);

    artifacts.stage("roc_method1.csv", roc_csv(&m1));
    let m1_marker = (best_idx == 0)
        .then(|| ck.knee.as_ref().map(|k| (k.x, k.y)))
        .flatten();
    artifacts.stage(
        "roc_method1.svg",
        svg::roc_chart("ROC - method 1 (direct CDF sweep)", &m1, m1_marker).into_bytes(),
    );

    for (ci, curve) in sweep.curves.iter().enumerate() {
        let t = match curve.source {
            CurveSource::Method2 { threshold } => threshold,
            CurveSource::Method1 => {
                return Err(RunError::Internal(
                    "iteration curve tagged as the direct sweep".into(),
                ))
            }
        };
        let tag = threshold_tag(t);
        let marker = (best_idx == 1 + ci)
            .then(|| ck.knee.as_ref().map(|k| (k.x, k.y)))
            .flatten();
        artifacts.stage(format!("roc_method2_t{tag}.csv"), roc_csv(curve));
        artifacts.stage(
            format!("roc_method2_t{tag}.svg"),
            svg::roc_chart(
                &format!("ROC - method 2, iteration t = {tag}"),
                curve,
                marker,
            )
            .into_bytes(),
        );
    }
    artifacts.stage("method2_summary.csv", method2_summary_csv(&sweep));

    let iterations: Vec<IterationSection> = sweep
        .iterations
        .iter()
        .map(|it| IterationSection {
            threshold: it.threshold,
            skipped: it.skipped,
            auc: it.curve_index.map(|ci| sweep.curves[ci].auc),
            true_positive_count: it.true_positive_count,
            false_negative_count: it.false_negative_count,
            false_positive_count: it.false_positive_count,
            true_negative_count: it.true_negative_count,
        })
        .collect();

    let best_curve = BestCurveSection {
        source: match winner.source {
            CurveSource::Method1 => "method1",
            CurveSource::Method2 { .. } => "method2",
        },
        iteration_threshold: match winner.source {
            CurveSource::Method1 => None,
            CurveSource::Method2 { threshold } => Some(threshold),
        },
        auc: winner.auc,
    };

    let method2 = Method2Section {
        semantics: semantics_tag(options.semantics),
        direction: direction_tag(options.direction),
        t_init: options.t_init,
        step: options.step,
        t_stop: options.t_stop,
        curve_count: sweep.curves.len(),
        skipped_count: sweep.iterations.iter().filter(|it| it.skipped).count(),
        iterations,
    };

    let analysis = ScoreAnalysis {
        method1: method1_section(&m1),
        knee: KneeSection {
            found: ck.knee.is_some(),
            index: ck.knee.as_ref().map(|k| k.index),
            x: ck.knee.as_ref().map(|k| k.x),
            y: ck.knee.as_ref().map(|k| k.y),
        },
        threshold_result: ck.threshold.map(|t| ThresholdSection {
            foot: [t.foot.0, t.foot.1],
            distance: t.distance,
            threshold: t.threshold,
        }),
        method2,
        best_curve,
        warnings,
    };
    best_curve_self_check(&analysis)?;
    Ok(analysis)
}

/// Re-derives the best-curve choice from the serialized sections and
/// rejects the report if it disagrees with the recorded winner.
fn best_curve_self_check(analysis: &ScoreAnalysis) -> Result<(), RunError> {
    let mut best_auc = analysis.method1.auc;
    let mut criterion = (best_auc - 0.5).abs();
    for it in &analysis.method2.iterations {
        if let Some(a) = it.auc {
            if (a - 0.5).abs() > criterion {
                criterion = (a - 0.5).abs();
                best_auc = a;
            }
        }
    }
    if analysis.best_curve.auc.to_bits() != best_auc.to_bits() {
        return Err(RunError::Internal(format!(
            "best-curve invariant violated: recorded auc {} but sections yield {}",
            analysis.best_curve.auc, best_auc
        )));
    }
    Ok(())
}

fn method3_knees_csv(rows: &[SampleKneeSection]) -> Vec<u8> {
    let mut out = String::from("sample,max_prob,found,knee_index,knee_y,detected_classes\n");
    for row in rows {
        let idx = row.knee_index.map(|i| i.to_string()).unwrap_or_default();
        let y = row.knee_y.map(|y| format!("{y:.12}")).unwrap_or_default();
        let detected = row
            .detected_classes
            .as_ref()
            .map(|d| d.iter().map(usize::to_string).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{:.12},{},{idx},{y},{detected}",
            row.sample, row.max_prob, row.found
        );
    }
    out.into_bytes()
}

fn analyze_probabilities(
    dataset: &DatasetFile,
    options: &AnalysisOptions,
    artifacts: &mut Artifacts,
) -> Result<Method3Section, RunError> {
    let stats = knee_statistics(
        &dataset.samples,
        options.prob_cutoff,
        options.knee_lo,
        options.knee_hi,
    )?;

    let mut rows = Vec::with_capacity(dataset.samples.len());
    for (i, sample) in dataset.samples.iter().enumerate() {
        let knee = method3_knee(sample)?;
        let max_prob = sample
            .probs
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        rows.push(SampleKneeSection {
            sample: i,
            max_prob,
            found: knee.is_some(),
            knee_index: knee.as_ref().map(|k| k.index),
            knee_y: knee.as_ref().map(|k| k.y),
            detected_classes: knee.as_ref().map(|k| detected_classes(sample, k)),
        });

        if i < options.max_plots {
            let mut sorted = sample.probs.clone();
            sorted.sort_by(f64::total_cmp);
            artifacts.stage(
                format!("method3_sample{i}.svg"),
                svg::probability_chart(
                    &format!("sample {i} sorted probabilities"),
                    &sorted,
                    knee.as_ref(),
                )
                .into_bytes(),
            );
        }
    }
    artifacts.stage("method3_knees.csv", method3_knees_csv(&rows));

    Ok(Method3Section {
        sample_count: dataset.samples.len(),
        statistics: StatisticsSection {
            prob_cutoff: options.prob_cutoff,
            knee_lo: options.knee_lo,
            knee_hi: options.knee_hi,
            high_count: stats.high_count,
            high_fraction: stats.high_fraction,
            in_range_count: stats.in_range_count,
            in_range_fraction: stats.in_range_fraction,
            no_knee_count: stats.no_knee_count,
        },
        samples: rows,
    })
}

fn stage_report(artifacts: &mut Artifacts, report: &AnalysisReport) -> Result<(), RunError> {
    let mut bytes = serde_json::to_vec_pretty(report)
        .map_err(|e| RunError::Internal(format!("report serialization failed: {e}")))?;
    bytes.push(b'\n');
    artifacts.stage("report.json", bytes);
    Ok(())
}

fn empty_report(input_digest: String) -> AnalysisReport {
    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        toolkit_version: env!("CARGO_PKG_VERSION"),
        input_digest,
        method1: None,
        method2: None,
        best_curve: None,
        knee: None,
        threshold_result: None,
        method3: None,
        warnings: Vec::new(),
    }
}

/// Runs the direct CDF sweep over a score file and writes its curve
/// artifacts plus the report.
pub fn run_method1(
    score_path: &Path,
    options: &AnalysisOptions,
    out_dir: &Path,
) -> Result<AnalysisReport, RunError> {
    let content = read_input(score_path)?;
    let scores = parse_scores_input(score_path, &content)?;
    let curve = method1_roc(
        &scores,
        &SweepConfig {
            lo: None,
            hi: None,
            steps: options.sweep_steps,
        },
    )?;

    let mut artifacts = Artifacts::new();
    artifacts.stage("roc_method1.csv", roc_csv(&curve));
    artifacts.stage(
        "roc_method1.svg",
        svg::roc_chart("ROC - method 1 (direct CDF sweep)", &curve, None).into_bytes(),
    );

    let mut report = empty_report(input_digest(&[("scores", content.as_bytes())]));
    report.method1 = Some(method1_section(&curve));
    stage_report(&mut artifacts, &report)?;
    artifacts.write_all(out_dir)?;
    Ok(report)
}

/// Runs the redistribution sweep (plus the direct curve it is compared
/// against), selects the best curve, derives the knee threshold, and writes
/// all curve artifacts plus the report.
pub fn run_method2(
    score_path: &Path,
    options: &AnalysisOptions,
    out_dir: &Path,
) -> Result<AnalysisReport, RunError> {
    let content = read_input(score_path)?;
    let scores = parse_scores_input(score_path, &content)?;

    let mut artifacts = Artifacts::new();
    let analysis = analyze_scores(&scores, options, &mut artifacts)?;

    let mut report = empty_report(input_digest(&[("scores", content.as_bytes())]));
    report.method1 = Some(analysis.method1);
    report.method2 = Some(analysis.method2);
    report.best_curve = Some(analysis.best_curve);
    report.knee = Some(analysis.knee);
    report.threshold_result = analysis.threshold_result;
    report.warnings = analysis.warnings;
    stage_report(&mut artifacts, &report)?;
    artifacts.write_all(out_dir)?;
    Ok(report)
}

/// Runs per-sample knee analysis over a probability file and writes the
/// knee table, capped per-sample plots, and the report.
pub fn run_method3(
    probs_path: &Path,
    options: &AnalysisOptions,
    out_dir: &Path,
) -> Result<AnalysisReport, RunError> {
    let content = read_input(probs_path)?;
    let dataset = parse_probabilities_input(probs_path, &content)?;

    let mut artifacts = Artifacts::new();
    let method3 = analyze_probabilities(&dataset, options, &mut artifacts)?;

    let mut report = empty_report(input_digest(&[("probs", content.as_bytes())]));
    report.method3 = Some(method3);
    stage_report(&mut artifacts, &report)?;
    artifacts.write_all(out_dir)?;
    Ok(report)
}

/// Runs all three methods and writes one merged report with every artifact.
pub fn run_full(
    score_path: &Path,
    probs_path: &Path,
    options: &AnalysisOptions,
    out_dir: &Path,
) -> Result<AnalysisReport, RunError> {
    let scores_content = read_input(score_path)?;
    let probs_content = read_input(probs_path)?;
    let scores = parse_scores_input(score_path, &scores_content)?;
    let dataset = parse_probabilities_input(probs_path, &probs_content)?;

    let mut artifacts = Artifacts::new();
    let analysis = analyze_scores(&scores, options, &mut artifacts)?;
    let method3 = analyze_probabilities(&dataset, options, &mut artifacts)?;

    let mut report = empty_report(input_digest(&[
        ("scores", scores_content.as_bytes()),
        ("probs", probs_content.as_bytes()),
    ]));
    report.method1 = Some(analysis.method1);
    report.method2 = Some(analysis.method2);
    report.best_curve = Some(analysis.best_curve);
    report.knee = Some(analysis.knee);
    report.threshold_result = analysis.threshold_result;
    report.method3 = Some(method3);
    report.warnings = analysis.warnings;
    stage_report(&mut artifacts, &report)?;
    artifacts.write_all(out_dir)?;
    Ok(report)
}
