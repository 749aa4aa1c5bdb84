//! Knee location on discrete curves, the knee-to-diagonal maximum-threshold
//! geometry, and per-sample knee analysis of class-probability vectors.
//!
//! The detector follows the Kneedle procedure: min-max normalize both axes,
//! form the difference curve for the declared shape/direction so knees appear
//! as local maxima, and return the first local maximum that clears the
//! sensitivity-scaled mean-spacing threshold.

use std::collections::BTreeSet;
use thiserror::Error;

/// Errors from knee detection and probability-vector analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum KneeError {
    /// Knee detection needs at least three points.
    #[error("insufficient points: need at least 3, got {0}")]
    InsufficientPoints(usize),
    /// The x coordinates were not strictly monotone.
    #[error("x not monotone")]
    NonMonotoneX,
    /// A probability vector had fewer than three entries.
    #[error("insufficient classes: need at least 3, got {0}")]
    InsufficientClasses(usize),
    /// The knee sits below the chance diagonal, so no threshold exists.
    #[error("knee below chance diagonal: y {y} < x {x}")]
    BelowDiagonal { x: f64, y: f64 },
    /// A knee coordinate was NaN or infinite.
    #[error("non-finite knee coordinate")]
    NonFiniteCoordinate,
    /// Statistics were requested over zero samples.
    #[error("no samples")]
    NoSamples,
    /// A probability was NaN or outside `[0, 1]`.
    #[error("probability {value} at position {position} outside [0,1]")]
    InvalidProbability { position: usize, value: f64 },
    /// A label index referenced a class beyond the vector length.
    #[error("label index {0} out of range")]
    LabelOutOfRange(usize),
}

/// Curvature class of the input curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Bulges above its chord (e.g. an ROC curve).
    Concave,
    /// Sags below its chord (e.g. a sorted ascending probability vector).
    Convex,
}

/// Whether y grows or falls along ascending x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveDirection {
    Increasing,
    Decreasing,
}

/// A located knee: the position in the input sequence and the input point's
/// coordinates, exactly as given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KneePoint {
    pub index: usize,
    pub x: f64,
    pub y: f64,
}

/// One sample's class-probability vector plus an optional set of true class
/// indices. Every probability must lie in `[0, 1]`; file ingestion
/// additionally normalizes rows onto the simplex, but in-memory vectors may
/// carry any sum (knee analysis only orders the values).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleProbabilities {
    pub probs: Vec<f64>,
    pub label_set: Option<BTreeSet<usize>>,
}

impl SampleProbabilities {
    /// Builds an unlabeled sample, validating every probability.
    pub fn new(probs: Vec<f64>) -> Result<Self, KneeError> {
        Self::build(probs, None)
    }

    /// Builds a labeled sample; label indices must reference existing
    /// classes.
    pub fn with_labels(probs: Vec<f64>, labels: BTreeSet<usize>) -> Result<Self, KneeError> {
        Self::build(probs, Some(labels))
    }

    fn build(probs: Vec<f64>, labels: Option<BTreeSet<usize>>) -> Result<Self, KneeError> {
        for (position, &value) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(KneeError::InvalidProbability { position, value });
            }
        }
        if let Some(labels) = &labels {
            if let Some(&bad) = labels.iter().find(|&&l| l >= probs.len()) {
                return Err(KneeError::LabelOutOfRange(bad));
            }
        }
        Ok(Self {
            probs,
            label_set: labels,
        })
    }
}

/// Knee-to-diagonal geometry: the perpendicular foot of the knee on the
/// chance diagonal, the distance to it, and the resulting maximum threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KneeThresholdResult {
    /// The knee coordinates the geometry was derived from.
    pub knee: (f64, f64),
    /// Perpendicular foot on the chance diagonal: `((x+y)/2, (x+y)/2)`.
    pub foot: (f64, f64),
    /// Euclidean distance from knee to foot: `|y - x| / sqrt(2)`.
    pub distance: f64,
    /// `0.5 + distance`, clamped into `[0, 1]`.
    pub threshold: f64,
}

/// Locates the knee of a discrete curve.
///
/// Requires at least three points and strictly monotone x (either
/// direction; decreasing input is scanned in reverse and the returned index
/// refers to the original order). Both axes are min-max normalized, the
/// difference curve for the declared shape/direction is formed pointwise
/// (concave-increasing `y-x`, concave-decreasing `x+y-1`, convex-increasing
/// `x-y`, convex-decreasing `1-x-y`), and interior local maxima qualify when
/// they exceed `sensitivity *` the mean normalized x-spacing. The first
/// qualifying candidate in ascending-x order is the knee; `None` means no
/// candidate qualified.
pub fn find_knee(
    points: &[(f64, f64)],
    shape: Shape,
    direction: CurveDirection,
    sensitivity: f64,
) -> Result<Option<KneePoint>, KneeError> {
    let n = points.len();
    if n < 3 {
        return Err(KneeError::InsufficientPoints(n));
    }
    let increasing = points.windows(2).all(|w| w[1].0 > w[0].0);
    let decreasing = points.windows(2).all(|w| w[1].0 < w[0].0);
    if !increasing && !decreasing {
        return Err(KneeError::NonMonotoneX);
    }
    // Work in ascending-x order; map candidate positions back at the end.
    let orig = |i: usize| if decreasing { n - 1 - i } else { i };

    let ys_min = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ys_max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if ys_max == ys_min {
        return Ok(None); // flat curve: zero curvature everywhere
    }
    let xs_min = points[orig(0)].0;
    let xs_max = points[orig(n - 1)].0;

    let mut diff = Vec::with_capacity(n);
    for i in 0..n {
        let (px, py) = points[orig(i)];
        let xn = (px - xs_min) / (xs_max - xs_min);
        let yn = (py - ys_min) / (ys_max - ys_min);
        diff.push(match (shape, direction) {
            (Shape::Concave, CurveDirection::Increasing) => yn - xn,
            (Shape::Concave, CurveDirection::Decreasing) => xn + yn - 1.0,
            (Shape::Convex, CurveDirection::Increasing) => xn - yn,
            (Shape::Convex, CurveDirection::Decreasing) => 1.0 - xn - yn,
        });
    }

    let mean_spacing = 1.0 / (n - 1) as f64; // normalized x spans exactly [0,1]
    let qualify = sensitivity * mean_spacing;
    for i in 1..n - 1 {
        if diff[i] >= diff[i - 1] && diff[i] >= diff[i + 1] && diff[i] > qualify {
            let at = orig(i);
            return Ok(Some(KneePoint {
                index: at,
                x: points[at].0,
                y: points[at].1,
            }));
        }
    }
    Ok(None)
}

/// Derives the maximum threshold from a knee above the chance diagonal:
/// foot `((x+y)/2, (x+y)/2)`, distance `(y-x)/sqrt(2)`, threshold
/// `clamp(0.5 + distance, 0, 1)`.
pub fn knee_to_threshold(knee: (f64, f64)) -> Result<KneeThresholdResult, KneeError> {
    let (x, y) = knee;
    if !x.is_finite() || !y.is_finite() {
        return Err(KneeError::NonFiniteCoordinate);
    }
    if y < x {
        return Err(KneeError::BelowDiagonal { x, y });
    }
    let mid = 0.5 * (x + y);
    let distance = (y - x) / std::f64::consts::SQRT_2;
    Ok(KneeThresholdResult {
        knee,
        foot: (mid, mid),
        distance,
        threshold: (0.5 + distance).clamp(0.0, 1.0),
    })
}

/// Per-sample knee: sorts the probabilities ascending, plots them against
/// indices `0..n-1`, and runs [`find_knee`] as convex/increasing with
/// sensitivity 1.0. The returned index refers to the sorted order.
pub fn method3_knee(sample: &SampleProbabilities) -> Result<Option<KneePoint>, KneeError> {
    let n = sample.probs.len();
    if n < 3 {
        return Err(KneeError::InsufficientClasses(n));
    }
    let mut sorted = sample.probs.clone();
    sorted.sort_by(f64::total_cmp);
    let points: Vec<(f64, f64)> = sorted
        .iter()
        .enumerate()
        .map(|(i, &p)| (i as f64, p))
        .collect();
    find_knee(&points, Shape::Convex, CurveDirection::Increasing, 1.0)
}

/// Original class indices whose probability lies strictly above the knee's
/// y value (the knee point itself is excluded), in ascending index order.
pub fn detected_classes(sample: &SampleProbabilities, knee: &KneePoint) -> Vec<usize> {
    sample
        .probs
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > knee.y)
        .map(|(i, _)| i)
        .collect()
}

/// Aggregate knee statistics over a sample population.
#[derive(Debug, Clone, PartialEq)]
pub struct KneeStatistics {
    /// Total number of samples examined.
    pub total: usize,
    /// Samples whose maximum probability reaches the cutoff.
    pub high_count: usize,
    /// `high_count / total`.
    pub high_fraction: f64,
    /// Among the high samples, those whose knee index lies in
    /// `[knee_lo, knee_hi]`.
    pub in_range_count: usize,
    /// `in_range_count / high_count`; absent when no sample reaches the
    /// cutoff.
    pub in_range_fraction: Option<f64>,
    /// Samples (high or low) where no knee was found.
    pub no_knee_count: usize,
}

/// Counts (a) samples whose maximum probability reaches `prob_cutoff`,
/// (b) among those, samples whose knee index lies in `[knee_lo, knee_hi]`,
/// and (c) samples with no detectable knee.
///
/// An inverted range (`knee_lo > knee_hi`) is treated as empty and simply
/// matches no knee index; the CLI rejects such ranges up front.
pub fn knee_statistics(
    samples: &[SampleProbabilities],
    prob_cutoff: f64,
    knee_lo: usize,
    knee_hi: usize,
) -> Result<KneeStatistics, KneeError> {
    if samples.is_empty() {
        return Err(KneeError::NoSamples);
    }
    let mut high_count = 0;
    let mut in_range_count = 0;
    let mut no_knee_count = 0;
    for sample in samples {
        let max = sample
            .probs
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let knee = method3_knee(sample)?;
        if knee.is_none() {
            no_knee_count += 1;
        }
        if max >= prob_cutoff {
            high_count += 1;
            if let Some(k) = knee {
                if k.index >= knee_lo && k.index <= knee_hi {
                    in_range_count += 1;
                }
            }
        }
    }
    let total = samples.len();
    Ok(KneeStatistics {
        total,
        high_count,
        high_fraction: high_count as f64 / total as f64,
        in_range_count,
        in_range_fraction: (high_count > 0).then(|| in_range_count as f64 / high_count as f64),
        no_knee_count,
    })
}
