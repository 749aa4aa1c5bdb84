//! Gaussian score modeling: fit `(mu, sigma)` summaries to score collections
//! and evaluate the error function, the Gaussian cumulative distribution
//! function, and the upper tail mass that drives the CDF-sweep ROC
//! construction.
//!
//! All operations are pure functions over immutable values and are safe to
//! call concurrently without coordination.

use thiserror::Error;

/// Errors produced while validating or fitting score collections.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussianError {
    /// A fit was requested over zero scores.
    #[error("empty score collection")]
    EmptyScores,
    /// A score was NaN or infinite.
    #[error("non-finite score")]
    NonFiniteScore,
}

/// Smallest standard deviation [`fit_gaussian`] will report. Zero-variance
/// collections are floored here so the CDF stays total and well-defined on
/// degenerate inputs.
pub const SIGMA_FLOOR: f64 = 1e-9;

/// A `(mu, sigma)` summary of one score collection. Two of these — one fitted
/// to the ground-truth-positive scores, one to the negatives — drive the
/// CDF-sweep ROC construction.
///
/// Invariants: both fields are finite and `sigma > 0`. [`fit_gaussian`]
/// upholds them; hand-constructed models are the caller's responsibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel {
    /// Arithmetic mean of the fitted scores.
    pub mu: f64,
    /// Population standard deviation, floored at [`SIGMA_FLOOR`].
    pub sigma: f64,
}

/// Paired collections of ground-truth-positive and ground-truth-negative
/// classifier scores.
///
/// Construction validates that every score is finite. Emptiness is checked by
/// the operations that need data: fitting requires at least one score per
/// list, ROC construction requires at least two.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreSet {
    positives: Vec<f64>,
    negatives: Vec<f64>,
}

impl ScoreSet {
    /// Builds a score set, rejecting NaN or infinite values.
    pub fn new(positives: Vec<f64>, negatives: Vec<f64>) -> Result<Self, GaussianError> {
        if positives.iter().chain(&negatives).any(|s| !s.is_finite()) {
            return Err(GaussianError::NonFiniteScore);
        }
        Ok(Self {
            positives,
            negatives,
        })
    }

    /// Ground-truth-positive scores, in input order.
    pub fn positives(&self) -> &[f64] {
        &self.positives
    }

    /// Ground-truth-negative scores, in input order.
    pub fn negatives(&self) -> &[f64] {
        &self.negatives
    }
}

/// Fits a Gaussian summary to a score collection: `mu` is the arithmetic
/// mean and `sigma` the population standard deviation, floored at
/// [`SIGMA_FLOOR`]. The fit is permutation-invariant in its input.
pub fn fit_gaussian(scores: &[f64]) -> Result<GaussianModel, GaussianError> {
    if scores.is_empty() {
        return Err(GaussianError::EmptyScores);
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(GaussianError::NonFiniteScore);
    }
    let n = scores.len() as f64;
    let mu = scores.iter().sum::<f64>() / n;
    let variance = scores.iter().map(|s| (s - mu) * (s - mu)).sum::<f64>() / n;
    let sigma = variance.sqrt().max(SIGMA_FLOOR);
    Ok(GaussianModel { mu, sigma })
}

// Abramowitz & Stegun formula 7.1.26 coefficients (|error| <= 1.5e-7).
const ERF_P: f64 = 0.327_591_1;
const ERF_A1: f64 = 0.254_829_592;
const ERF_A2: f64 = -0.284_496_736;
const ERF_A3: f64 = 1.421_413_741;
const ERF_A4: f64 = -1.453_152_027;
const ERF_A5: f64 = 1.061_405_429;

/// Gauss error function computed with the Abramowitz & Stegun 7.1.26
/// rational approximation; absolute error is at most 1.5e-7 over all finite
/// inputs. Odd symmetry `erf(-x) == -erf(x)` holds exactly because the
/// polynomial is evaluated on `|x|` with the sign reapplied afterwards.
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let t = 1.0 / (1.0 + ERF_P * ax);
    let poly = t * (ERF_A1 + t * (ERF_A2 + t * (ERF_A3 + t * (ERF_A4 + t * ERF_A5))));
    let magnitude = 1.0 - poly * (-ax * ax).exp();
    if x < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

/// Gaussian cumulative distribution function
/// `CDF(t, mu, sigma) = (1 + erf((t - mu) / (sigma * sqrt(2)))) / 2`.
/// Monotone nondecreasing in `t` for a fixed model; always within `[0, 1]`.
pub fn cdf(t: f64, model: &GaussianModel) -> f64 {
    0.5 * (1.0 + erf((t - model.mu) / (model.sigma * std::f64::consts::SQRT_2)))
}

/// Upper tail mass from `t` to infinity: exactly `1 - cdf(t, model)`, using
/// the analytic `CDF(inf) = 1` rather than a large-argument evaluation. The
/// complement identity `cdf + tail_mass == 1` therefore holds to machine
/// precision. Monotone nonincreasing in `t`; always within `[0, 1]`.
pub fn tail_mass(t: f64, model: &GaussianModel) -> f64 {
    1.0 - cdf(t, model)
}
