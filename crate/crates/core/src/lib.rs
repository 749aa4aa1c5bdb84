//! Threshold analysis for multi-class classifier scores.
//!
//! The crate builds ROC curves from Gaussian models of classifier score
//! collections, re-derives those curves while scores are iteratively
//! redistributed across confusion-matrix holders, and locates knee points on
//! discrete curves — including per-sample knees on sorted class-probability
//! vectors — to derive decision thresholds.
//!
//! Modules:
//! - [`gaussian`]: score-collection fitting plus the error function, Gaussian
//!   CDF, and upper tail mass.
//! - [`roc`]: ROC construction, AUC, score redistribution, threshold sweeps,
//!   and best-curve selection.
//! - [`knee`]: knee location on discrete curves, knee-to-diagonal threshold
//!   geometry, and per-sample probability-vector analysis.
//! - [`ingest`]: score/probability file parsing, validation, and synthetic
//!   dataset generation.
//! - [`report`]: end-to-end analysis runs producing deterministic artifacts.
//! - [`svg`]: dependency-free deterministic SVG charts.
//!
//! Everything in the analysis path is a pure function of its inputs; fixed
//! inputs and options produce byte-identical artifacts.
//!
//! ```
//! use rocknee::gaussian::ScoreSet;
//! use rocknee::knee::knee_to_threshold;
//! use rocknee::roc::{method1_roc, SweepConfig};
//!
//! let scores = ScoreSet::new(
//!     vec![0.62, 0.71, 0.77, 0.83, 0.90],
//!     vec![0.12, 0.24, 0.30, 0.41, 0.49],
//! )?;
//! let curve = method1_roc(&scores, &SweepConfig::default())?;
//! assert!(curve.auc > 0.9);
//!
//! // Map a knee at (fpr, tpr) = (0.098, 0.371) to its maximum threshold.
//! let result = knee_to_threshold((0.098, 0.371))?;
//! assert!((result.threshold - 0.693).abs() < 5e-4);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod gaussian;
pub mod ingest;
pub mod knee;
pub mod report;
pub mod roc;
pub mod svg;

mod util;
