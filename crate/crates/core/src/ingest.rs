//! Score and probability file ingestion, validation, canonical serialization,
//! and deterministic synthetic dataset generation.
//!
//! File formats (UTF-8, comma-delimited, LF line endings):
//! - Score file: header `score,label`; one score in `[0,1]` plus a label of
//!   `pos` or `neg` per row.
//! - Probability file: header `p0,...,p{k-1}` with an optional trailing
//!   `labels` column holding semicolon-separated true class indices; one
//!   probability vector per row. Rows must sum to 1 within 1e-3; sums inside
//!   that band but off by more than 1e-9 are renormalized with a logged
//!   warning.
//!
//! A file either parses completely or is rejected; no partial ingestion.

use crate::gaussian::ScoreSet;
use crate::knee::SampleProbabilities;
use crate::util::write_atomic;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

/// Errors from parsing, validation, and generation.
#[derive(Debug, Error)]
pub enum IngestError {
    /// The file could not be read or written.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// The header row did not declare the expected columns.
    #[error("invalid header: {0}")]
    Header(String),
    /// A data row failed validation; `line` is 1-based counting the header.
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    /// The score file lacked one (or both) of the label partitions.
    #[error("one-sided score file: no '{0}' rows")]
    OneSided(&'static str),
    /// A generator configuration violated one of its bounds.
    #[error("invalid generator config: {0}")]
    Config(String),
}

/// A fully parsed probability dataset: every sample holds exactly
/// `class_count` probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFile {
    pub samples: Vec<SampleProbabilities>,
    pub class_count: usize,
    pub source_path: String,
}

/// Shape of a synthetic probability population.
///
/// `high_prob_fraction` of the samples ("high" samples) carry one dominant
/// probability of at least 0.35 concentrated on the `active_classes` leading
/// classes; the remainder are near-uniform with every entry capped below
/// 0.35, so the planted fraction is exact by construction. High-sample mass
/// rises smoothly from the inactive floor through the active classes, which
/// places the sorted-probability knee near the active/inactive boundary.
/// `noise_scale` jitters the mass splits; generation is a pure function of
/// the config, including `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub sample_count: usize,
    pub class_count: usize,
    pub active_classes: usize,
    pub high_prob_fraction: f64,
    pub noise_scale: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            sample_count: 500,
            class_count: 10,
            active_classes: 4,
            high_prob_fraction: 0.588,
            noise_scale: 0.3,
            seed: 42,
        }
    }
}

fn read_file(path: &Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn csv_error(err: csv::Error) -> IngestError {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    IngestError::Row {
        line,
        message: match err.kind() {
            csv::ErrorKind::UnequalLengths {
                expected_len, len, ..
            } => {
                format!("ragged row: expected {expected_len} fields, found {len}")
            }
            _ => err.to_string(),
        },
    }
}

/// Parses a score file from disk. See the module docs for the format.
pub fn parse_scores(path: &Path) -> Result<ScoreSet, IngestError> {
    parse_scores_str(&read_file(path)?)
}

/// Parses score-file content. Row order is preserved within each label.
pub fn parse_scores_str(content: &str) -> Result<ScoreSet, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(content.as_bytes());
    let headers = reader.headers().map_err(csv_error)?;
    if headers.iter().collect::<Vec<_>>() != ["score", "label"] {
        return Err(IngestError::Header(format!(
            "expected 'score,label', found '{}'",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record_line(&record);
        let raw_score = record.get(0).unwrap_or("");
        let score: f64 = raw_score.parse().map_err(|_| IngestError::Row {
            line,
            message: format!("non-numeric score '{raw_score}'"),
        })?;
        if !(0.0..=1.0).contains(&score) {
            return Err(IngestError::Row {
                line,
                message: format!("score {score} outside [0,1]"),
            });
        }
        match record.get(1).unwrap_or("") {
            "pos" => positives.push(score),
            "neg" => negatives.push(score),
            other => {
                return Err(IngestError::Row {
                    line,
                    message: format!("unknown label '{other}' (expected 'pos' or 'neg')"),
                });
            }
        }
    }
    if positives.is_empty() {
        return Err(IngestError::OneSided("pos"));
    }
    if negatives.is_empty() {
        return Err(IngestError::OneSided("neg"));
    }
    Ok(ScoreSet::new(positives, negatives).expect("scores validated to [0,1]"))
}

/// Accepted deviation of a row sum from 1 without renormalization. Canonical
/// 9-decimal files land well inside this band.
const SUM_EXACT_BAND: f64 = 1e-9;
/// Largest row-sum deviation that is repaired (by renormalizing) rather than
/// rejected; accommodates vectors printed with limited precision.
const SUM_REPAIR_BAND: f64 = 1e-3;

/// Parses a probability file from disk. See the module docs for the format.
pub fn parse_probabilities(path: &Path) -> Result<DatasetFile, IngestError> {
    let mut dataset = parse_probabilities_str(&read_file(path)?)?;
    dataset.source_path = path.display().to_string();
    Ok(dataset)
}

/// Parses probability-file content. `source_path` on the result is empty;
/// the path-taking wrapper fills it in.
pub fn parse_probabilities_str(content: &str) -> Result<DatasetFile, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(content.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_owned)
        .collect();

    let has_labels = headers.last().map(String::as_str) == Some("labels");
    let class_count = headers.len() - usize::from(has_labels);
    if class_count < 3 {
        return Err(IngestError::Header(format!(
            "need at least 3 probability columns, found {class_count}"
        )));
    }
    for (i, name) in headers.iter().take(class_count).enumerate() {
        if name != &format!("p{i}") {
            return Err(IngestError::Header(format!(
                "expected column 'p{i}', found '{name}'"
            )));
        }
    }

    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record_line(&record);
        if record.len() != headers.len() {
            return Err(IngestError::Row {
                line,
                message: format!(
                    "ragged row: expected {} fields, found {}",
                    headers.len(),
                    record.len()
                ),
            });
        }

        let mut probs = Vec::with_capacity(class_count);
        for i in 0..class_count {
            let raw = record.get(i).unwrap_or("");
            let p: f64 = raw.parse().map_err(|_| IngestError::Row {
                line,
                message: format!("non-numeric probability '{raw}'"),
            })?;
            if !(0.0..=1.0).contains(&p) {
                return Err(IngestError::Row {
                    line,
                    message: format!("probability {p} outside [0,1]"),
                });
            }
            probs.push(p);
        }

        let sum: f64 = probs.iter().sum();
        let deviation = (sum - 1.0).abs();
        if deviation > SUM_REPAIR_BAND {
            return Err(IngestError::Row {
                line,
                message: format!("probabilities sum to {sum:.9}, outside the 1e-3 tolerance band"),
            });
        }
        if deviation > SUM_EXACT_BAND {
            log::warn!("line {line}: probabilities sum to {sum:.9}; renormalized to 1");
            for p in &mut probs {
                *p /= sum;
            }
        }

        let labels = if has_labels {
            let field = record.get(class_count).unwrap_or("");
            let mut set = BTreeSet::new();
            for part in field.split(';').filter(|s| !s.is_empty()) {
                let idx: usize = part.parse().map_err(|_| IngestError::Row {
                    line,
                    message: format!("invalid label index '{part}'"),
                })?;
                if idx >= class_count {
                    return Err(IngestError::Row {
                        line,
                        message: format!(
                            "label index {idx} out of range for {class_count} classes"
                        ),
                    });
                }
                set.insert(idx);
            }
            Some(set)
        } else {
            None
        };

        let sample = match labels {
            Some(set) => SampleProbabilities::with_labels(probs, set),
            None => SampleProbabilities::new(probs),
        }
        .map_err(|e| IngestError::Row {
            line,
            message: e.to_string(),
        })?;
        samples.push(sample);
    }

    Ok(DatasetFile {
        samples,
        class_count,
        source_path: String::new(),
    })
}

/// Canonical score-file serialization: positives first, then negatives, each
/// score printed with 9 fractional digits. `parse_scores_str` of the result
/// reproduces the input exactly, and re-serializing parsed canonical content
/// is byte-identical.
pub fn format_scores(scores: &ScoreSet) -> String {
    let mut out = String::from("score,label\n");
    for p in scores.positives() {
        let _ = writeln!(out, "{p:.9},pos");
    }
    for n in scores.negatives() {
        let _ = writeln!(out, "{n:.9},neg");
    }
    out
}

/// Writes the canonical score file atomically.
pub fn write_scores(path: &Path, scores: &ScoreSet) -> Result<(), IngestError> {
    write_atomic(path, format_scores(scores).as_bytes()).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Canonical probability-file serialization with 9 fractional digits per
/// probability. The `labels` column is present exactly when the first sample
/// carries a label set (generated and parsed files are uniform in this).
pub fn format_probabilities(dataset: &DatasetFile) -> String {
    let has_labels = dataset
        .samples
        .first()
        .map(|s| s.label_set.is_some())
        .unwrap_or(false);
    let mut out = String::new();
    for i in 0..dataset.class_count {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "p{i}");
    }
    if has_labels {
        out.push_str(",labels");
    }
    out.push('\n');

    for sample in &dataset.samples {
        for (i, p) in sample.probs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{p:.9}");
        }
        if has_labels {
            out.push(',');
            if let Some(set) = &sample.label_set {
                let mut first = true;
                for l in set {
                    if !first {
                        out.push(';');
                    }
                    let _ = write!(out, "{l}");
                    first = false;
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Writes the canonical probability file atomically.
pub fn write_probabilities(path: &Path, dataset: &DatasetFile) -> Result<(), IngestError> {
    write_atomic(path, format_probabilities(dataset).as_bytes()).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Uniform draw in `[0, 1)` from the top 53 bits of the stream; kept manual
/// so generated fixtures stay bit-stable across RNG crate versions.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Quantizes a probability vector to 9 fractional digits, assigning the
/// rounding residual to the largest entry so the written row sums to exactly
/// 1.000000000.
fn quantize_simplex(probs: &mut [f64]) {
    let mut units: Vec<i64> = probs.iter().map(|p| (p * 1e9).round() as i64).collect();
    let residual = 1_000_000_000 - units.iter().sum::<i64>();
    let mut arg = 0;
    for (i, u) in units.iter().enumerate() {
        if *u > units[arg] {
            arg = i;
        }
    }
    units[arg] += residual;
    for (p, u) in probs.iter_mut().zip(&units) {
        *p = *u as f64 / 1e9;
    }
}

/// Generates a synthetic probability dataset. Deterministic for a fixed
/// config; the planted high-sample count is `round(sample_count *
/// high_prob_fraction)` exactly. High samples carry the active classes as
/// their label set; low samples carry an empty label set.
pub fn generate_dataset(config: &GeneratorConfig) -> Result<DatasetFile, IngestError> {
    if config.sample_count == 0 {
        return Err(IngestError::Config("sample_count must be positive".into()));
    }
    if config.class_count < 3 {
        return Err(IngestError::Config(format!(
            "class_count must be at least 3, got {}",
            config.class_count
        )));
    }
    if config.active_classes == 0 || config.active_classes > config.class_count {
        return Err(IngestError::Config(format!(
            "active_classes must be in [1, class_count], got {}",
            config.active_classes
        )));
    }
    if !(0.0..=1.0).contains(&config.high_prob_fraction) {
        return Err(IngestError::Config(format!(
            "high_prob_fraction must be within [0,1], got {}",
            config.high_prob_fraction
        )));
    }
    if !config.noise_scale.is_finite() || config.noise_scale < 0.0 {
        return Err(IngestError::Config(format!(
            "noise_scale must be finite and >= 0, got {}",
            config.noise_scale
        )));
    }

    let k = config.class_count;
    let high_count = (config.sample_count as f64 * config.high_prob_fraction).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let active_labels: BTreeSet<usize> = (0..config.active_classes).collect();

    // Low-sample blend weight: capped so that max entry <= 0.34 < 0.35 no
    // matter how large the jitter gets: (1-l)/k + l <= 0.34.
    let lambda_cap = (0.34 - 1.0 / k as f64) / (1.0 - 1.0 / k as f64);
    let lambda = lambda_cap * config.noise_scale.min(1.0);

    let mut samples = Vec::with_capacity(config.sample_count);
    for i in 0..config.sample_count {
        let mut probs = vec![0.0; k];
        let labels;
        if i < high_count {
            // One dominant active class takes [0.38, 0.60); the other active
            // classes share most of the remainder on a geometric ladder and
            // the inactive classes split the rest as a gently rising floor.
            // With no hard jump between the floor and the ladder, the sorted
            // profile bends exactly once, near the active/inactive boundary.
            let dominant = (rng.next_u64() % config.active_classes as u64) as usize;
            let p_dom = 0.38 + 0.22 * unit(&mut rng);
            let remainder = 1.0 - p_dom;
            let others = config.active_classes - 1;
            let inactive = k - config.active_classes;
            let active_share = match (others, inactive) {
                (0, _) => 0.0,
                (_, 0) => remainder,
                _ => 0.85 * remainder,
            };

            let mut weights = vec![0.0; k];
            probs[dominant] = p_dom;
            if others > 0 {
                let mut rank = 0;
                let mut sum = 0.0;
                for (j, w) in weights.iter_mut().enumerate().take(config.active_classes) {
                    if j == dominant {
                        continue;
                    }
                    *w = 2.8_f64.powi(rank) * (1.0 + config.noise_scale * unit(&mut rng));
                    sum += *w;
                    rank += 1;
                }
                for j in (0..config.active_classes).filter(|&j| j != dominant) {
                    probs[j] = active_share * weights[j] / sum;
                }
            }
            if inactive > 0 {
                let mut sum = 0.0;
                for (offset, w) in weights.iter_mut().skip(config.active_classes).enumerate() {
                    let ramp = if inactive > 1 {
                        offset as f64 / (inactive - 1) as f64
                    } else {
                        0.0
                    };
                    *w = (1.0 + 0.5 * ramp) * (1.0 + config.noise_scale * unit(&mut rng));
                    sum += *w;
                }
                for j in config.active_classes..k {
                    probs[j] = (remainder - active_share) * weights[j] / sum;
                }
            }
            labels = active_labels.clone();
        } else {
            // Near-uniform: blend the uniform vector with jittered weights,
            // capped so no entry can reach the 0.35 cutoff.
            let mut weights = vec![0.0; k];
            let mut weight_sum = 0.0;
            for w in weights.iter_mut() {
                *w = 1.0 + config.noise_scale * unit(&mut rng);
                weight_sum += *w;
            }
            for (p, w) in probs.iter_mut().zip(&weights) {
                *p = (1.0 - lambda) / k as f64 + lambda * w / weight_sum;
            }
            labels = BTreeSet::new();
        }
        quantize_simplex(&mut probs);
        samples.push(
            SampleProbabilities::with_labels(probs, labels)
                .expect("generated probabilities are within [0,1]"),
        );
    }

    Ok(DatasetFile {
        samples,
        class_count: k,
        source_path: format!("generated:seed={}", config.seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_scores_partitions_by_label() {
        let set = parse_scores_str("score,label\n0.9,pos\n0.1,neg\n").unwrap();
        assert_eq!(set.positives(), &[0.9]);
        assert_eq!(set.negatives(), &[0.1]);
    }

    #[test]
    fn parse_scores_reports_line_numbers() {
        let err = parse_scores_str("score,label\n0.5,maybe\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
        assert!(err.to_string().contains("maybe"));

        let err = parse_scores_str("score,label\n0.5,pos\nhuh,neg\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "got: {err}");

        let err = parse_scores_str("score,label\n1.5,pos\n").unwrap_err();
        assert!(err.to_string().contains("outside [0,1]"), "got: {err}");
    }

    #[test]
    fn parse_scores_rejects_bad_header_and_one_sided_files() {
        assert!(matches!(
            parse_scores_str("value,tag\n0.5,pos\n"),
            Err(IngestError::Header(_))
        ));
        let err = parse_scores_str("score,label\n0.5,pos\n").unwrap_err();
        assert!(err.to_string().contains("one-sided score file"));
        let err = parse_scores_str("score,label\n0.5,neg\n").unwrap_err();
        assert!(err.to_string().contains("one-sided score file"));
    }

    #[test]
    fn parse_scores_preserves_order_within_labels() {
        let set = parse_scores_str("score,label\n0.9,pos\n0.2,neg\n0.7,pos\n0.1,neg\n").unwrap();
        assert_eq!(set.positives(), &[0.9, 0.7]);
        assert_eq!(set.negatives(), &[0.2, 0.1]);
    }

    #[test]
    fn scores_round_trip_byte_exactly() {
        let set = ScoreSet::new(vec![0.123456789, 0.9, 0.5], vec![0.000000001, 0.25]).unwrap();
        let text = format_scores(&set);
        let reparsed = parse_scores_str(&text).unwrap();
        assert_eq!(format_scores(&reparsed), text);
        assert_eq!(reparsed, set);
    }

    #[test]
    fn parse_probabilities_accepts_exact_rows_unchanged() {
        let row = ["0.1"; 10].join(",");
        let header: Vec<String> = (0..10).map(|i| format!("p{i}")).collect();
        let content = format!("{}\n{row}\n", header.join(","));
        let ds = parse_probabilities_str(&content).unwrap();
        assert_eq!(ds.class_count, 10);
        assert_eq!(ds.samples.len(), 1);
        assert!(ds.samples[0].probs.iter().all(|&p| p == 0.1));
        assert_eq!(ds.samples[0].label_set, None);
    }

    #[test]
    fn parse_probabilities_renormalizes_inside_the_band() {
        let content = "p0,p1,p2\n0.5005,0.3,0.2\n";
        let ds = parse_probabilities_str(content).unwrap();
        let sum: f64 = ds.samples[0].probs.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(ds.samples[0].probs[0] < 0.5005);
    }

    #[test]
    fn parse_probabilities_rejects_out_of_band_rows() {
        let err = parse_probabilities_str("p0,p1,p2\n0.2,0.2,0.1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
        assert!(err.to_string().contains("sum"));
    }

    #[test]
    fn parse_probabilities_rejects_ragged_rows() {
        let err = parse_probabilities_str("p0,p1,p2\n0.5,0.5\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
    }

    #[test]
    fn parse_probabilities_rejects_bad_headers() {
        assert!(matches!(
            parse_probabilities_str("p0,p1\n0.5,0.5\n"),
            Err(IngestError::Header(_))
        ));
        assert!(matches!(
            parse_probabilities_str("p0,p2,p1\n0.3,0.3,0.4\n"),
            Err(IngestError::Header(_))
        ));
    }

    #[test]
    fn parse_probabilities_reads_labels() {
        let content = "p0,p1,p2,labels\n0.6,0.3,0.1,0;2\n0.4,0.3,0.3,\n";
        let ds = parse_probabilities_str(content).unwrap();
        assert_eq!(ds.samples[0].label_set, Some(BTreeSet::from([0, 2])));
        assert_eq!(ds.samples[1].label_set, Some(BTreeSet::new()));

        let err = parse_probabilities_str("p0,p1,p2,labels\n0.6,0.3,0.1,7\n").unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn generator_is_deterministic() {
        let config = GeneratorConfig::default();
        let a = generate_dataset(&config).unwrap();
        let b = generate_dataset(&config).unwrap();
        assert_eq!(format_probabilities(&a), format_probabilities(&b));
    }

    #[test]
    fn generator_plants_the_high_fraction_exactly() {
        let ds = generate_dataset(&GeneratorConfig::default()).unwrap();
        let high = ds
            .samples
            .iter()
            .filter(|s| s.probs.iter().cloned().fold(0.0, f64::max) >= 0.35)
            .count();
        assert_eq!(high, 294); // round(500 * 0.588)
    }

    #[test]
    fn generator_high_sample_knees_sit_near_the_active_boundary() {
        let ds = generate_dataset(&GeneratorConfig::default()).unwrap();
        let stats = crate::knee::knee_statistics(&ds.samples, 0.35, 6, 8).unwrap();
        assert_eq!(stats.high_count, 294);
        let in_range = stats.in_range_fraction.unwrap();
        assert!(in_range >= 0.9, "in-range fraction fell to {in_range}");
    }

    #[test]
    fn generator_rows_live_on_the_simplex() {
        let ds = generate_dataset(&GeneratorConfig {
            sample_count: 50,
            noise_scale: 2.5,
            ..GeneratorConfig::default()
        })
        .unwrap();
        for s in &ds.samples {
            let sum: f64 = s.probs.iter().sum();
            assert!((sum - 1.0).abs() <= 1e-9);
            assert!(s.probs.iter().all(|&p| (0.0..=1.0).contains(&p)));
        }
    }

    #[test]
    fn generator_full_high_fraction() {
        let ds = generate_dataset(&GeneratorConfig {
            sample_count: 40,
            high_prob_fraction: 1.0,
            ..GeneratorConfig::default()
        })
        .unwrap();
        assert!(ds
            .samples
            .iter()
            .all(|s| s.probs.iter().cloned().fold(0.0, f64::max) >= 0.35));
    }

    #[test]
    fn generator_minimum_class_count() {
        // class_count == 3 exercises the tightest low-sample cap.
        let ds = generate_dataset(&GeneratorConfig {
            sample_count: 30,
            class_count: 3,
            active_classes: 1,
            high_prob_fraction: 0.5,
            noise_scale: 1.0,
            seed: 7,
        })
        .unwrap();
        let high = ds
            .samples
            .iter()
            .filter(|s| s.probs.iter().cloned().fold(0.0, f64::max) >= 0.35)
            .count();
        assert_eq!(high, 15);
    }

    #[test]
    fn generator_validates_config_bounds() {
        let bad = |f: fn(&mut GeneratorConfig), needle: &str| {
            let mut config = GeneratorConfig::default();
            f(&mut config);
            let err = generate_dataset(&config).unwrap_err();
            assert!(err.to_string().contains(needle), "got: {err}");
        };
        bad(|c| c.sample_count = 0, "sample_count");
        bad(|c| c.class_count = 2, "class_count");
        bad(|c| c.active_classes = 0, "active_classes");
        bad(|c| c.active_classes = 11, "active_classes");
        bad(|c| c.high_prob_fraction = 1.5, "high_prob_fraction");
        bad(|c| c.noise_scale = -0.1, "noise_scale");
    }

    #[test]
    fn probabilities_round_trip_byte_exactly() {
        let ds = generate_dataset(&GeneratorConfig {
            sample_count: 25,
            ..GeneratorConfig::default()
        })
        .unwrap();
        let text = format_probabilities(&ds);
        let reparsed = parse_probabilities_str(&text).unwrap();
        assert_eq!(format_probabilities(&reparsed), text);
    }

    #[test]
    fn files_round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let scores_path = dir.path().join("scores.csv");
        let set = ScoreSet::new(vec![0.7, 0.8], vec![0.2, 0.3]).unwrap();
        write_scores(&scores_path, &set).unwrap();
        assert_eq!(parse_scores(&scores_path).unwrap(), set);

        let probs_path = dir.path().join("probs.csv");
        let ds = generate_dataset(&GeneratorConfig {
            sample_count: 10,
            ..GeneratorConfig::default()
        })
        .unwrap();
        write_probabilities(&probs_path, &ds).unwrap();
        let reparsed = parse_probabilities(&probs_path).unwrap();
        assert_eq!(reparsed.samples, ds.samples);
        assert_eq!(reparsed.class_count, ds.class_count);
        assert_eq!(reparsed.source_path, probs_path.display().to_string());
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let err = parse_scores(Path::new("/nonexistent/scores.csv")).unwrap_err();
        assert!(matches!(err, IngestError::Io { .. }));
    }
}
