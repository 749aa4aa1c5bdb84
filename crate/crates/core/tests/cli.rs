//! End-to-end tests of the `rocknee` binary: artifact layout, report
//! consistency against the emitted CSVs, best-curve tie-breaking, warning
//! paths, flag validation, and option passthrough.

mod common;

use common::even_comb;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rocknee"))
}

fn write_scores_file(path: &Path, positives: &[f64], negatives: &[f64]) {
    let mut text = String::from("score,label\n");
    for p in positives {
        text.push_str(&format!("{p:.9},pos\n"));
    }
    for n in negatives {
        text.push_str(&format!("{n:.9},neg\n"));
    }
    std::fs::write(path, text).unwrap();
}

fn read_report(out_dir: &Path) -> Value {
    let bytes = std::fs::read(out_dir.join("report.json")).unwrap();
    serde_json::from_slice(&bytes).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

/// Counts the files in `dir` that start with `prefix` and end with `suffix`.
fn count_artifacts(dir: &Path, prefix: &str, suffix: &str) -> usize {
    std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|entry| entry.unwrap().file_name().into_string().ok())
        .filter(|name| name.starts_with(prefix) && name.ends_with(suffix))
        .count()
}

/// Trapezoid AUC over (fpr, tpr) rows parsed back out of a curve CSV.
fn auc_from_csv(path: &Path) -> f64 {
    let text = std::fs::read_to_string(path).unwrap();
    let mut points: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|line| {
            let mut fields = line.split(',');
            fields.next().unwrap();
            let fpr: f64 = fields.next().unwrap().parse().unwrap();
            let tpr: f64 = fields.next().unwrap().parse().unwrap();
            (fpr, tpr)
        })
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    points
        .windows(2)
        .map(|pair| (pair[1].0 - pair[0].0) * (pair[0].1 + pair[1].1) / 2.0)
        .sum()
}

#[test]
fn full_run_emits_consistent_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    write_scores_file(
        &scores,
        &even_comb(0.45, 0.95, 30),
        &even_comb(0.05, 0.55, 30),
    );

    let gen_dir = dir.path().join("gen");
    assert!(cli()
        .args(["generate", "--samples", "40", "--out"])
        .arg(&gen_dir)
        .status()
        .unwrap()
        .success());

    let out = dir.path().join("out");
    let output = cli()
        .args(["full", "--scores"])
        .arg(&scores)
        .arg("--probs")
        .arg(gen_dir.join("probabilities.csv"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&output)
    );

    let report = read_report(&out);
    assert_eq!(report["schema_version"], "1");
    assert!(report["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));

    // The method-1 AUC in the report is re-derivable from the curve CSV.
    let m1_auc = report["method1"]["auc"].as_f64().unwrap();
    assert!((auc_from_csv(&out.join("roc_method1.csv")) - m1_auc).abs() <= 1e-9);
    let m1_lines = std::fs::read_to_string(out.join("roc_method1.csv")).unwrap();
    assert_eq!(m1_lines.lines().count(), 1 + 200);

    // One CSV and one SVG per generated curve, one summary row per iteration.
    let curve_count = report["method2"]["curve_count"].as_u64().unwrap() as usize;
    let skipped = report["method2"]["skipped_count"].as_u64().unwrap() as usize;
    assert_eq!(count_artifacts(&out, "roc_method2_t", ".csv"), curve_count);
    assert_eq!(count_artifacts(&out, "roc_method2_t", ".svg"), curve_count);
    let iterations = report["method2"]["iterations"].as_array().unwrap();
    assert_eq!(iterations.len(), 91);
    assert_eq!(iterations.len(), curve_count + skipped);
    let summary = std::fs::read_to_string(out.join("method2_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 91);

    // Best-curve selection is re-derivable from the reported AUCs: the
    // earliest curve with the strictly largest distance from chance wins.
    let mut pool = vec![("method1".to_string(), Value::Null, m1_auc)];
    for iteration in iterations {
        if iteration["skipped"] == Value::Bool(false) {
            pool.push((
                "method2".to_string(),
                iteration["threshold"].clone(),
                iteration["auc"].as_f64().unwrap(),
            ));
        }
    }
    let mut winner = 0;
    for (i, entry) in pool.iter().enumerate() {
        if (entry.2 - 0.5).abs() > (pool[winner].2 - 0.5).abs() {
            winner = i;
        }
    }
    assert_eq!(
        report["best_curve"]["source"].as_str().unwrap(),
        pool[winner].0
    );
    assert_eq!(report["best_curve"]["iteration_threshold"], pool[winner].1);
    assert_eq!(
        report["best_curve"]["auc"].as_f64().unwrap(),
        pool[winner].2
    );

    // Knee and threshold sections are internally consistent.
    if report["knee"]["found"] == Value::Bool(true) {
        let threshold = &report["threshold_result"];
        let distance = threshold["distance"].as_f64().unwrap();
        let expected = (0.5 + distance).clamp(0.0, 1.0);
        assert!((threshold["threshold"].as_f64().unwrap() - expected).abs() <= 1e-12);
        let foot = threshold["foot"].as_array().unwrap();
        assert_eq!(foot[0].as_f64(), foot[1].as_f64());
    }

    // Method-3 artifacts: one knee row per sample, plots capped at 20.
    assert_eq!(report["method3"]["sample_count"], 40);
    let knees = std::fs::read_to_string(out.join("method3_knees.csv")).unwrap();
    assert_eq!(knees.lines().count(), 1 + 40);
    assert_eq!(count_artifacts(&out, "method3_sample", ".svg"), 20);
}

#[test]
fn identical_derived_curves_tie_back_to_method1() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    // Every score sits above the sweep, so each iteration redistributes
    // nothing and re-derives the original curve: an exact AUC tie that the
    // earliest candidate (method 1) must win.
    write_scores_file(
        &scores,
        &even_comb(0.70, 0.90, 16),
        &even_comb(0.50, 0.65, 16),
    );

    let out = dir.path().join("out");
    let output = cli()
        .args(["method2", "--scores"])
        .arg(&scores)
        .arg("--out")
        .arg(&out)
        .args(["--t-init", "0.05", "--t-stop", "0.30"])
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&output)
    );

    let report = read_report(&out);
    assert_eq!(report["method2"]["curve_count"], 26);
    assert_eq!(report["method2"]["skipped_count"], 0);
    assert_eq!(report["best_curve"]["source"], "method1");
    assert_eq!(report["best_curve"]["iteration_threshold"], Value::Null);
    assert_eq!(report["best_curve"]["auc"], report["method1"]["auc"]);
    assert_eq!(report["knee"]["found"], Value::Bool(true));
    assert!(report["threshold_result"]["threshold"].as_f64().is_some());
}

#[test]
fn all_skipped_iterations_warn_and_fall_back_to_method1() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    write_scores_file(
        &scores,
        &even_comb(0.55, 0.65, 10),
        &even_comb(0.20, 0.30, 10),
    );

    let out = dir.path().join("out");
    let output = cli()
        .args(["method2", "--scores"])
        .arg(&scores)
        .arg("--out")
        .arg(&out)
        .args(["--t-init", "0.70", "--t-stop", "0.95"])
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "all-skipped sweeps still succeed"
    );
    assert!(
        stderr_of(&output).contains("warning:"),
        "stderr: {}",
        stderr_of(&output)
    );

    let report = read_report(&out);
    assert_eq!(report["method2"]["curve_count"], 0);
    assert_eq!(report["method2"]["skipped_count"], 26);
    assert_eq!(report["best_curve"]["source"], "method1");
    assert!(!report["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn invalid_flags_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    write_scores_file(&scores, &even_comb(0.6, 0.9, 5), &even_comb(0.1, 0.4, 5));

    // A one-point sweep cannot form a curve: rejected as input error.
    let output = cli()
        .args(["method1", "--scores"])
        .arg(&scores)
        .arg("--out")
        .arg(dir.path().join("out_a"))
        .args(["--sweep-steps", "1"])
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(2),
        "stderr: {}",
        stderr_of(&output)
    );
    assert!(!dir.path().join("out_a").exists());

    // An inverted knee range is rejected by argument parsing.
    let output = cli()
        .args(["method3", "--probs"])
        .arg(&scores)
        .arg("--out")
        .arg(dir.path().join("out_b"))
        .args(["--knee-range", "8:2"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    // A missing required flag is a usage error.
    let output = cli().args(["method1"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn direction_and_semantics_flags_reach_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    write_scores_file(&scores, &even_comb(0.5, 0.9, 12), &even_comb(0.1, 0.5, 12));

    let out = dir.path().join("out");
    let output = cli()
        .args(["method2", "--scores"])
        .arg(&scores)
        .arg("--out")
        .arg(&out)
        .args(["--direction", "desc", "--semantics", "conventional"])
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&output)
    );

    let report = read_report(&out);
    assert_eq!(report["method2"]["direction"], "desc");
    assert_eq!(report["method2"]["semantics"], "conventional");
    let iterations = report["method2"]["iterations"].as_array().unwrap();
    assert_eq!(iterations.len(), 91);
    assert_eq!(
        iterations.first().unwrap()["threshold"].as_f64(),
        Some(0.95)
    );
    assert_eq!(iterations.last().unwrap()["threshold"].as_f64(), Some(0.05));
}

#[test]
fn generated_dataset_flows_through_method3() {
    let dir = tempfile::tempdir().unwrap();
    let gen_dir = dir.path().join("gen");
    assert!(cli()
        .args(["generate", "--out"])
        .arg(&gen_dir)
        .status()
        .unwrap()
        .success());

    let out = dir.path().join("out");
    let output = cli()
        .args(["method3", "--probs"])
        .arg(gen_dir.join("probabilities.csv"))
        .arg("--out")
        .arg(&out)
        .args(["--max-plots", "3"])
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&output)
    );
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("294 of 500"), "stdout: {stdout}");

    let report = read_report(&out);
    assert_eq!(report["method3"]["statistics"]["high_count"], 294);
    assert_eq!(report["method3"]["statistics"]["high_fraction"], 0.588);
    let knees = std::fs::read_to_string(out.join("method3_knees.csv")).unwrap();
    assert_eq!(knees.lines().count(), 1 + 500);
    assert_eq!(count_artifacts(&out, "method3_sample", ".svg"), 3);
}
