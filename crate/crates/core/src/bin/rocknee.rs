//! Command-line front end: runs the three threshold analyses over score and
//! probability files and writes deterministic artifacts.
//!
//! Exit codes: 0 success (warnings allowed), 2 input error, 3 insufficient
//! data, 4 internal invariant violation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rocknee::ingest::{generate_dataset, write_probabilities, GeneratorConfig};
use rocknee::report::{
    run_full, run_method1, run_method2, run_method3, AnalysisOptions, AnalysisReport, RunError,
};
use rocknee::roc::{Semantics, SweepDirection, DEFAULT_SWEEP_STEPS};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rocknee",
    version,
    about = "Threshold analysis for binary classifier scores and multi-class \
             probability vectors: ROC synthesis, iterative score redistribution, \
             and per-sample knee detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the ROC curve from a score file via the direct CDF sweep.
    Method1 {
        /// Score file (`score,label` CSV with pos/neg labels).
        #[arg(long)]
        scores: PathBuf,
        /// Output directory for artifacts.
        #[arg(long)]
        out: PathBuf,
        /// Thresholds per CDF sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
        sweep_steps: usize,
    },
    /// Sweep redistribution thresholds, derive one ROC curve per surviving
    /// iteration, select the best curve overall, and derive its knee
    /// threshold.
    Method2 {
        /// Score file (`score,label` CSV with pos/neg labels).
        #[arg(long)]
        scores: PathBuf,
        /// Output directory for artifacts.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Thresholds per CDF sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
        sweep_steps: usize,
        /// Knee-detector sensitivity on the best curve.
        #[arg(long, default_value_t = 1.0)]
        sensitivity: f64,
    },
    /// Per-sample knee detection over a probability file.
    Method3 {
        /// Probability file (`p0..p{k-1}[,labels]` CSV).
        #[arg(long)]
        probs: PathBuf,
        /// Output directory for artifacts.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        knees: KneeArgs,
    },
    /// Run all three methods and write one merged report.
    Full {
        /// Score file (`score,label` CSV with pos/neg labels).
        #[arg(long)]
        scores: PathBuf,
        /// Probability file (`p0..p{k-1}[,labels]` CSV).
        #[arg(long)]
        probs: PathBuf,
        /// Output directory for artifacts.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Thresholds per CDF sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
        sweep_steps: usize,
        /// Knee-detector sensitivity on the best curve.
        #[arg(long, default_value_t = 1.0)]
        sensitivity: f64,
        #[command(flatten)]
        knees: KneeArgs,
    },
    /// Generate a synthetic probability dataset with a planted fraction of
    /// high-confidence samples.
    Generate {
        /// Output directory; the dataset lands in `probabilities.csv`.
        #[arg(long)]
        out: PathBuf,
        /// Number of samples.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Probability-vector length.
        #[arg(long, default_value_t = 10)]
        classes: usize,
        /// Leading classes that receive real mass in high samples.
        #[arg(long, default_value_t = 4)]
        active_classes: usize,
        /// Fraction of samples planted with a dominant probability.
        #[arg(long, default_value_t = 0.588)]
        high_fraction: f64,
        /// Jitter applied to the mass splits (0 disables).
        #[arg(long, default_value_t = 0.3)]
        noise_scale: f64,
        /// RNG seed; fixed seed means bit-identical output.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Redistribution-sweep flags shared by `method2` and `full`.
#[derive(Args)]
struct SweepArgs {
    /// First redistribution threshold.
    #[arg(long, default_value_t = 0.05)]
    t_init: f64,
    /// Threshold increment.
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Last redistribution threshold (inclusive).
    #[arg(long, default_value_t = 0.95)]
    t_stop: f64,
    /// Order the thresholds are visited in.
    #[arg(long, value_enum, default_value_t = DirectionArg::Asc)]
    direction: DirectionArg,
    /// Confusion-quadrant bookkeeping used by redistribution.
    #[arg(long, value_enum, default_value_t = SemanticsArg::AsWritten)]
    semantics: SemanticsArg,
}

/// Per-sample knee flags shared by `method3` and `full`.
#[derive(Args)]
struct KneeArgs {
    /// Minimum max-probability for a sample to count as high-confidence.
    #[arg(long, default_value_t = 0.35)]
    prob_cutoff: f64,
    /// Inclusive knee-index range for the aggregate statistics, as LO:HI.
    #[arg(long, value_parser = parse_knee_range, default_value = "6:8")]
    knee_range: (usize, usize),
    /// Cap on emitted per-sample probability plots.
    #[arg(long, default_value_t = 20)]
    max_plots: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    /// Visit thresholds smallest-first.
    Asc,
    /// Visit thresholds largest-first.
    Desc,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    /// Both lists split at the threshold into the (>= t) and (< t) holders
    /// exactly as the redistribution procedure states them.
    AsWritten,
    /// Conventional confusion-quadrant bookkeeping.
    Conventional,
}

fn parse_knee_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| "expected LO:HI (e.g. 6:8)".to_string())?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|e| format!("invalid lower bound: {e}"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|e| format!("invalid upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range: {lo} > {hi}"));
    }
    Ok((lo, hi))
}

impl SweepArgs {
    fn apply(&self, options: &mut AnalysisOptions) {
        options.t_init = self.t_init;
        options.step = self.step;
        options.t_stop = self.t_stop;
        options.direction = match self.direction {
            DirectionArg::Asc => SweepDirection::Ascending,
            DirectionArg::Desc => SweepDirection::Descending,
        };
        options.semantics = match self.semantics {
            SemanticsArg::AsWritten => Semantics::AsWritten,
            SemanticsArg::Conventional => Semantics::Conventional,
        };
    }
}

impl KneeArgs {
    fn apply(&self, options: &mut AnalysisOptions) -> Result<(), RunError> {
        if !(0.0..=1.0).contains(&self.prob_cutoff) {
            return Err(RunError::Input(format!(
                "--prob-cutoff must be within [0,1], got {}",
                self.prob_cutoff
            )));
        }
        options.prob_cutoff = self.prob_cutoff;
        options.knee_lo = self.knee_range.0;
        options.knee_hi = self.knee_range.1;
        options.max_plots = self.max_plots;
        Ok(())
    }
}

fn validate_sensitivity(sensitivity: f64) -> Result<(), RunError> {
    if !sensitivity.is_finite() || sensitivity < 0.0 {
        return Err(RunError::Input(format!(
            "--sensitivity must be finite and >= 0, got {sensitivity}"
        )));
    }
    Ok(())
}

fn summarize(report: &AnalysisReport) {
    if let Some(m1) = &report.method1 {
        println!("method1: auc {:.6} over {} points", m1.auc, m1.point_count);
    }
    if let Some(m2) = &report.method2 {
        println!(
            "method2: {} iteration curves, {} skipped",
            m2.curve_count, m2.skipped_count
        );
    }
    if let Some(best) = &report.best_curve {
        match best.iteration_threshold {
            Some(t) => println!("best curve: method2 at t = {t} (auc {:.6})", best.auc),
            None => println!("best curve: method1 (auc {:.6})", best.auc),
        }
    }
    if let Some(t) = &report.threshold_result {
        println!("maximum threshold: {:.6}", t.threshold);
    } else if let Some(knee) = &report.knee {
        if !knee.found {
            println!("maximum threshold: none (no qualifying knee)");
        }
    }
    if let Some(m3) = &report.method3 {
        let s = &m3.statistics;
        println!(
            "method3: {} of {} samples at or above cutoff {} ({:.1}%)",
            s.high_count,
            m3.sample_count,
            s.prob_cutoff,
            100.0 * s.high_fraction
        );
        match s.in_range_fraction {
            Some(f) => println!(
                "method3: knee in [{}, {}] for {} of {} high samples ({:.1}%)",
                s.knee_lo,
                s.knee_hi,
                s.in_range_count,
                s.high_count,
                100.0 * f
            ),
            None => println!("method3: no samples reached the cutoff"),
        }
    }
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Method1 {
            scores,
            out,
            sweep_steps,
        } => {
            let options = AnalysisOptions {
                sweep_steps,
                ..AnalysisOptions::default()
            };
            summarize(&run_method1(&scores, &options, &out)?);
        }
        Command::Method2 {
            scores,
            out,
            sweep,
            sweep_steps,
            sensitivity,
        } => {
            validate_sensitivity(sensitivity)?;
            let mut options = AnalysisOptions {
                sweep_steps,
                sensitivity,
                ..AnalysisOptions::default()
            };
            sweep.apply(&mut options);
            summarize(&run_method2(&scores, &options, &out)?);
        }
        Command::Method3 { probs, out, knees } => {
            let mut options = AnalysisOptions::default();
            knees.apply(&mut options)?;
            summarize(&run_method3(&probs, &options, &out)?);
        }
        Command::Full {
            scores,
            probs,
            out,
            sweep,
            sweep_steps,
            sensitivity,
            knees,
        } => {
            validate_sensitivity(sensitivity)?;
            let mut options = AnalysisOptions {
                sweep_steps,
                sensitivity,
                ..AnalysisOptions::default()
            };
            sweep.apply(&mut options);
            knees.apply(&mut options)?;
            summarize(&run_full(&scores, &probs, &options, &out)?);
        }
        Command::Generate {
            out,
            samples,
            classes,
            active_classes,
            high_fraction,
            noise_scale,
            seed,
        } => {
            let config = GeneratorConfig {
                sample_count: samples,
                class_count: classes,
                active_classes,
                high_prob_fraction: high_fraction,
                noise_scale,
                seed,
            };
            let dataset = generate_dataset(&config)?;
            std::fs::create_dir_all(&out)
                .map_err(|e| RunError::Input(format!("{}: {e}", out.display())))?;
            let path = out.join("probabilities.csv");
            write_probabilities(&path, &dataset)?;
            println!(
                "generated {} samples across {} classes -> {}",
                dataset.samples.len(),
                dataset.class_count,
                path.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .format_target(false)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
