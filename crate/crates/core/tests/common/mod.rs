//! Independent numerical oracles and fixture builders shared by the
//! integration suites. Everything here is implemented from first principles
//! — series expansions, quadrature, and direct geometry — so agreement with
//! the library is evidence, not tautology.
#![allow(dead_code)]

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Maclaurin-series error function: `erf(x) = 2/sqrt(pi) * sum_{n>=0}
/// (-1)^n x^(2n+1) / (n! (2n+1))`. Accurate to ~1e-11 absolute for
/// `|x| <= 4`; do not use beyond that (the alternating sum cancels badly).
pub fn maclaurin_erf(x: f64) -> f64 {
    assert!(x.abs() <= 4.0, "series oracle only trusted on |x| <= 4");
    let mut sum = 0.0;
    let mut power_over_factorial = x; // x^(2n+1) / n!
    let mut n = 0u32;
    loop {
        let term = power_over_factorial / (2 * n + 1) as f64;
        sum += if n.is_multiple_of(2) { term } else { -term };
        if term.abs() < 1e-20 * (1.0 + sum.abs()) || n > 200 {
            break;
        }
        n += 1;
        power_over_factorial *= x * x / n as f64;
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

/// Composite-Simpson integration of the standard normal density from -12 to
/// `(t - mu) / sigma`, i.e. an independent Gaussian CDF. Quadrature error is
/// far below 1e-9 at 20000 intervals; the truncated lower tail below -12
/// carries ~2e-33 mass.
pub fn simpson_gaussian_cdf(t: f64, mu: f64, sigma: f64) -> f64 {
    let z = ((t - mu) / sigma).min(12.0);
    let lo = -12.0;
    if z <= lo {
        return 0.0;
    }
    let n = 20_000usize; // even
    let h = (z - lo) / n as f64;
    let pdf = |u: f64| (-0.5 * u * u).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut sum = pdf(lo) + pdf(z);
    for i in 1..n {
        let u = lo + h * i as f64;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * pdf(u);
    }
    sum * h / 3.0
}

/// Maximum-perpendicular-distance-to-chord knee oracle: min-max normalize
/// both axes, draw the chord between the first and last normalized points,
/// and return the interior point farthest from it (ties to the lowest
/// index). `None` when no interior point clears 1e-9 — straight or flat
/// curves have no knee.
pub fn chord_knee_oracle(points: &[(f64, f64)]) -> Option<usize> {
    let n = points.len();
    assert!(n >= 3);
    let (x_min, x_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.0), hi.max(p.0))
        });
    let (y_min, y_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.1), hi.max(p.1))
        });
    if y_max == y_min || x_max == x_min {
        return None;
    }
    let norm = |p: (f64, f64)| {
        (
            (p.0 - x_min) / (x_max - x_min),
            (p.1 - y_min) / (y_max - y_min),
        )
    };
    let (x1, y1) = norm(points[0]);
    let (x2, y2) = norm(points[n - 1]);
    let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt();
    let mut best: Option<(usize, f64)> = None;
    for (i, &p) in points.iter().enumerate().take(n - 1).skip(1) {
        let (px, py) = norm(p);
        let dist = ((y2 - y1) * px - (x2 - x1) * py + x2 * y1 - y2 * x1).abs() / len;
        if best.map(|(_, d)| dist > d).unwrap_or(true) {
            best = Some((i, dist));
        }
    }
    best.and_then(|(i, d)| (d >= 1e-9).then_some(i))
}

/// Deterministic uniform draw in `[0, 1)` for fixture randomization,
/// independent of any library RNG plumbing.
pub struct FixtureRng(ChaCha8Rng);

impl FixtureRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

/// `n` evenly spaced values covering `[lo, hi]` inclusive.
pub fn even_comb(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// A strictly increasing, non-uniform x grid over [0, 1]: unit draws are
/// sorted and de-duplicated against exact collisions by construction of the
/// endpoints.
pub fn nonuniform_grid(rng: &mut FixtureRng, n: usize) -> Vec<f64> {
    assert!(n >= 3);
    let mut xs: Vec<f64> = (0..n - 2).map(|_| rng.range(0.01, 0.99)).collect();
    xs.push(0.0);
    xs.push(1.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    while xs.len() < n {
        // Collisions are astronomically unlikely; refill keeps n stable.
        let v = rng.range(0.01, 0.99);
        if !xs.contains(&v) {
            xs.push(v);
            xs.sort_by(f64::total_cmp);
        }
    }
    xs
}

/// The four monotone shape/direction families as power curves over a given
/// ascending grid in [0, 1]. `p > 1` controls the bend strength.
pub enum PowerFamily {
    ConcaveIncreasing,
    ConvexIncreasing,
    ConcaveDecreasing,
    ConvexDecreasing,
}

pub fn power_curve(family: &PowerFamily, p: f64, xs: &[f64]) -> Vec<(f64, f64)> {
    assert!(p > 1.0);
    xs.iter()
        .map(|&x| {
            let y = match family {
                PowerFamily::ConcaveIncreasing => x.powf(1.0 / p),
                PowerFamily::ConvexIncreasing => x.powf(p),
                PowerFamily::ConcaveDecreasing => 1.0 - x.powf(p),
                PowerFamily::ConvexDecreasing => (1.0 - x).powf(p),
            };
            (x, y)
        })
        .collect()
}
