//! Minimal deterministic SVG line charts for ROC curves and sorted
//! probability profiles. Output is plain text with fixed-precision
//! coordinates, so identical inputs serialize byte-identically.

use crate::knee::KneePoint;
use crate::roc::RocCurve;
use std::fmt::Write as _;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

/// Maps unit-square data coordinates to pixel coordinates (y grows upward).
fn px(x: f64) -> f64 {
    MARGIN + x * (WIDTH - 2.0 * MARGIN)
}

fn py(y: f64) -> f64 {
    HEIGHT - MARGIN - y * (HEIGHT - 2.0 * MARGIN)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        MARGIN / 2.0 + 5.0,
        escape(title)
    );
}

fn axes(out: &mut String, x_label: &str, y_label: &str) {
    // Quarter gridlines, then the axis frame on top of them.
    for i in 1..4 {
        let t = i as f64 * 0.25;
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#dddddd" stroke-width="1"/>"##,
            px(t),
            py(0.0),
            px(t),
            py(1.0)
        );
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#dddddd" stroke-width="1"/>"##,
            px(0.0),
            py(t),
            px(1.0),
            py(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
        px(0.0),
        py(1.0),
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    for i in 0..=4 {
        let t = i as f64 * 0.25;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{t:.2}</text>"#,
            px(t),
            py(0.0) + 16.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{t:.2}</text>"#,
            px(0.0) - 6.0,
            py(t) + 3.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
        14.0,
        HEIGHT / 2.0,
        14.0,
        HEIGHT / 2.0,
        escape(y_label)
    );
}

fn polyline(out: &mut String, points: impl Iterator<Item = (f64, f64)>, color: &str) {
    let mut path = String::new();
    for (x, y) in points {
        if !path.is_empty() {
            path.push(' ');
        }
        let _ = write!(path, "{:.2},{:.2}", px(x), py(y));
    }
    let _ = writeln!(
        out,
        r#"<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
    );
}

fn knee_marker(out: &mut String, x: f64, y: f64, label: &str) {
    let _ = writeln!(
        out,
        r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="none" stroke="#cc3311" stroke-width="1.5"/>"##,
        px(x),
        py(y)
    );
    // Keep the annotation inside the frame near the right edge.
    let tx = (px(x) + 8.0).min(WIDTH - MARGIN - 4.0);
    let anchor = if px(x) > WIDTH - MARGIN - 90.0 {
        "end"
    } else {
        "start"
    };
    let _ = writeln!(
        out,
        r##"<text x="{tx:.2}" y="{:.2}" font-family="sans-serif" font-size="10" fill="#cc3311" text-anchor="{anchor}">{}</text>"##,
        py(y) - 6.0,
        escape(label)
    );
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders an ROC curve chart: unit-square frame, chance diagonal, the
/// curve as a polyline, and an optional knee marker in (fpr, tpr) space.
pub fn roc_chart(title: &str, curve: &RocCurve, knee: Option<(f64, f64)>) -> String {
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, "false positive rate", "true positive rate");
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999999" stroke-width="1" stroke-dasharray="4 3"/>"##,
        px(0.0),
        py(0.0),
        px(1.0),
        py(1.0)
    );
    polyline(
        &mut out,
        curve.points.iter().map(|p| (p.fpr, p.tpr)),
        "#0066cc",
    );
    if let Some((x, y)) = knee {
        knee_marker(&mut out, x, y, &format!("knee ({x:.3}, {y:.3})"));
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">AUC = {:.6}</text>"#,
        px(1.0) - 6.0,
        py(0.0) - 8.0,
        curve.auc
    );
    out.push_str("</svg>\n");
    out
}

/// Renders a sorted probability profile: y values plotted against a
/// normalized class-rank axis, with an optional knee marker at `knee.index`.
pub fn probability_chart(title: &str, ys: &[f64], knee: Option<&KneePoint>) -> String {
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, "class rank (normalized)", "probability");
    let n = ys.len();
    let denom = (n.max(2) - 1) as f64;
    polyline(
        &mut out,
        ys.iter().enumerate().map(|(i, &y)| (i as f64 / denom, y)),
        "#0066cc",
    );
    if let Some(k) = knee {
        let x = k.index as f64 / denom;
        knee_marker(&mut out, x, k.y, &format!("knee p = {:.3}", k.y));
    }
    out.push_str("</svg>\n");
    out
}
