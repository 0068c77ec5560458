//! Bar and radar charts as standalone SVG 1.1 documents.
//!
//! Element classes are stable so charts can be checked structurally:
//! bar charts carry one `rect.bar` per candidate and a `line.threshold`;
//! radar charts carry one `line.axis` per metric and one `polygon.series`
//! per candidate.

use std::f64::consts::PI;
use std::fmt::Write as _;

use super::{ExperimentError, ScoreMatrix};

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn open_svg(out: &mut String, width: f64, height: f64) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\">"
    );
}

/// One bar per candidate for a single metric, on a fixed `[0, 1]` axis.
pub fn render_bar(matrix: &ScoreMatrix, metric: &str) -> Result<String, ExperimentError> {
    let col = matrix
        .metric_index(metric)
        .ok_or_else(|| ExperimentError::UnknownColumn(metric.to_owned()))?;
    let (width, height) = (640.0, 400.0);
    let (left, right, top, bottom) = (70.0, 20.0, 40.0, 70.0);
    let plot_w = width - left - right;
    let plot_h = height - top - bottom;
    let y_of = |v: f64| top + plot_h * (1.0 - v);

    let mut out = String::new();
    open_svg(&mut out, width, height);
    let _ = writeln!(
        out,
        "  <text class=\"title\" x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        width / 2.0,
        escape(metric)
    );
    out.push_str("  <g class=\"y-axis\">\n");
    let _ = writeln!(
        out,
        "    <line x1=\"{left:.2}\" y1=\"{top:.2}\" x2=\"{left:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>",
        top + plot_h
    );
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let y = y_of(tick);
        let _ = writeln!(
            out,
            "    <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{left:.2}\" y2=\"{y:.2}\" stroke=\"#333\"/>",
            left - 5.0
        );
        let _ = writeln!(
            out,
            "    <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"11\">{tick:.2}</text>",
            left - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        "    <text class=\"axis-label\" x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 {:.2})\">score</text>",
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );
    out.push_str("  </g>\n  <g class=\"x-axis\">\n");
    let _ = writeln!(
        out,
        "    <line x1=\"{left:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>",
        top + plot_h,
        left + plot_w,
        top + plot_h
    );
    let slot = plot_w / matrix.rows() as f64;
    for (i, candidate) in matrix.candidates().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\">{}</text>",
            left + slot * (i as f64 + 0.5),
            top + plot_h + 18.0,
            escape(candidate)
        );
    }
    let _ = writeln!(
        out,
        "    <text class=\"axis-label\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">candidate</text>",
        left + plot_w / 2.0,
        height - 16.0
    );
    out.push_str("  </g>\n  <g class=\"bars\">\n");
    for (i, candidate) in matrix.candidates().iter().enumerate() {
        let score = matrix.score(i, col);
        let bar_w = slot * 0.6;
        let x = left + slot * i as f64 + (slot - bar_w) / 2.0;
        let _ = writeln!(
            out,
            "    <rect class=\"bar\" x=\"{x:.2}\" y=\"{:.2}\" width=\"{bar_w:.2}\" height=\"{:.2}\" fill=\"{}\"><title>{}: {score:.3}</title></rect>",
            y_of(score),
            plot_h * score,
            color(i),
            escape(candidate)
        );
    }
    out.push_str("  </g>\n");
    let ty = y_of(matrix.thresholds()[col]);
    let _ = writeln!(
        out,
        "  <line class=\"threshold\" x1=\"{left:.2}\" y1=\"{ty:.2}\" x2=\"{:.2}\" y2=\"{ty:.2}\" stroke=\"#c00\" stroke-dasharray=\"6 4\"/>",
        left + plot_w
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertex positions of one radar polygon: axis `k` points at angle
/// `2 pi k / n` clockwise from 12 o'clock, scaled by the value.
pub fn radar_points(values: &[f64], center: (f64, f64), radius: f64) -> Vec<(f64, f64)> {
    let n = values.len() as f64;
    values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let angle = -PI / 2.0 + 2.0 * PI * k as f64 / n;
            (center.0 + radius * v * angle.cos(), center.1 + radius * v * angle.sin())
        })
        .collect()
}

fn points_attr(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{x:.3},{y:.3}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One axis per metric and one closed polygon per candidate. Needs at least
/// three metrics.
pub fn render_radar(matrix: &ScoreMatrix) -> Result<String, ExperimentError> {
    if matrix.cols() < 3 {
        return Err(ExperimentError::RadarNeedsThreeAxes(matrix.cols()));
    }
    let (width, legend_h) = (560.0, 22.0 * matrix.rows() as f64 + 20.0);
    let height = 520.0 + legend_h;
    let center = (width / 2.0, 270.0);
    let radius = 190.0;

    let mut out = String::new();
    open_svg(&mut out, width, height);
    out.push_str("  <g class=\"grid\">\n");
    for ring in [0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            out,
            "    <polygon class=\"ring\" points=\"{}\" fill=\"none\" stroke=\"#ccc\"/>",
            points_attr(&radar_points(&vec![ring; matrix.cols()], center, radius))
        );
    }
    out.push_str("  </g>\n  <g class=\"axes\">\n");
    let tips = radar_points(&vec![1.0; matrix.cols()], center, radius);
    let labels = radar_points(&vec![1.0; matrix.cols()], center, radius + 22.0);
    for ((metric, tip), label) in matrix.metrics().iter().zip(&tips).zip(&labels) {
        let _ = writeln!(
            out,
            "    <line class=\"axis\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#888\"/>",
            center.0, center.1, tip.0, tip.1
        );
        let _ = writeln!(
            out,
            "    <text class=\"axis-label\" x=\"{:.3}\" y=\"{:.3}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
            label.0,
            label.1 + 4.0,
            escape(metric)
        );
    }
    out.push_str("  </g>\n  <g class=\"series\">\n");
    for (i, candidate) in matrix.candidates().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <polygon class=\"series\" data-candidate=\"{}\" points=\"{}\" fill=\"{c}\" fill-opacity=\"0.15\" stroke=\"{c}\" stroke-width=\"2\"/>",
            escape(candidate),
            points_attr(&radar_points(matrix.row(i), center, radius)),
            c = color(i)
        );
    }
    out.push_str("  </g>\n  <g class=\"legend\">\n");
    for (i, candidate) in matrix.candidates().iter().enumerate() {
        let y = 520.0 + 22.0 * i as f64;
        let _ = writeln!(
            out,
            "    <rect class=\"swatch\" x=\"30\" y=\"{:.2}\" width=\"14\" height=\"14\" fill=\"{}\"/>",
            y - 11.0,
            color(i)
        );
        let _ = writeln!(
            out,
            "    <text class=\"legend\" x=\"52\" y=\"{y:.2}\" font-size=\"12\">{}</text>",
            escape(candidate)
        );
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}
