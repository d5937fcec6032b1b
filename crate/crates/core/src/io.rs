//! Deterministic flat-file emission: CSV, JSON reports, and optional SVG.
//!
//! CSVs are the data contract. Floats are printed with 17 significant digits
//! (`{:.16e}`), enough to round-trip an f64 exactly, so identical runs emit
//! byte-identical bodies. SVG renderings are a convenience layer generated
//! from the same numbers; nothing downstream may depend on them.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;

/// Render an f64 with 17 significant digits so it round-trips exactly.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Write a CSV with the given header and pre-formatted rows (LF line ends).
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let mut body = String::with_capacity(64 * (rows.len() + 1));
    body.push_str(header);
    body.push('\n');
    for row in rows {
        body.push_str(&row.join(","));
        body.push('\n');
    }
    write_text(path, &body)
}

/// Write a string to a file, creating parent directories as needed.
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, content)?;
    Ok(())
}

/// Serialize a serde value as pretty JSON with a trailing newline.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| crate::error::Error::Parse(format!("JSON serialization failed: {e}")))?;
    body.push('\n');
    write_text(path, &body)
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;

const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn axis_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn svg_header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" \
         viewBox=\"0 0 {SVG_W} {SVG_H}\">\n\
         <rect width=\"{SVG_W}\" height=\"{SVG_H}\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\">{title}</text>\n",
        SVG_W / 2.0
    )
}

fn svg_axes(xlabel: &str, ylabel: &str) -> String {
    let x1 = MARGIN_L;
    let x2 = SVG_W - MARGIN_R;
    let y1 = MARGIN_T;
    let y2 = SVG_H - MARGIN_B;
    format!(
        "<rect x=\"{x1}\" y=\"{y1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" \
         stroke=\"black\"/>\n\
         <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\">{xlabel}</text>\n\
         <text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\" transform=\"rotate(-90 18 {:.1})\">{ylabel}</text>\n",
        x2 - x1,
        y2 - y1,
        (x1 + x2) / 2.0,
        SVG_H - 14.0,
        (y1 + y2) / 2.0,
        (y1 + y2) / 2.0
    )
}

/// One named line/scatter series for `svg_line_plot`.
pub struct SvgSeries<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
    /// Draw a polyline through the points (otherwise markers only).
    pub line: bool,
}

/// A minimal static line/scatter plot; `loglog` maps both axes through log₁₀.
pub fn svg_line_plot(
    path: &Path,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[SvgSeries],
    loglog: bool,
) -> Result<()> {
    let map = |v: f64| if loglog { v.log10() } else { v };
    let (x_lo, x_hi) = axis_range(
        series
            .iter()
            .flat_map(|s| s.points.iter().map(|&(x, _)| map(x))),
    );
    let (y_lo, y_hi) = axis_range(
        series
            .iter()
            .flat_map(|s| s.points.iter().map(|&(_, y)| map(y))),
    );
    let px = |x: f64| MARGIN_L + (map(x) - x_lo) / (x_hi - x_lo) * (SVG_W - MARGIN_L - MARGIN_R);
    let py = |y: f64| SVG_H - MARGIN_B - (map(y) - y_lo) / (y_hi - y_lo) * (SVG_H - MARGIN_T - MARGIN_B);

    let mut svg = svg_header(title);
    svg.push_str(&svg_axes(xlabel, ylabel));
    for (si, s) in series.iter().enumerate() {
        let color = SERIES_COLORS[si % SERIES_COLORS.len()];
        let visible: Vec<(f64, f64)> = s
            .points
            .iter()
            .copied()
            .filter(|&(x, y)| {
                map(x).is_finite() && map(y).is_finite()
            })
            .collect();
        if s.line && visible.len() > 1 {
            let mut d = String::new();
            for (i, &(x, y)) in visible.iter().enumerate() {
                let _ = write!(d, "{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, px(x), py(y));
            }
            let _ = writeln!(
                svg,
                "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                d.trim_end()
            );
        }
        for &(x, y) in &visible {
            let _ = writeln!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>",
                px(x),
                py(y)
            );
        }
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             fill=\"{color}\">{}</text>",
            SVG_W - MARGIN_R - 150.0,
            MARGIN_T + 18.0 + 16.0 * si as f64,
            s.label
        );
    }
    svg.push_str("</svg>\n");
    write_text(path, &svg)
}

/// Diverging blue–white–red color for t ∈ [−1, 1].
fn diverging_color(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let (r, g, b) = if t < 0.0 {
        // blue → white
        let u = 1.0 + t;
        (59.0 + u * 196.0, 76.0 + u * 179.0, 192.0 + u * 63.0)
    } else {
        // white → red
        let u = 1.0 - t;
        (180.0 + u * 75.0, 4.0 + u * 251.0, 38.0 + u * 217.0)
    };
    format!("rgb({},{},{})", r as u8, g as u8, b as u8)
}

/// A static heatmap over a rectangular grid; NaN cells are drawn grey.
/// `values[i][j]` corresponds to `(xs[j], ys[i])`. Overlay curves are drawn
/// on top as black lines.
pub fn svg_heatmap(
    path: &Path,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[Vec<f64>],
    overlays: &[(&str, Vec<(f64, f64)>)],
) -> Result<()> {
    let scale = values
        .iter()
        .flatten()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let (x_lo, x_hi) = axis_range(xs.iter().copied());
    let (y_lo, y_hi) = axis_range(ys.iter().copied());
    let px = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (SVG_W - MARGIN_L - MARGIN_R);
    let py = |y: f64| SVG_H - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (SVG_H - MARGIN_T - MARGIN_B);
    let cell_w = (SVG_W - MARGIN_L - MARGIN_R) / xs.len().max(1) as f64;
    let cell_h = (SVG_H - MARGIN_T - MARGIN_B) / ys.len().max(1) as f64;

    let mut svg = svg_header(title);
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let color = if v.is_finite() {
                diverging_color(v / scale)
            } else {
                "rgb(160,160,160)".to_string()
            };
            let _ = writeln!(
                svg,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{color}\"/>",
                px(xs[j]) - cell_w / 2.0,
                py(ys[i]) - cell_h / 2.0,
                cell_w,
                cell_h
            );
        }
    }
    for (oi, (label, curve)) in overlays.iter().enumerate() {
        let mut d = String::new();
        let mut pen_up = true;
        for &(x, y) in curve {
            if x.is_finite() && y.is_finite() {
                let _ = write!(d, "{}{:.2},{:.2} ", if pen_up { "M" } else { "L" }, px(x), py(y));
                pen_up = false;
            } else {
                pen_up = true;
            }
        }
        if !d.is_empty() {
            let _ = writeln!(
                svg,
                "<path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" \
                 stroke-dasharray=\"{}\"/>",
                d.trim_end(),
                if oi % 2 == 0 { "none" } else { "6,3" }
            );
        }
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>",
            SVG_W - MARGIN_R - 150.0,
            MARGIN_T + 18.0 + 16.0 * oi as f64
        );
    }
    svg.push_str(&svg_axes(xlabel, ylabel));
    svg.push_str("</svg>\n");
    write_text(path, &svg)
}
