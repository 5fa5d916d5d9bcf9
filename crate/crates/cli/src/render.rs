//! Plain-text, CSV and SVG writers.

use std::fmt::Write as _;

/// Fixed float format of machine-readable output: 17 significant digits,
/// lowercase exponent.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Column-oriented numeric table.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| float(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `p/q` with the smallest `q ≤ max_den` such that `|v − p/q| ≤ 1e−12`.
pub fn simple_rational(v: f64, max_den: u32) -> Option<(i64, u32)> {
    if !v.is_finite() {
        return None;
    }
    (1..=max_den).find_map(|q| {
        let p = (v * f64::from(q)).round();
        ((v - p / f64::from(q)).abs() <= 1e-12).then_some((p as i64, q))
    })
}

/// Decimal value, followed by the matching simple fraction if there is one,
/// e.g. `3.25 (13/4)`.
pub fn decimal_with_fraction(v: f64) -> String {
    match simple_rational(v, 48) {
        Some((p, 1)) => format!("{v} ({p})"),
        Some((p, q)) => format!("{v} ({p}/{q})"),
        None => format!("{v}"),
    }
}

/// Left-aligned text table with a header rule.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const COLORS: [&str; 6] = ["black", "red", "green", "blue", "orange", "purple"];

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Line plot of `series` (each a list of `(x, y)`) on shared linear axes.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, series: &[Vec<(f64, f64)>]) -> String {
    let points = series.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if !(y1 > y0) {
        y1 = y0 + 1.0;
    }
    let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * ph;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let (left, right, top, bottom) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT, MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
    let _ = writeln!(
        out,
        "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\"><line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\"/><line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{bottom}\"/></g>"
    );
    out.push_str("<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n");
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{bottom}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#444\"/><text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            bottom + 5.0,
            bottom + 20.0,
            tick_label(xv)
        );
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{left}\" y2=\"{py:.2}\" stroke=\"#444\"/><text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            left - 5.0,
            left - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        0.5 * (left + right),
        HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">{}</text>",
        0.5 * (top + bottom),
        0.5 * (top + bottom),
        escape(y_label)
    );
    out.push_str("</g>\n");
    for (k, s) in series.iter().enumerate() {
        let pts: Vec<String> = s.iter().map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y))).collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
            COLORS[k % COLORS.len()],
            pts.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}
