//! CSV, JSON, and SVG emission. Everything here is deterministic: fixed
//! formats, fixed digit counts, LF line endings.

use std::fs;
use std::io::Write;
use std::path::Path;

use presslab_core::discgas::PressureCurve;

/// 12 significant digits, scientific notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

/// Comma-separated rows with a header, LF endings, UTF-8.
pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Write to the path, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Static line plot: one polyline per curve, axes, and a zero-pressure
/// guide line when zero is inside the range.
pub fn render_svg(curves: &[PressureCurve], x_label: &str, y_label: &str) -> String {
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for c in curves {
        for &(a, p) in &c.points {
            x_lo = x_lo.min(a);
            x_hi = x_hi.max(a);
            y_lo = y_lo.min(p);
            y_hi = y_hi.max(p);
        }
    }
    if !x_lo.is_finite() || x_lo == x_hi {
        x_lo -= 0.5;
        x_hi = x_lo + 1.0;
    }
    if !y_lo.is_finite() || y_lo == y_hi {
        y_lo -= 0.5;
        y_hi = y_lo + 1.0;
    }
    let pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = move |a: f64| MARGIN_LEFT + (a - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = move |p: f64| MARGIN_TOP + (y_hi - p) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes
    let x0 = sx(x_lo);
    let x1 = sx(x_hi);
    let y0 = sy(y_lo);
    let y1 = sy(y_hi);
    s.push_str(&format!(
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));
    s.push_str(&format!(
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));

    // zero-pressure guide
    if y_lo < 0.0 && y_hi > 0.0 {
        let yz = sy(0.0);
        s.push_str(&format!(
            "<line x1=\"{x0:.2}\" y1=\"{yz:.2}\" x2=\"{x1:.2}\" y2=\"{yz:.2}\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n"
        ));
    }

    // ticks
    for i in 0..=5 {
        let a = x_lo + (x_hi - x_lo) * i as f64 / 5.0;
        let px = sx(a);
        s.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            y0 + 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{a:.3}</text>\n",
            y0 + 20.0
        ));
        let p = y_lo + (y_hi - y_lo) * i as f64 / 5.0;
        let py = sy(p);
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{x0:.2}\" y2=\"{py:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            x0 - 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{p:.3}</text>\n",
            x0 - 8.0,
            py + 4.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        (x0 + x1) / 2.0,
        SVG_HEIGHT - 10.0,
        xml_escape(x_label)
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        xml_escape(y_label)
    ));

    // series
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(a, p)| format!("{:.2},{:.2}", sx(a), sy(p)))
            .collect();
        s.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"{color}\">beta*sigma = {}</text>\n",
            x1 - 150.0,
            MARGIN_TOP + 16.0 * (i + 1) as f64,
            c.beta_sigma
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
