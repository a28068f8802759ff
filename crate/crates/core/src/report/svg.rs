//! Static line charts: 800x600 viewBox, linear axes, legend in the top-right corner.

use std::fmt::Write as _;

use super::curve::RateCurve;
use super::format::format_g_with;

const LEFT: f64 = 80.0;
const RIGHT: f64 = 770.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 530.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const DASHES: [&str; 6] = ["", "6 4", "2 3", "10 3 2 3", "", "6 4"];

/// Labels and title for a chart.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartLabels {
    pub title: String,
    pub x: String,
    pub y: String,
}

/// Tick step of the form `{1, 2, 5} * 10^k` giving at most `max_ticks` intervals.
fn nice_step(span: f64, max_ticks: usize) -> f64 {
    let raw = span / max_ticks as f64;
    let magnitude = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|&s| s >= raw * (1.0 - 1e-9))
        .unwrap_or(10.0 * magnitude)
}

fn ticks(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step - 1e-9).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn coord(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0" } else { s }.to_string()
}

/// Renders the curves; identical input gives byte-identical output.
pub fn render_svg(curves: &[RateCurve], labels: &ChartLabels) -> String {
    let finite = |v: f64| v.is_finite();
    let xs = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.x))
        .filter(|v| finite(*v));
    let ys = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.rate.value))
        .filter(|v| finite(*v));
    let (mut x_lo, mut x_hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !(x_lo <= x_hi) {
        (x_lo, x_hi) = (0.0, 1.0);
    }
    if x_hi - x_lo <= 0.0 {
        x_hi = x_lo + 1.0;
    }
    let y_max = ys.fold(0.0f64, f64::max);
    let y_step = nice_step(if y_max > 0.0 { y_max } else { 1.0 }, 8);
    let y_hi = (y_max / y_step).ceil().max(1.0) * y_step;
    let y_lo = 0.0f64.min(
        curves
            .iter()
            .flat_map(|c| c.points.iter().map(|p| p.rate.value))
            .filter(|v| finite(*v))
            .fold(0.0, f64::min),
    );
    let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (RIGHT - LEFT);
    let py = |y: f64| BOTTOM - (y - y_lo) / (y_hi - y_lo) * (BOTTOM - TOP);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        coord((LEFT + RIGHT) / 2.0),
        escape(&labels.title)
    );

    // Grid and ticks.
    let _ = writeln!(s, r##"<g stroke="#dddddd" stroke-width="1">"##);
    let x_step = nice_step(x_hi - x_lo, 10);
    let x_ticks = ticks(x_lo, x_hi, x_step);
    let y_ticks = ticks(y_lo, y_hi, y_step);
    for &t in &x_ticks {
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            coord(px(t)),
            coord(TOP),
            coord(BOTTOM)
        );
    }
    for &t in &y_ticks {
        let _ = writeln!(
            s,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            coord(py(t)),
            coord(LEFT),
            coord(RIGHT)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        coord(LEFT),
        coord(TOP),
        coord(RIGHT - LEFT),
        coord(BOTTOM - TOP)
    );
    for &t in &x_ticks {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            coord(px(t)),
            coord(BOTTOM + 18.0),
            format_g_with(t, 6)
        );
    }
    for &t in &y_ticks {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            coord(LEFT - 8.0),
            coord(py(t) + 4.0),
            format_g_with(t, 6)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        coord((LEFT + RIGHT) / 2.0),
        coord(BOTTOM + 44.0),
        escape(&labels.x)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        coord((TOP + BOTTOM) / 2.0),
        escape(&labels.y)
    );

    // One path per curve.
    for (i, curve) in curves.iter().enumerate() {
        let mut d = String::new();
        let mut pen_down = false;
        for p in &curve.points {
            if !(p.x.is_finite() && p.rate.value.is_finite()) {
                pen_down = false;
                continue;
            }
            let _ = write!(
                d,
                "{}{},{} ",
                if pen_down { "L" } else { "M" },
                coord(px(p.x)),
                coord(py(p.rate.value))
            );
            pen_down = true;
        }
        let dash = DASHES[i % DASHES.len()];
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            s,
            r#"<path class="curve" data-label="{}" d="{}" fill="none" stroke="{}" stroke-width="2"{}/>"#,
            escape(&curve.label),
            d.trim_end(),
            PALETTE[i % PALETTE.len()],
            dash_attr
        );
    }

    // Legend, top-right inside the plot area.
    let row_h = 20.0;
    let box_w = 150.0;
    let box_h = 12.0 + row_h * curves.len() as f64;
    let bx = RIGHT - box_w - 10.0;
    let by = TOP + 10.0;
    let _ = writeln!(s, r#"<g class="legend">"#);
    let _ = writeln!(
        s,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black"/>"#,
        coord(bx),
        coord(by),
        coord(box_w),
        coord(box_h)
    );
    for (i, curve) in curves.iter().enumerate() {
        let y = by + 16.0 + row_h * i as f64;
        let dash = DASHES[i % DASHES.len()];
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            s,
            r#"<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="{color}" stroke-width="2"{dash_attr}/>"#,
            x1 = coord(bx + 10.0),
            x2 = coord(bx + 40.0),
            y = coord(y),
            color = PALETTE[i % PALETTE.len()],
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">{}</text>"#,
            coord(bx + 48.0),
            coord(y + 4.0),
            escape(&curve.label)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
