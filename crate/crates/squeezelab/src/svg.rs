//! Bare-bones SVG rendering. The CSV files are the real output; these are
//! for a quick look.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Copy)]
pub struct Axes<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub log_x: bool,
    pub log_y: bool,
}

fn transform(v: f64, log: bool) -> f64 {
    if log {
        v.log10()
    } else {
        v
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
            (l.min(v), h.max(v))
        });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn header(out: &mut String, axes: &Axes) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        axes.title
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 12.0,
        axes.x_label
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        axes.y_label
    );
}

fn tick_label(v: f64, log: bool) -> String {
    if log {
        format!("1e{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

pub fn line_plot(series: &[Series], axes: Axes) -> String {
    let xs = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| transform(p.0, axes.log_x)));
    let ys = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| transform(p.1, axes.log_y)));
    let (x0, x1) = bounds(xs);
    let (y0, y1) = bounds(ys);
    let px = |x: f64| MARGIN + (transform(x, axes.log_x) - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (transform(y, axes.log_y) - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut out = String::new();
    header(&mut out, &axes);
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    for (v, x) in [(x0, MARGIN), (x1, W - MARGIN)] {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            H - MARGIN + 16.0,
            tick_label(v, axes.log_x)
        );
    }
    for (v, y) in [(y0, H - MARGIN), (y1, MARGIN)] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            MARGIN - 4.0,
            y + 4.0,
            tick_label(v, axes.log_y)
        );
    }
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| {
                transform(*x, axes.log_x).is_finite() && transform(*y, axes.log_y).is_finite()
            })
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        for p in &path {
            let (cx, cy) = p.split_once(',').unwrap_or(("0", "0"));
            let _ = writeln!(
                out,
                r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>"#
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - MARGIN - 120.0,
            MARGIN + 16.0 + 16.0 * i as f64,
            s.label
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Grid of cells coloured from white (minimum) to dark blue (maximum).
/// `values[i][j]` belongs to row `ys[i]`, column `xs[j]`.
pub fn heatmap(xs: &[f64], ys: &[f64], values: &[Vec<f64>], axes: Axes) -> String {
    let (lo, hi) = bounds(values.iter().flatten().cloned());
    let mut out = String::new();
    header(&mut out, &axes);
    let cw = (W - 2.0 * MARGIN) / xs.len().max(1) as f64;
    let ch = (H - 2.0 * MARGIN) / ys.len().max(1) as f64;
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let f = if v.is_finite() {
                (v - lo) / (hi - lo)
            } else {
                0.0
            };
            let shade = |full: f64| (255.0 - f * (255.0 - full)).round() as u8;
            let _ = writeln!(
                out,
                r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#{:02x}{:02x}{:02x}"><title>{v:.6}</title></rect>"##,
                MARGIN + j as f64 * cw,
                H - MARGIN - (i + 1) as f64 * ch,
                cw,
                ch,
                shade(8.0),
                shade(48.0),
                shade(107.0)
            );
        }
    }
    let edge = |v: &[f64], log: bool| -> (String, String) {
        match (v.first(), v.last()) {
            (Some(&a), Some(&b)) => (
                tick_label(transform(a, log), log),
                tick_label(transform(b, log), log),
            ),
            _ => (String::new(), String::new()),
        }
    };
    let (xa, xb) = edge(xs, axes.log_x);
    let (ya, yb) = edge(ys, axes.log_y);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" text-anchor="middle">{xa}</text>"#,
        H - MARGIN + 16.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{xb}</text>"#,
        W - MARGIN,
        H - MARGIN + 16.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">{ya}</text>"#,
        MARGIN - 4.0,
        H - MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">{yb}</text>"#,
        MARGIN - 4.0,
        MARGIN + 8.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="end">range {lo:.4} .. {hi:.4}</text>"#,
        W - MARGIN,
        MARGIN - 8.0
    );
    out.push_str("</svg>\n");
    out
}
