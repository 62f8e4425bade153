//! Text renderings of HN polygons: CSV with exact abscissae and an SVG with a fixed layout.
//! Both are pure functions of the polygon and the digit count, so output is byte-stable.

use crate::degree::Slope;
use crate::engine::Polygon;
use std::fmt::Write;

/// Decimal rendering of a slope-valued height with trailing zeros removed.
pub fn decimal_trimmed(s: &Slope, digits: usize) -> String {
    trim(s.decimal(digits))
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `t,P` rows, one per vertex: `t` as an exact rational, `P` in decimal.
pub fn polygon_csv(p: &Polygon, digits: usize) -> String {
    let mut out = String::from("t,P\n");
    for v in &p.vertices {
        let _ = writeln!(out, "{},{}", v.t, decimal_trimmed(&v.height, digits));
    }
    out
}

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const MARGIN: f64 = 48.0;

/// A single polyline through the vertices on a fixed 480×320 canvas, with the abscissa axis,
/// a tick and an exact label at every vertex, and the extreme heights labelled on the left.
pub fn polygon_svg(p: &Polygon, digits: usize) -> String {
    let hs: Vec<f64> = p.vertices.iter().map(|v| v.height.to_f64()).collect();
    let lo = hs.iter().copied().fold(0.0_f64, f64::min);
    let hi = hs.iter().copied().fold(0.0_f64, f64::max);
    let span = if hi - lo > 0.0 { hi - lo } else { 1.0 };
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let x = |t: f64| MARGIN + t * plot_w;
    let y = |h: f64| HEIGHT - MARGIN - (h - lo) / span * plot_h;
    let t_end = p.vertices.last().map_or(1.0, |v| crate::rational::to_f64(&v.t)).max(1.0);
    let tx = |t: f64| x(t / t_end);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let y0 = y(0.0);
    let _ = writeln!(out, r#"<line x1="{:.3}" y1="{y0:.3}" x2="{:.3}" y2="{y0:.3}" stroke="gray" stroke-width="1"/>"#, x(0.0), x(1.0));
    let _ = writeln!(out, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-width="1"/>"#, x(0.0), y(lo), x(0.0), y(hi.max(lo + span)));
    for v in &p.vertices {
        let px = tx(crate::rational::to_f64(&v.t));
        let _ = writeln!(out, r#"<line x1="{px:.3}" y1="{:.3}" x2="{px:.3}" y2="{:.3}" stroke="gray" stroke-width="1"/>"#, y0 - 4.0, y0 + 4.0);
        let _ = writeln!(
            out,
            r#"<text x="{px:.3}" y="{:.3}" font-family="monospace" font-size="11" text-anchor="middle">{}</text>"#,
            HEIGHT - MARGIN / 2.0,
            v.t
        );
    }
    for (label_h, s) in extreme_labels(p, digits) {
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="11" text-anchor="end">{s}</text>"#,
            MARGIN - 6.0,
            y(label_h) + 4.0
        );
    }
    let pts: Vec<String> =
        p.vertices.iter().zip(&hs).map(|(v, h)| format!("{:.3},{:.3}", tx(crate::rational::to_f64(&v.t)), y(*h))).collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#, pts.join(" "));
    out.push_str("</svg>\n");
    out
}

fn extreme_labels(p: &Polygon, digits: usize) -> Vec<(f64, String)> {
    let mut best: Option<(f64, String)> = None;
    let mut worst: Option<(f64, String)> = None;
    for v in &p.vertices {
        let h = v.height.to_f64();
        if best.as_ref().map_or(true, |(b, _)| h > *b) {
            best = Some((h, decimal_trimmed(&v.height, digits)));
        }
        if worst.as_ref().map_or(true, |(w, _)| h < *w) {
            worst = Some((h, decimal_trimmed(&v.height, digits)));
        }
    }
    let mut out: Vec<(f64, String)> = best.into_iter().collect();
    if let Some(w) = worst {
        if out.first().map_or(true, |b| b.0 != w.0) {
            out.push(w);
        }
    }
    out
}
