use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use pillowfloer::curves::LiftedCurve;
use pillowfloer::pillowcase::{DeckElement, LiftPoint};

use crate::report::RunReport;

/// Pixels per radian.
const SCALE: f64 = 110.0;
const MARGIN: f64 = 40.0;
/// Vertices per polyline chunk tested against the domain.
const CHUNK: usize = 48;
const L0_COLOR: &str = "#1f4e9c";
const L1_COLORS: [&str; 5] = ["#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085"];

fn x(gamma: f64) -> f64 {
    MARGIN + gamma * SCALE
}

fn y(theta: f64) -> f64 {
    MARGIN + (TAU - theta) * SCALE
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Integers `m` with `[lo, hi] + period·m` meeting `[0, len]`.
fn shifts(lo: f64, hi: f64, period: f64, len: f64) -> std::ops::RangeInclusive<i64> {
    let first = ((-hi) / period).ceil() as i64;
    let last = ((len - lo) / period).floor() as i64;
    first..=last
}

/// Deck elements carrying some point of the box `[g0, g1] × [t0, t1]` into
/// the fundamental domain `[0, π] × [0, 2π]`.
fn copies(g0: f64, g1: f64, t0: f64, t1: f64) -> Vec<DeckElement> {
    let mut out = Vec::new();
    for sigma in [1i8, -1] {
        let (gl, gh, tl, th) = if sigma == 1 { (g0, g1, t0, t1) } else { (-g1, -g0, -t1, -t0) };
        for m in shifts(gl, gh, TAU, PI) {
            for n in shifts(tl, th, TAU, TAU) {
                out.push(DeckElement::new(m, n, sigma));
            }
        }
    }
    out
}

fn bounds(points: &[LiftPoint]) -> (f64, f64, f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY), |(a, b, c, d), p| {
        (a.min(p.gamma), b.max(p.gamma), c.min(p.theta), d.max(p.theta))
    })
}

fn path_data(points: impl Iterator<Item = LiftPoint>, close: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.enumerate() {
        let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, x(p.gamma), y(p.theta));
    }
    if close {
        d.push_str(" Z");
    }
    d
}

fn draw_curve(out: &mut String, c: &LiftedCurve, color: &str) {
    let _ = writeln!(out, "<g class=\"curve\" data-label=\"{}\" stroke=\"{color}\">", escape(&c.label));
    let v = &c.vertices;
    let mut start = 0;
    while start + 1 < v.len() {
        let end = (start + CHUNK).min(v.len() - 1);
        let chunk = &v[start..=end];
        let (g0, g1, t0, t1) = bounds(chunk);
        for h in copies(g0, g1, t0, t1) {
            let _ = writeln!(out, "<path d=\"{}\"/>", path_data(chunk.iter().map(|&p| h.apply(p)), false));
        }
        start = end;
    }
    let _ = writeln!(out, "</g>");
}

/// The pillowcase picture of a report: fundamental domain, corners, fold
/// line, both curves, generators and shaded bigons.
pub fn render(report: &RunReport) -> String {
    let (w, h) = (2.0 * MARGIN + PI * SCALE, 2.0 * MARGIN + TAU * SCALE);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let (x0, y0, x1, y1) = (x(0.0), y(TAU), x(PI), y(0.0));
    let _ = writeln!(
        s,
        "<defs><clipPath id=\"domain\"><rect x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\"/></clipPath></defs>",
        x1 - x0,
        y1 - y0
    );
    let _ = writeln!(
        s,
        "<rect x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#fbfbf8\" stroke=\"#333\"/>",
        x1 - x0,
        y1 - y0
    );
    let _ = writeln!(
        s,
        "<line class=\"fold\" x1=\"{x0:.2}\" y1=\"{:.2}\" x2=\"{x1:.2}\" y2=\"{:.2}\" stroke=\"#777\" stroke-dasharray=\"6 4\"/>",
        y(PI),
        y(PI)
    );

    let _ = writeln!(s, "<g clip-path=\"url(#domain)\">");
    let _ = writeln!(s, "<g class=\"bigons\" fill=\"#f1c40f\" fill-opacity=\"0.35\" stroke=\"#b7950b\" stroke-width=\"0.5\">");
    for (i, b) in report.geometry.bigons.iter().enumerate() {
        let (g0, g1, t0, t1) = bounds(b);
        for h in copies(g0, g1, t0, t1) {
            let _ = writeln!(s, "<path class=\"bigon\" data-index=\"{i}\" d=\"{}\"/>", path_data(b.iter().map(|&p| h.apply(p)), true));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g fill=\"none\" stroke-width=\"1.5\" stroke-linejoin=\"round\">");
    if let Some(l0) = &report.geometry.l0 {
        draw_curve(&mut s, l0, L0_COLOR);
    }
    for (i, c) in report.geometry.l1.iter().enumerate() {
        draw_curve(&mut s, c, L1_COLORS[i % L1_COLORS.len()]);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, "<g class=\"corners\" fill=\"#000\">");
    for (g, t) in [(0.0, 0.0), (PI, 0.0), (0.0, PI), (PI, PI), (0.0, TAU), (PI, TAU)] {
        let _ = writeln!(s, "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"7\" height=\"7\"/>", x(g) - 3.5, y(t) - 3.5);
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, "<g class=\"generators\">");
    for (i, c) in report.components.iter().enumerate() {
        let color = L1_COLORS[i % L1_COLORS.len()];
        for g in &c.generators {
            let (px, py) = (x(g.point[0]), y(g.point[1]));
            let _ = writeln!(s, "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"{color}\" stroke=\"#000\" stroke-width=\"0.5\"/>");
            let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", px + 5.0, py - 4.0, escape(&g.label));
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, "<text x=\"{x0:.2}\" y=\"{:.2}\">{}</text>", MARGIN - 14.0, escape(&format!("{} {}", report.command, report.input)));
    let _ = writeln!(s, "<text x=\"{x0:.2}\" y=\"{:.2}\">H = {}</text>", y1 + 24.0, report.total);
    let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"#777\">θ = π</text>", x1 + 4.0, y(PI) + 4.0);
    s.push_str("</svg>\n");
    s
}
