//! SVG 1.1 diagram of a construction trace.
//!
//! Drawing only: the floating point used here never feeds back into a verdict.
//! Conics are traced by the rational parameterization through one of their
//! defining points (each line through it meets the conic once more), lines are
//! clipped to the frame, and points at infinity become labeled arrows at the
//! frame edge.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;
use straightedge::conics::Conic;
use straightedge::constructions::ConstructionTrace;
use straightedge::{Line, Point, Rational};
use thiserror::Error;

const SIZE: f64 = 800.0;
const SAMPLES: usize = 720;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn homogeneous(p: &Point) -> [f64; 3] {
    p.coords().clone().map(|c| f(&c))
}

/// Maps plane coordinates to the canvas with y pointing up.
struct Frame {
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    /// Fits the finite points, centered, with a 10% margin.
    fn fit(points: &[&Point]) -> Frame {
        let finite: Vec<(f64, f64)> = points
            .iter()
            .filter_map(|p| p.to_affine())
            .map(|(x, y)| (f(&x), f(&y)))
            .collect();
        let (mut x0, mut y0, mut x1, mut y1) = match finite.first() {
            Some(&(x, y)) => (x, y, x, y),
            None => (-1.0, -1.0, 1.0, 1.0),
        };
        for &(x, y) in &finite {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let (w, h) = (x1 - x0, y1 - y0);
        let margin = 0.1 * w.max(h).max(1.0);
        let side = w.max(h) + 2.0 * margin;
        Frame {
            min: (x0 - margin - (side - w - 2.0 * margin) / 2.0, y0 - margin - (side - h - 2.0 * margin) / 2.0),
            scale: SIZE / side,
        }
    }

    fn to_canvas(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min.0) * self.scale, SIZE - (y - self.min.1) * self.scale)
    }

    fn to_plane(&self, cx: f64, cy: f64) -> (f64, f64) {
        (cx / self.scale + self.min.0, (SIZE - cy) / self.scale + self.min.1)
    }
}

fn inside(c: (f64, f64), slack: f64) -> bool {
    (-slack..=SIZE + slack).contains(&c.0) && (-slack..=SIZE + slack).contains(&c.1)
}

/// Polylines of the conic, broken wherever it runs off to infinity or far off the canvas.
fn conic_paths(c: &Conic, frame: &Frame) -> Vec<Vec<(f64, f64)>> {
    let Some(p0) = c.defining_points().iter().find(|p| !p.is_at_infinity()) else {
        return Vec::new();
    };
    let k = c.coefficients().clone().map(|q| f(&q));
    let g = |v: [f64; 3]| {
        k[0] * v[0] * v[0] + k[1] * v[0] * v[1] + k[2] * v[1] * v[1] + k[3] * v[0] * v[2] + k[4] * v[1] * v[2] + k[5] * v[2] * v[2]
    };
    // Twice the polar form B(p, d).
    let polar2 = |p: [f64; 3], d: [f64; 3]| {
        2.0 * k[0] * p[0] * d[0]
            + k[1] * (p[0] * d[1] + p[1] * d[0])
            + 2.0 * k[2] * p[1] * d[1]
            + k[3] * (p[0] * d[2] + p[2] * d[0])
            + k[4] * (p[1] * d[2] + p[2] * d[1])
            + 2.0 * k[5] * p[2] * d[2]
    };
    let p = homogeneous(p0);
    let mut paths = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    let mut last_w: Option<f64> = None;
    for i in 0..=SAMPLES {
        let t = std::f64::consts::PI * i as f64 / SAMPLES as f64;
        let d = [t.cos(), t.sin(), 0.0];
        let (gd, b) = (g(d), polar2(p, d));
        let q = [gd * p[0] - b * d[0], gd * p[1] - b * d[1], gd * p[2] - b * d[2]];
        let finite = q[2].abs() > 1e-12 * (q[0].abs() + q[1].abs() + 1e-300);
        let crossed = last_w.is_some_and(|w| w * q[2] < 0.0);
        let c = finite.then(|| frame.to_canvas(q[0] / q[2], q[1] / q[2]));
        match c {
            Some(c) if !crossed && inside(c, SIZE) => current.push(c),
            _ => {
                if current.len() > 1 {
                    paths.push(std::mem::take(&mut current));
                }
                current.clear();
                if let Some(c) = c.filter(|c| inside(*c, SIZE)) {
                    current.push(c);
                }
            }
        }
        last_w = Some(q[2]);
    }
    if current.len() > 1 {
        paths.push(current);
    }
    paths
}

/// The part of `l` inside the canvas, if any.
fn clip_line(l: &Line, frame: &Frame) -> Option<((f64, f64), (f64, f64))> {
    let [a, b, c] = l.coords().clone().map(|q| f(&q));
    if a == 0.0 && b == 0.0 {
        return None;
    }
    let (x0, y1) = frame.to_plane(0.0, 0.0);
    let (x1, y0) = frame.to_plane(SIZE, SIZE);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for x in [x0, x1] {
            let y = -(a * x + c) / b;
            if (y0..=y1).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [y0, y1] {
            let x = -(b * y + c) / a;
            if (x0..=x1).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    match hits.as_slice() {
        [p, q, ..] => Some((frame.to_canvas(p.0, p.1), frame.to_canvas(q.0, q.1))),
        _ => None,
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn label_text(name: &str) -> String {
    name.replace('1', "₁").replace('2', "₂")
}

/// Renders the diagram. Identical traces give byte-identical documents.
pub fn render_svg(trace: &ConstructionTrace, inputs: &[Point; 10]) -> String {
    let labeled: Vec<(&str, &Point)> = trace
        .labeled_points()
        .into_iter()
        .filter(|(name, _)| *name != "G")
        .collect();
    let mut everything: Vec<&Point> = inputs.iter().collect();
    everything.extend(labeled.iter().map(|(_, p)| *p));
    let frame = &Frame::fit(&everything);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, xml_escape(&format!("{} ({})", trace.verdict(), trace.scheme)));
    let _ = writeln!(
        s,
        r##"<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#444"/></marker></defs>"##
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    let colors = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b"];
    for ((name, conic), color) in [("C1", &trace.c1), ("C2", &trace.c2), ("D1", &trace.d1), ("D2", &trace.d2)]
        .into_iter()
        .zip(colors)
    {
        for path in conic_paths(conic, frame) {
            let pts: Vec<String> = path.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                s,
                r#"<polyline class="conic" data-name="{name}" fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
                pts.join(" ")
            );
        }
    }
    for (name, line) in [("L_P", &trace.lp), ("L_Q", &trace.lq), ("L_R", &trace.lr)] {
        if let Some(((x1, y1), (x2, y2))) = clip_line(line, frame) {
            let _ = writeln!(
                s,
                r##"<line class="line" data-name="{name}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#d62728" stroke-width="1"/>"##
            );
        }
    }
    for (i, p) in inputs.iter().enumerate() {
        marker(&mut s, frame, p, &format!("K{}", i + 1), "input", "#000");
    }
    for (name, p) in labeled {
        marker(&mut s, frame, p, &label_text(name), "construction", "#d62728");
    }
    let _ = writeln!(s, "</svg>");
    s
}

fn marker(s: &mut String, frame: &Frame, p: &Point, name: &str, class: &str, color: &str) {
    let name = xml_escape(name);
    match p.to_affine() {
        Some((x, y)) => {
            let (cx, cy) = frame.to_canvas(f(&x), f(&y));
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{cx:.2}" cy="{cy:.2}" r="3.5" fill="{color}"/>"#
            );
            let _ = writeln!(
                s,
                r#"<text class="{class}-label" x="{:.2}" y="{:.2}" font-size="13" fill="{color}">{name}</text>"#,
                cx + 5.0,
                cy - 5.0
            );
        }
        None => {
            // Direction (x, y) from the canvas center to the frame edge.
            let [x, y, _] = homogeneous(p);
            let len = (x * x + y * y).sqrt();
            let (dx, dy) = (x / len, -y / len);
            let c = SIZE / 2.0;
            let reach = 0.45 * SIZE / dx.abs().max(dy.abs());
            let (ex, ey) = (c + dx * reach, c + dy * reach);
            let (sx, sy) = (ex - dx * 40.0, ey - dy * 40.0);
            let _ = writeln!(
                s,
                r##"<line class="{class} at-infinity" x1="{sx:.2}" y1="{sy:.2}" x2="{ex:.2}" y2="{ey:.2}" stroke="#444" stroke-width="1.5" marker-end="url(#arrow)"/>"##
            );
            let _ = writeln!(
                s,
                r#"<text class="{class}-label" x="{:.2}" y="{:.2}" font-size="13" fill="{color}">{name} (∞)</text>"#,
                sx - dy * 12.0,
                sy + dx * 12.0
            );
        }
    }
}

pub fn emit_svg(trace: &ConstructionTrace, inputs: &[Point; 10], path: &Path) -> Result<(), SvgError> {
    std::fs::write(path, render_svg(trace, inputs)).map_err(|source| SvgError::Io {
        path: path.display().to_string(),
        source,
    })
}
