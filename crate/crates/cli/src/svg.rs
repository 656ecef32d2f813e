//! Deterministic SVG rendering of laid-out constructions.
//!
//! The construction is first laid out (which re-verifies every declared
//! segment, right angle, and chain numerically), then drawn in world
//! units with the y axis flipped for screen orientation. Coordinates are
//! written with seven decimals so lengths measured back out of the file
//! agree with the symbolic values to well under 1e-6. Every `<line>`
//! carries `data-from`/`data-to` attributes naming its endpoints, so the
//! drawing stays machine-checkable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gasing_core::construction::{Construction, ConstructionError};
use gasing_core::trigexpr::Assignment;

struct Canvas {
    /// World coordinates, y already flipped.
    coords: BTreeMap<String, (f64, f64)>,
    unit: f64,
}

impl Canvas {
    fn at(&self, name: &str) -> (f64, f64) {
        self.coords[name]
    }
}

fn fmt_coord(v: f64) -> String {
    // Avoid the negative-zero rendering so output is canonical.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.7}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render the construction at the given assignment.
pub fn render(
    figure_name: &str,
    construction: &Construction,
    asg: &Assignment,
) -> Result<String, ConstructionError> {
    let raw = construction.layout(asg)?;

    let ys: Vec<f64> = raw.values().map(|&(_, y)| y).collect();
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let coords: BTreeMap<String, (f64, f64)> = raw
        .into_iter()
        .map(|(name, (x, y))| (name, (x, max_y - y)))
        .collect();

    let min_x = coords.values().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = coords.values().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = coords.values().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = coords.values().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let width = (max_x - min_x).max(1e-6);
    let height = (max_y - min_y).max(1e-6);
    let unit = width.max(height);
    let margin = 0.08 * unit;

    let canvas = Canvas { coords, unit };
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"560\">",
        fmt_coord(min_x - margin),
        fmt_coord(min_y - margin),
        fmt_coord(width + 2.0 * margin),
        fmt_coord(height + 2.0 * margin),
    )
    .unwrap();
    writeln!(out, "  <title>{}</title>", escape(figure_name)).unwrap();
    writeln!(
        out,
        "  <g fill=\"none\" stroke=\"#1a1a2e\" stroke-width=\"{}\" \
         stroke-linecap=\"round\">",
        fmt_coord(unit * 0.004),
    )
    .unwrap();
    for ((p, q), _) in construction.segments() {
        let (x1, y1) = canvas.at(p);
        let (x2, y2) = canvas.at(q);
        writeln!(
            out,
            "    <line data-from=\"{p}\" data-to=\"{q}\" x1=\"{}\" y1=\"{}\" \
             x2=\"{}\" y2=\"{}\"/>",
            fmt_coord(x1),
            fmt_coord(y1),
            fmt_coord(x2),
            fmt_coord(y2),
        )
        .unwrap();
    }
    out.push_str(&right_angle_marks(construction, &canvas));
    writeln!(out, "  </g>").unwrap();
    out.push_str(&point_and_angle_labels(construction, &canvas));
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// Small square tucked into each marked right-angle corner.
fn right_angle_marks(construction: &Construction, canvas: &Canvas) -> String {
    let side = canvas.unit * 0.035;
    let mut out = String::new();
    for (vertex, p, q) in construction.right_angles() {
        let v = canvas.at(vertex);
        let Some(u1) = unit_toward(v, canvas.at(p)) else {
            continue;
        };
        let Some(u2) = unit_toward(v, canvas.at(q)) else {
            continue;
        };
        let a = (v.0 + side * u1.0, v.1 + side * u1.1);
        let b = (a.0 + side * u2.0, a.1 + side * u2.1);
        let c = (v.0 + side * u2.0, v.1 + side * u2.1);
        writeln!(
            out,
            "    <polyline points=\"{},{} {},{} {},{}\"/>",
            fmt_coord(a.0),
            fmt_coord(a.1),
            fmt_coord(b.0),
            fmt_coord(b.1),
            fmt_coord(c.0),
            fmt_coord(c.1),
        )
        .unwrap();
    }
    out
}

/// Point names beside each point, angle labels along the bisector of
/// each marked angle.
fn point_and_angle_labels(construction: &Construction, canvas: &Canvas) -> String {
    let font = canvas.unit * 0.045;
    let mut out = String::new();
    writeln!(
        out,
        "  <g fill=\"#1a1a2e\" font-family=\"sans-serif\" font-size=\"{}\">",
        fmt_coord(font),
    )
    .unwrap();
    let n = construction.points().count().max(1) as f64;
    let (cx, cy) = construction
        .points()
        .map(|(name, _)| canvas.at(name))
        .fold((0.0, 0.0), |acc, p| (acc.0 + p.0 / n, acc.1 + p.1 / n));
    for (name, _) in construction.points() {
        let (x, y) = canvas.at(name);
        // Push the label outward from the centroid so it clears the lines.
        let offset = unit_toward((cx, cy), (x, y)).unwrap_or((0.0, -1.0));
        writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            fmt_coord(x + offset.0 * font * 0.9),
            fmt_coord(y + offset.1 * font * 0.9 + font * 0.35),
            escape(name),
        )
        .unwrap();
    }
    for ((vertex, p, q), label) in construction.angle_marks() {
        let v = canvas.at(vertex);
        let (Some(u1), Some(u2)) = (
            unit_toward(v, canvas.at(p)),
            unit_toward(v, canvas.at(q)),
        ) else {
            continue;
        };
        let bisector = unit_toward((0.0, 0.0), (u1.0 + u2.0, u1.1 + u2.1)).unwrap_or(u1);
        writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-style=\"italic\">{}</text>",
            fmt_coord(v.0 + bisector.0 * font * 2.2),
            fmt_coord(v.1 + bisector.1 * font * 2.2 + font * 0.35),
            escape(label),
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    out
}

fn unit_toward(from: (f64, f64), to: (f64, f64)) -> Option<(f64, f64)> {
    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
    let len = (dx * dx + dy * dy).sqrt();
    if len < 1e-12 {
        None
    } else {
        Some((dx / len, dy / len))
    }
}
