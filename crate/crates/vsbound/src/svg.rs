//! Deterministic SVG rendering of 2D lattice polytopes: the polytope, an
//! optional rational dilation of it, and an optional highlighted witness
//! point, drawn over the integer grid. Output is a pure function of the
//! input, so identical configurations produce byte-identical files.

use crate::polytope::LatticePolytope;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SvgError {
    UnsupportedDimension(usize),
}

impl fmt::Display for SvgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvgError::UnsupportedDimension(d) => {
                write!(f, "svg rendering supports dimension 2 only, got {d}")
            }
        }
    }
}

impl std::error::Error for SvgError {}

/// One panel: a polytope with an optional dilation overlay and witness.
#[derive(Debug, Clone)]
pub struct PolytopePanel {
    pub title: String,
    pub polytope: LatticePolytope,
    pub dilation: Option<BigRational>,
    pub dilation_label: Option<String>,
    pub witness: Option<Vec<u32>>,
}

const CELL_AREA: f64 = 220.0;
const MARGIN: f64 = 36.0;
const PANEL_W: f64 = 300.0;
const PANEL_H: f64 = 320.0;

/// Renders the panels side by side into one SVG document.
pub fn render(panels: &[PolytopePanel]) -> Result<String, SvgError> {
    for p in panels {
        if p.polytope.dim() != 2 {
            return Err(SvgError::UnsupportedDimension(p.polytope.dim()));
        }
    }
    let width = PANEL_W * panels.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"##,
        fmt_f(width),
        fmt_f(PANEL_H),
        fmt_f(width),
        fmt_f(PANEL_H)
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, panel) in panels.iter().enumerate() {
        render_panel(&mut out, panel, i as f64 * PANEL_W);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn fmt_f(v: f64) -> String {
    format!("{v:.2}")
}

fn render_panel(out: &mut String, panel: &PolytopePanel, x_off: f64) {
    let gens = panel.polytope.generators();
    let max_coord = gens
        .iter()
        .flat_map(|g| g.iter())
        .copied()
        .max()
        .unwrap_or(1)
        .max(1);
    let cell = CELL_AREA / (max_coord as f64 + 1.0);
    let ox = x_off + MARGIN;
    let oy = MARGIN + 18.0 + CELL_AREA; // leave room for the title
    let px = |x: f64| ox + x * cell;
    let py = |y: f64| oy - y * cell;

    let _ = writeln!(out, "<g font-family=\"monospace\" font-size=\"13\">");
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" fill="#333">{}</text>"##,
        fmt_f(ox),
        fmt_f(MARGIN),
        xml_escape(&panel.title)
    );

    // Lattice grid.
    for i in 0..=(max_coord + 1) {
        let v = i as f64;
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1"/>"##,
            fmt_f(px(v)),
            fmt_f(py(0.0)),
            fmt_f(px(v)),
            fmt_f(py(max_coord as f64 + 1.0)),
            if i == 0 { "#888888" } else { "#dddddd" }
        );
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1"/>"##,
            fmt_f(px(0.0)),
            fmt_f(py(v)),
            fmt_f(px(max_coord as f64 + 1.0)),
            fmt_f(py(v)),
            if i == 0 { "#888888" } else { "#dddddd" }
        );
    }

    // The polytope: convex hull of the generators and the origin.
    let mut pts: Vec<(i64, i64)> = gens.iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
    pts.push((0, 0));
    let hull = convex_hull(&mut pts);
    let path: Vec<String> = hull
        .iter()
        .map(|&(x, y)| format!("{},{}", fmt_f(px(x as f64)), fmt_f(py(y as f64))))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.45" stroke="#3182bd" stroke-width="1.5"/>"##,
        path.join(" ")
    );

    // Optional dilation overlay.
    if let Some(k) = &panel.dilation {
        let kf = k.to_f64().expect("dilation factors are small rationals");
        let path: Vec<String> = hull
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt_f(px(x as f64 * kf)), fmt_f(py(y as f64 * kf))))
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#fc9272" fill-opacity="0.25" stroke="#de2d26" stroke-width="1.5" stroke-dasharray="5,3"/>"##,
            path.join(" ")
        );
        if let Some(label) = &panel.dilation_label {
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{}" fill="#de2d26">{}</text>"##,
                fmt_f(ox),
                fmt_f(oy + 24.0),
                xml_escape(label)
            );
        }
    }

    // Generator points (and the implicit origin).
    for g in gens {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="4" fill="#08519c"/>"##,
            fmt_f(px(g[0] as f64)),
            fmt_f(py(g[1] as f64))
        );
    }
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="3" fill="#555555"/>"##,
        fmt_f(px(0.0)),
        fmt_f(py(0.0))
    );

    // Witness lattice point.
    if let Some(w) = &panel.witness {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="7" fill="none" stroke="#31a354" stroke-width="2.5"/>"##,
            fmt_f(px(w[0] as f64)),
            fmt_f(py(w[1] as f64))
        );
    }
    out.push_str("</g>\n");
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Andrew's monotone chain; returns the hull in counterclockwise order.
/// Degenerate inputs (all collinear) come back as a segment or point.
fn convex_hull(pts: &mut Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.clone();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter() {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
