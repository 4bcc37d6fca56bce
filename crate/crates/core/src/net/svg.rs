//! Upper half-plane drawings of a set of net triangles.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use super::{NetError, NetNode};
use crate::chf::ExtendedReal;

const PALETTE: [&str; 6] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948",
];

/// The visible region `[x_min, x_max] × [0, height]` and its pixel width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub height: f64,
    pub pixel_width: f64,
    pub fill_by_depth: bool,
}

impl Default for SvgWindow {
    fn default() -> Self {
        SvgWindow {
            x_min: -3.0,
            x_max: 2.0,
            height: 2.0,
            pixel_width: 800.0,
            fill_by_depth: false,
        }
    }
}

struct Canvas {
    w: SvgWindow,
    scale: f64,
    bottom: f64,
}

fn num(x: f64) -> String {
    let s = format!("{:.3}", x);
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

impl Canvas {
    fn new(w: SvgWindow) -> Self {
        let scale = w.pixel_width / (w.x_max - w.x_min);
        Canvas {
            w,
            scale,
            bottom: w.height * scale,
        }
    }

    fn x(&self, t: f64) -> String {
        num((t - self.w.x_min) * self.scale)
    }

    fn radius(&self, p: f64, q: f64) -> String {
        num((q - p).abs() / 2.0 * self.scale)
    }

    /// Path segment of the geodesic `[p, q]` starting at `p`.
    fn geodesic(&self, p: &ExtendedReal, q: &ExtendedReal) -> String {
        let h = num(self.bottom);
        match (p.to_f64(), q.to_f64()) {
            (Some(a), None) => format!("M{} {h} L{} 0", self.x(a), self.x(a)),
            (None, Some(b)) => format!("M{} 0 L{} {h}", self.x(b), self.x(b)),
            (Some(a), Some(b)) => {
                let sweep = if a < b { 1 } else { 0 };
                let r = self.radius(a, b);
                format!("M{} {h} A{r} {r} 0 0 {sweep} {} {h}", self.x(a), self.x(b))
            }
            (None, None) => String::new(),
        }
    }

    /// Closed boundary of a triangle with vertices in canonical order.
    fn region(&self, v: &[ExtendedReal; 3]) -> String {
        let h = num(self.bottom);
        let f: Vec<f64> = v.iter().filter_map(|p| p.to_f64()).collect();
        if f.len() == 2 {
            let (a, b) = (f[0], f[1]);
            let r = self.radius(a, b);
            format!(
                "M{xa} {h} L{xa} 0 L{xb} 0 L{xb} {h} A{r} {r} 0 0 0 {xa} {h} Z",
                xa = self.x(a),
                xb = self.x(b)
            )
        } else {
            let (a, b, c) = (f[0], f[1], f[2]);
            format!(
                "M{} {h} A{r1} {r1} 0 0 1 {} {h} A{r2} {r2} 0 0 0 {} {h} A{r3} {r3} 0 0 0 {} {h} Z",
                self.x(a),
                self.x(c),
                self.x(b),
                self.x(a),
                r1 = self.radius(a, c),
                r2 = self.radius(b, c),
                r3 = self.radius(a, b)
            )
        }
    }
}

/// Renders geodesic sides as semicircles and vertical rays, optionally
/// filling triangles by depth. Output depends only on the set of triangles.
pub fn render_svg(nodes: &[NetNode], window: &SvgWindow) -> String {
    let c = Canvas::new(*window);
    let (width, height) = (num(window.pixel_width), num(c.bottom));
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );

    let mut sorted: Vec<&NetNode> = nodes.iter().collect();
    sorted.sort_by(|a, b| {
        a.triangle
            .canonical_cmp(&b.triangle)
            .then(a.depth.cmp(&b.depth))
    });

    if window.fill_by_depth {
        let _ = writeln!(out, r#"<g fill-opacity="0.35" stroke="none">"#);
        for n in &sorted {
            let color = PALETTE[n.depth % PALETTE.len()];
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="{color}"/>"#,
                c.region(&n.triangle.vertices)
            );
        }
        let _ = writeln!(out, "</g>");
    }

    let mut sides = Vec::new();
    for n in &sorted {
        let v = &n.triangle.vertices;
        for (p, q) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
            let (p, q) = if p.line_cmp(&q) == Ordering::Greater {
                (q, p)
            } else {
                (p, q)
            };
            sides.push(c.geodesic(&p, &q));
        }
    }
    sides.sort();
    sides.dedup();
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1">"#);
    for d in sides {
        let _ = writeln!(out, r#"<path d="{d}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

pub fn write_svg(nodes: &[NetNode], window: &SvgWindow, path: &Path) -> Result<(), NetError> {
    std::fs::write(path, render_svg(nodes, window)).map_err(|source| NetError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{generate_net, initial_triangle, NetConfig};
    use crate::ribbon_graph::{builtin, EdgeLabeling};

    fn paths(svg: &str) -> Vec<&str> {
        svg.lines().filter(|l| l.starts_with("<path")).collect()
    }

    #[test]
    fn t0_has_two_rays_and_one_arc() {
        let g = builtin("theta").unwrap();
        let z = EdgeLabeling::zero(&g);
        let svg = render_svg(&[initial_triangle(&g, &z, g.base())], &SvgWindow::default());
        // window [-3, 2] at 160 px per unit
        assert_eq!(
            paths(&svg),
            [
                r#"<path d="M320.000 320.000 A80.000 80.000 0 0 1 480.000 320.000"/>"#,
                r#"<path d="M320.000 320.000 L320.000 0"/>"#,
                r#"<path d="M480.000 320.000 L480.000 0"/>"#,
            ]
        );
    }

    #[test]
    fn empty_canvas_is_valid() {
        let svg = render_svg(&[], &SvgWindow::default());
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(paths(&svg).is_empty());
    }

    #[test]
    fn output_is_byte_stable() {
        let g = builtin("theta").unwrap();
        let z = EdgeLabeling::zero(&g);
        let w = SvgWindow {
            fill_by_depth: true,
            ..SvgWindow::default()
        };
        let a = generate_net(&g, &z, g.base(), 3, &NetConfig::default()).unwrap();
        let b = generate_net(&g, &z, g.base(), 3, &NetConfig::default()).unwrap();
        let mut reversed = b.nodes.clone();
        reversed.reverse();
        assert_eq!(render_svg(&a.nodes, &w), render_svg(&reversed, &w));
    }

    #[test]
    fn unwritable_path_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let err = write_svg(
            &[],
            &SvgWindow::default(),
            &dir.path().join("missing/x.svg"),
        )
        .unwrap_err();
        assert!(matches!(err, NetError::Io { .. }));
    }
}
