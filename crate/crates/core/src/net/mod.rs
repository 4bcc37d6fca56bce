//! The labeled ideal triangulation of the upper half-plane grown from
//! `T₀ = (−1, 0, ∞)` by crossing edges.
//!
//! A node is an ideal triangle `g·T₀` together with its carrier `g` and the
//! graph dart `d` dual to the side `g·[0,∞]`. Side `j` of a node is
//! `g·L⁻ʲ·[0,∞]` and carries the label `z(ρ₀ʲ d)`. Crossing side `j` gives
//! the node with carrier `g·L⁻ʲ·X_{z(ρ₀ʲ d)}` and dart `ρ₁ρ₀ʲ d`, whose side 0
//! is the side just crossed. Carriers obtained this way are exactly the
//! inverses `CHF(w)⁻¹`, so `net` ties back to [`crate::chf::chf_eval`].

mod svg;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cartography::{coset_representatives, Letter};
use crate::chf::{chf_trace, matrix_x, ExtendedReal, Mat2, Mobius};
use crate::exec::Execution;
use crate::ribbon_graph::{DartId, EdgeLabeling, RibbonGraph};

pub use svg::{render_svg, write_svg, SvgWindow};

pub const DEFAULT_MAX_DEPTH: usize = 8;

#[derive(Debug, Error)]
pub enum NetError {
    #[error("{0} is not a side of the triangle")]
    NotASide(String),
    #[error("depth {requested} exceeds the configured limit {limit}")]
    DepthLimit { requested: usize, limit: usize },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// `L⁻¹` and `L⁻² = L`, indexed by side.
const L_INV_POWERS: [Mat2<i128>; 3] = [
    Mat2::new(1, 0, 0, 1),
    Mat2::new(-1, -1, 1, 0),
    Mat2::new(0, 1, -1, -1),
];

fn base_sides() -> [(ExtendedReal, ExtendedReal); 3] {
    let (m1, z0, inf) = (
        ExtendedReal::integer(-1),
        ExtendedReal::integer(0),
        ExtendedReal::Infinity,
    );
    [(z0, inf), (inf, m1), (m1, z0)]
}

/// Chordal distance on `ℝ ∪ {∞}`, bounded by 1.
pub fn chordal_distance(x: &ExtendedReal, y: &ExtendedReal) -> f64 {
    match (x.to_f64(), y.to_f64()) {
        (None, None) => 0.0,
        (None, Some(t)) | (Some(t), None) => 1.0 / (1.0 + t * t).sqrt(),
        (Some(a), Some(b)) => (a - b).abs() / ((1.0 + a * a) * (1.0 + b * b)).sqrt(),
    }
}

/// Equal exactly when both points are exact, otherwise within `tol` in
/// chordal distance.
pub fn points_close(x: &ExtendedReal, y: &ExtendedReal, tol: f64) -> bool {
    match (x, y) {
        (ExtendedReal::Real(_), _) | (_, ExtendedReal::Real(_)) => chordal_distance(x, y) <= tol,
        _ => x == y,
    }
}

/// Dedup key of a boundary point. Floating points are boxed by their angle
/// `2·atan(x)` so that large values and `∞` stay comparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKey {
    Exact(i128, i128),
    Angle(i64),
}

const ANGLE_BOX: f64 = 1e-9;

impl VertexKey {
    pub fn of(x: &ExtendedReal) -> Self {
        let top = (std::f64::consts::PI / ANGLE_BOX).round() as i64;
        let theta = match x {
            ExtendedReal::Rational(q) => return VertexKey::Exact(*q.numer(), *q.denom()),
            ExtendedReal::Infinity => return VertexKey::Angle(top),
            ExtendedReal::Real(t) => 2.0 * t.atan(),
        };
        let k = (theta / ANGLE_BOX).round() as i64;
        VertexKey::Angle(if k == -top { top } else { k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleKey(pub [VertexKey; 3]);

/// An ideal triangle, vertices in canonical order (increasing, `∞` last).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealTriangle {
    pub vertices: [ExtendedReal; 3],
}

impl IdealTriangle {
    pub fn new(mut vertices: [ExtendedReal; 3]) -> Self {
        vertices.sort_by(|a, b| a.line_cmp(b));
        IdealTriangle { vertices }
    }

    pub fn t0() -> Self {
        IdealTriangle::new([
            ExtendedReal::integer(-1),
            ExtendedReal::integer(0),
            ExtendedReal::Infinity,
        ])
    }

    pub fn is_exact(&self) -> bool {
        self.vertices.iter().all(|v| v.as_fraction().is_some())
    }

    pub fn key(&self) -> TriangleKey {
        let mut k = self.vertices.map(|v| VertexKey::of(&v));
        k.sort();
        TriangleKey(k)
    }

    /// Same vertex set, matched in any order.
    pub fn approx_eq(&self, o: &IdealTriangle, tol: f64) -> bool {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        PERMS
            .iter()
            .any(|p| (0..3).all(|i| points_close(&self.vertices[i], &o.vertices[p[i]], tol)))
    }

    pub fn canonical_cmp(&self, o: &IdealTriangle) -> Ordering {
        (0..3)
            .map(|i| self.vertices[i].line_cmp(&o.vertices[i]))
            .find(|c| c.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// `|ps − qr| = 1` for every pair of vertices `p/q`, `r/s`; `None` for
    /// inexact triangles.
    pub fn is_farey(&self) -> Option<bool> {
        let f: Vec<(i128, i128)> = self
            .vertices
            .iter()
            .map(|v| v.as_fraction())
            .collect::<Option<_>>()?;
        let unimodular = |(p, q): (i128, i128), (r, s): (i128, i128)| (p * s - q * r).abs() == 1;
        Some(unimodular(f[0], f[1]) && unimodular(f[0], f[2]) && unimodular(f[1], f[2]))
    }
}

impl std::fmt::Display for IdealTriangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = &self.vertices;
        write!(f, "{a} {b} {c}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetNode {
    pub triangle: IdealTriangle,
    /// `g` with `g·T₀ = triangle`.
    pub carrier: Mobius,
    /// Dart dual to side 0.
    pub dart: DartId,
    pub depth: usize,
    /// `z*` on sides 0, 1, 2.
    pub dual_labels: [f64; 3],
}

impl NetNode {
    fn new(carrier: Mobius, dart: DartId, depth: usize, g: &RibbonGraph, z: &EdgeLabeling) -> Self {
        let t0 = IdealTriangle::t0();
        let triangle = IdealTriangle::new(t0.vertices.map(|v| carrier.apply(&v)));
        let d1 = g.rho0(dart);
        NetNode {
            triangle,
            carrier,
            dart,
            depth,
            dual_labels: [z.at(dart), z.at(d1), z.at(g.rho0(d1))],
        }
    }

    /// Endpoints of side `j`.
    pub fn side(&self, j: usize) -> (ExtendedReal, ExtendedReal) {
        let (p, q) = base_sides()[j];
        (self.carrier.apply(&p), self.carrier.apply(&q))
    }

    /// The dart of the graph dual to side `j`.
    pub fn side_dart(&self, g: &RibbonGraph, j: usize) -> DartId {
        (0..j).fold(self.dart, |d, _| g.rho0(d))
    }

    /// Index of the side with endpoints `{p, q}`.
    pub fn side_index(&self, p: &ExtendedReal, q: &ExtendedReal, tol: f64) -> Option<usize> {
        (0..3).find(|&j| {
            let (a, b) = self.side(j);
            (points_close(&a, p, tol) && points_close(&b, q, tol))
                || (points_close(&a, q, tol) && points_close(&b, p, tol))
        })
    }

    pub fn across(&self, j: usize, g: &RibbonGraph, z: &EdgeLabeling) -> NetNode {
        let d = self.side_dart(g, j);
        let step = Mobius::Exact(L_INV_POWERS[j]).mul(&matrix_x(z.at(d)));
        NetNode::new(self.carrier.mul(&step), g.rho1(d), self.depth + 1, g, z)
    }

    /// The triangle with its distinguished side, which tells apart the
    /// nodes `g·T₀` and `g·L·T₀`.
    pub fn marked_key(&self) -> (TriangleKey, [VertexKey; 2]) {
        let (p, q) = self.side(0);
        let mut s = [VertexKey::of(&p), VertexKey::of(&q)];
        s.sort();
        (self.triangle.key(), s)
    }
}

pub fn initial_triangle(g: &RibbonGraph, z: &EdgeLabeling, eps: DartId) -> NetNode {
    NetNode::new(Mobius::IDENTITY, eps, 0, g, z)
}

/// The node across the side `{p, q}` of `n`.
pub fn neighbor(
    n: &NetNode,
    side: (&ExtendedReal, &ExtendedReal),
    g: &RibbonGraph,
    z: &EdgeLabeling,
    tol: f64,
) -> Result<NetNode, NetError> {
    let j = n
        .side_index(side.0, side.1, tol)
        .ok_or_else(|| NetError::NotASide(format!("[{}, {}]", side.0, side.1)))?;
    Ok(n.across(j, g, z))
}

#[derive(Debug, Clone, Copy)]
pub struct NetConfig {
    pub max_depth: usize,
    pub execution: Execution,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig {
            max_depth: DEFAULT_MAX_DEPTH,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Net {
    pub nodes: Vec<NetNode>,
    index: HashMap<TriangleKey, usize>,
}

impl Net {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node with the triangle `t`: by key, then by a tolerant scan for
    /// floating triangles that landed in a neighboring box.
    pub fn find(&self, t: &IdealTriangle, tol: f64) -> Option<&NetNode> {
        if let Some(&i) = self.index.get(&t.key()) {
            return Some(&self.nodes[i]);
        }
        if t.is_exact() {
            return None;
        }
        self.nodes.iter().find(|n| n.triangle.approx_eq(t, tol))
    }

    /// One triangle per line, `p1 p2 p3`, sorted canonically.
    pub fn triangle_list(&self) -> String {
        let mut tris: Vec<&IdealTriangle> = self.nodes.iter().map(|n| &n.triangle).collect();
        tris.sort_by(|a, b| a.canonical_cmp(b));
        let mut out = String::new();
        for t in tris {
            let _ = writeln!(out, "{t}");
        }
        out
    }
}

/// Breadth-first expansion from `T₀` up to `depth` crossings. Each node is
/// expanded across its two sides other than the one it was entered by; the
/// frontier of each level is expanded with `cfg.execution` and merged in
/// order, so the result does not depend on the execution mode.
pub fn generate_net(
    g: &RibbonGraph,
    z: &EdgeLabeling,
    eps: DartId,
    depth: usize,
    cfg: &NetConfig,
) -> Result<Net, NetError> {
    if depth > cfg.max_depth {
        return Err(NetError::DepthLimit {
            requested: depth,
            limit: cfg.max_depth,
        });
    }
    let root = initial_triangle(g, z, eps);
    let mut seen = HashSet::from([root.triangle.key()]);
    let mut nodes = Vec::new();
    let mut frontier = vec![root];
    for _ in 0..depth {
        let children = cfg.execution.map(&frontier, |n| {
            let first = if n.depth == 0 { 0 } else { 1 };
            (first..3).map(|j| n.across(j, g, z)).collect::<Vec<_>>()
        });
        let mut next = Vec::new();
        for c in children.into_iter().flatten() {
            if seen.insert(c.triangle.key()) {
                next.push(c);
            }
        }
        nodes.append(&mut frontier);
        frontier = next;
    }
    nodes.append(&mut frontier);
    let index = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.triangle.key(), i))
        .collect();
    Ok(Net { nodes, index })
}

/// One node per dart `d`, carried by `CHF(w_d)⁻¹` for the coset
/// representative `w_d`. The darts of one vertex give the same triangle
/// with different distinguished sides, so the nodes are `dart_count`
/// distinct marked triangles covering `vertex_count` distinct triangles.
pub fn fundamental_domain(g: &RibbonGraph, z: &EdgeLabeling, eps: DartId) -> Vec<NetNode> {
    coset_representatives(g, eps)
        .iter()
        .map(|w| {
            let (m, d) = chf_trace(w, g, z, eps);
            let crossings = w.letters().iter().filter(|&&l| l == Letter::R1).count();
            NetNode::new(m.inverse(), d, crossings, g, z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chf::chf_eval;
    use crate::ribbon_graph::builtin;

    fn q(p: i128, r: i128) -> ExtendedReal {
        ExtendedReal::Rational(crate::chf::Rational::new(p, r))
    }

    #[test]
    fn initial_triangle_is_t0() {
        let g = builtin("theta").unwrap();
        let z = EdgeLabeling::from_edge_values(&g, vec![0.5, -1.0, 2.0]);
        let n = initial_triangle(&g, &z, g.base());
        assert_eq!(n.triangle, IdealTriangle::t0());
        assert_eq!(n.carrier, Mobius::IDENTITY);
        assert_eq!(n.depth, 0);
        assert_eq!(n.dual_labels[0], z.at(g.base()));
        assert_eq!(
            n.side(0),
            (ExtendedReal::integer(0), ExtendedReal::Infinity)
        );
    }

    #[test]
    fn crossing_zero_infinity_at_zero_shear() {
        let g = builtin("theta").unwrap();
        let z = EdgeLabeling::zero(&g);
        let n = initial_triangle(&g, &z, g.base());
        let m = neighbor(
            &n,
            (&ExtendedReal::Infinity, &ExtendedReal::integer(0)),
            &g,
            &z,
            1e-9,
        )
        .unwrap();
        assert_eq!(
            m.triangle,
            IdealTriangle::new([q(0, 1), q(1, 1), ExtendedReal::Infinity])
        );
        assert_eq!(m.depth, 1);
        let back = m.across(0, &g, &z);
        assert_eq!(back.triangle, n.triangle);
        assert!(neighbor(&n, (&q(1, 1), &q(2, 1)), &g, &z, 1e-9).is_err());
    }

    #[test]
    fn neighbor_is_an_involution_at_generic_shear() {
        let g = builtin("tetrahedron").unwrap();
        let z = EdgeLabeling::from_edge_values(&g, vec![0.3, -1.2, 0.7, 1.9, -0.4, 0.05]);
        let net = generate_net(&g, &z, g.base(), 3, &NetConfig::default()).unwrap();
        for n in &net.nodes {
            for j in 0..3 {
                let there = n.across(j, &g, &z);
                let (p, r) = n.side(j);
                let back = neighbor(&there, (&p, &r), &g, &z, 1e-9).unwrap();
                assert!(back.triangle.approx_eq(&n.triangle, 1e-9));
            }
        }
    }

    #[test]
    fn level_sizes() {
        let g = builtin("theta").unwrap();
        let z = EdgeLabeling::from_edge_values(&g, vec![0.25, 1.5, -0.75]);
        let cfg = NetConfig::default();
        assert_eq!(generate_net(&g, &z, g.base(), 0, &cfg).unwrap().len(), 1);
        assert_eq!(generate_net(&g, &z, g.base(), 1, &cfg).unwrap().len(), 4);
        assert_eq!(
            generate_net(&g, &z, g.base(), 4, &cfg).unwrap().len(),
            1 + 3 + 6 + 12 + 24
        );
        assert!(matches!(
            generate_net(&g, &z, g.base(), 9, &cfg),
            Err(NetError::DepthLimit {
                requested: 9,
                limit: 8
            })
        ));
    }

    #[test]
    fn zero_shear_net_is_farey() {
        let g = builtin("theta").unwrap();
        let net = generate_net(
            &g,
            &EdgeLabeling::zero(&g),
            g.base(),
            4,
            &NetConfig::default(),
        )
        .unwrap();
        assert_eq!(net.len(), 46);
        assert!(net
            .nodes
            .iter()
            .all(|n| n.triangle.is_farey() == Some(true)));
    }

    #[test]
    fn carriers_are_inverse_chf_images() {
        let g = builtin("cube").unwrap();
        let z = EdgeLabeling::from_edge_values(&g, (0..12).map(|i| 0.1 * i as f64 - 0.5).collect());
        for w in ["r1", "r1·r0·r1", "r1·r0^2·r1·r0·r1", "r0·r1·r0^2"] {
            let w: crate::Word = w.parse().unwrap();
            let t = IdealTriangle::new(
                IdealTriangle::t0()
                    .vertices
                    .map(|v| chf_eval(&w, &g, &z, g.base()).inverse().apply(&v)),
            );
            let net = generate_net(&g, &z, g.base(), 3, &NetConfig::default()).unwrap();
            assert!(net.find(&t, 1e-9).is_some(), "{w}");
        }
    }

    #[test]
    fn fundamental_domain_sizes() {
        for (name, darts) in [
            ("theta", 6),
            ("tetrahedron", 12),
            ("cube", 24),
            ("quotient411", 6),
        ] {
            let g = builtin(name).unwrap();
            let fd = fundamental_domain(&g, &EdgeLabeling::zero(&g), g.base());
            assert_eq!(fd.len(), darts);
            assert_eq!(fd[g.base().index()].triangle, IdealTriangle::t0());
            let marked: HashSet<_> = fd.iter().map(|n| n.marked_key()).collect();
            assert_eq!(marked.len(), darts, "{name}");
            let plain: HashSet<_> = fd.iter().map(|n| n.triangle.key()).collect();
            assert_eq!(plain.len(), g.vertex_count(), "{name}");
        }
    }

    #[test]
    fn triangle_list_format() {
        let g = builtin("theta").unwrap();
        let net = generate_net(
            &g,
            &EdgeLabeling::zero(&g),
            g.base(),
            1,
            &NetConfig::default(),
        )
        .unwrap();
        assert_eq!(
            net.triangle_list(),
            "-2 -1 inf\n-1 -1/2 0\n-1 0 inf\n0 1 inf\n"
        );
    }

    #[test]
    fn angle_keys_identify_large_values_with_infinity() {
        assert_eq!(
            VertexKey::of(&ExtendedReal::Real(1e300)),
            VertexKey::of(&ExtendedReal::Infinity)
        );
        assert_eq!(
            VertexKey::of(&ExtendedReal::Real(-1e300)),
            VertexKey::of(&ExtendedReal::Infinity)
        );
        assert_ne!(
            VertexKey::of(&ExtendedReal::Real(0.5)),
            VertexKey::of(&ExtendedReal::Real(0.5 + 1e-6))
        );
    }
}
