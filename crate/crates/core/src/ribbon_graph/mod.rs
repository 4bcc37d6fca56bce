//! Trivalent ribbon graphs stored as a pair of dart permutations.
//!
//! A dart is an oriented edge. `rho0` rotates a dart counterclockwise around
//! its origin vertex and has order 3 on every dart; `rho1` reverses the
//! orientation and is a fixed-point-free involution. Faces are the orbits of
//! `d ↦ rho1(rho0(rho0(d)))`.

mod builtin;
mod format;
mod labeling;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub use builtin::{builtin, BUILTIN_NAMES};
pub use format::{parse_graph, serialize_graph};
pub use labeling::{parse_labeling, EdgeLabeling};

/// Index of a dart in its graph, in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DartId(pub usize);

impl DartId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("vertex `{vertex}` has valence {found}, expected 3")]
    Valence { vertex: String, found: usize },
    #[error("dart `{0}` is declared at more than one vertex")]
    DuplicateDart(String),
    #[error("dart `{0}` is not paired by any edge")]
    Unpaired(String),
    #[error("dart `{0}` is paired by more than one edge")]
    DoublyPaired(String),
    #[error("edge pairs dart `{0}` with itself")]
    SelfPaired(String),
    #[error("graph is disconnected: {reached} of {total} darts reachable from the base dart")]
    Disconnected { reached: usize, total: usize },
    #[error("graph has no darts")]
    Empty,
    #[error("unknown builtin graph `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown dart `{0}`")]
    UnknownDart(String),
    #[error("edge `{0}` is labeled twice with different values")]
    ConflictingLabel(String),
}

/// A connected trivalent ribbon graph with a distinguished base dart.
///
/// Immutable after construction; every constructor validates the
/// permutation invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    dart_names: Vec<String>,
    vertex_names: Vec<String>,
    rho0: Vec<DartId>,
    rho1: Vec<DartId>,
    vertices: Vec<[DartId; 3]>,
    edges: Vec<[DartId; 2]>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    base: DartId,
}

impl RibbonGraph {
    /// Builds a graph from named vertices (darts listed counterclockwise)
    /// and edge pairings. Dart ids follow the order in which darts appear
    /// in `vertices`.
    pub fn from_parts(
        vertices: Vec<(String, Vec<String>)>,
        edges: Vec<(String, String)>,
        base: Option<&str>,
    ) -> Result<Self, GraphError> {
        let mut dart_names: Vec<String> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut vertex_names = Vec::with_capacity(vertices.len());
        let mut cycles = Vec::with_capacity(vertices.len());
        for (vname, darts) in vertices {
            if darts.len() != 3 {
                return Err(GraphError::Valence {
                    vertex: vname,
                    found: darts.len(),
                });
            }
            let mut cycle = [DartId(0); 3];
            for (slot, name) in cycle.iter_mut().zip(darts) {
                if index.contains_key(&name) {
                    return Err(GraphError::DuplicateDart(name));
                }
                let id = DartId(dart_names.len());
                index.insert(name.clone(), id);
                dart_names.push(name);
                *slot = id;
            }
            vertex_names.push(vname);
            cycles.push(cycle);
        }
        if dart_names.is_empty() {
            return Err(GraphError::Empty);
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownDart(name.to_string()))
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            if a == b {
                return Err(GraphError::SelfPaired(a.clone()));
            }
            pairs.push([lookup(a)?, lookup(b)?]);
        }
        let base = match base {
            Some(name) => lookup(name)?,
            None => DartId(0),
        };
        Self::from_tables(dart_names, vertex_names, cycles, pairs, base)
    }

    fn from_tables(
        dart_names: Vec<String>,
        vertex_names: Vec<String>,
        vertices: Vec<[DartId; 3]>,
        edges: Vec<[DartId; 2]>,
        base: DartId,
    ) -> Result<Self, GraphError> {
        let n = dart_names.len();
        let mut rho0 = vec![None; n];
        let mut vertex_of = vec![0; n];
        for (v, cycle) in vertices.iter().enumerate() {
            for i in 0..3 {
                rho0[cycle[i].0] = Some(cycle[(i + 1) % 3]);
                vertex_of[cycle[i].0] = v;
            }
        }
        let mut rho1 = vec![None; n];
        let mut edge_of = vec![0; n];
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a == b {
                return Err(GraphError::SelfPaired(dart_names[a.0].clone()));
            }
            for (x, y) in [(a, b), (b, a)] {
                if rho1[x.0].is_some() {
                    return Err(GraphError::DoublyPaired(dart_names[x.0].clone()));
                }
                rho1[x.0] = Some(y);
                edge_of[x.0] = e;
            }
        }
        let rho0: Vec<DartId> = rho0
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| GraphError::UnknownDart(dart_names[i].clone())))
            .collect::<Result<_, _>>()?;
        let rho1: Vec<DartId> = rho1
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| GraphError::Unpaired(dart_names[i].clone())))
            .collect::<Result<_, _>>()?;
        let graph = RibbonGraph {
            dart_names,
            vertex_names,
            rho0,
            rho1,
            vertices,
            edges,
            vertex_of,
            edge_of,
            base,
        };
        let reached = graph.orbit_size(base);
        if reached != n {
            return Err(GraphError::Disconnected { reached, total: n });
        }
        Ok(graph)
    }

    fn orbit_size(&self, start: DartId) -> usize {
        let mut seen = vec![false; self.dart_count()];
        seen[start.0] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(d) = queue.pop_front() {
            for next in [self.rho0(d), self.rho1(d)] {
                if !seen[next.0] {
                    seen[next.0] = true;
                    count += 1;
                    queue.push_back(next);
                }
            }
        }
        count
    }

    /// Same graph with a different base dart.
    pub fn with_base(&self, base: DartId) -> Self {
        assert!(base.0 < self.dart_count(), "base dart out of range");
        RibbonGraph {
            base,
            ..self.clone()
        }
    }

    pub fn dart_count(&self) -> usize {
        self.dart_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn darts(&self) -> impl ExactSizeIterator<Item = DartId> + Clone {
        (0..self.dart_count()).map(DartId)
    }

    /// The distinguished dart ε.
    pub fn base(&self) -> DartId {
        self.base
    }

    #[inline]
    pub fn rho0(&self, d: DartId) -> DartId {
        self.rho0[d.0]
    }

    #[inline]
    pub fn rho1(&self, d: DartId) -> DartId {
        self.rho1[d.0]
    }

    /// One step of the face traversal: rotate twice, then cross the edge.
    #[inline]
    pub fn face_step(&self, d: DartId) -> DartId {
        self.rho1(self.rho0(self.rho0(d)))
    }

    pub fn rho0_table(&self) -> &[DartId] {
        &self.rho0
    }

    pub fn rho1_table(&self) -> &[DartId] {
        &self.rho1
    }

    pub fn dart_name(&self, d: DartId) -> &str {
        &self.dart_names[d.0]
    }

    pub fn dart_by_name(&self, name: &str) -> Option<DartId> {
        self.dart_names.iter().position(|n| n == name).map(DartId)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    /// ρ₀-orbits, in declaration order.
    pub fn vertex_cycles(&self) -> &[[DartId; 3]] {
        &self.vertices
    }

    /// ρ₁-orbits, in declaration order.
    pub fn edge_pairs(&self) -> &[[DartId; 2]] {
        &self.edges
    }

    pub fn vertex_of(&self, d: DartId) -> usize {
        self.vertex_of[d.0]
    }

    pub fn edge_of(&self, d: DartId) -> usize {
        self.edge_of[d.0]
    }

    /// Lowercased name of the first dart of edge `e` (`A` → `a`).
    pub fn edge_name(&self, e: usize) -> String {
        self.dart_name(self.edges[e][0]).to_lowercase()
    }

    /// Orbits of the face traversal. Faces are ordered by their smallest
    /// dart and each cycle starts at that dart.
    pub fn faces(&self) -> Vec<Vec<DartId>> {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = Vec::new();
        for start in self.darts() {
            if seen[start.0] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d.0] {
                seen[d.0] = true;
                cycle.push(d);
                d = self.face_step(d);
            }
            faces.push(cycle);
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// Genus of the surface from `2 - 2g = V - E + F`.
    pub fn genus(&self) -> usize {
        let chi = self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64;
        debug_assert!(chi <= 2 && chi % 2 == 0, "Euler characteristic {chi}");
        ((2 - chi) / 2) as usize
    }

    /// Valence lists for the `<a1,...,an|b1,...,bm>` case label: vertex
    /// valences, then face degrees sorted descending.
    pub fn case_label(&self) -> String {
        let vertices: Vec<String> = vec!["3".to_string(); self.vertex_count()];
        let mut degrees: Vec<usize> = self.faces().iter().map(Vec::len).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let faces: Vec<String> = degrees.iter().map(usize::to_string).collect();
        format!("<{}|{}>", vertices.join(","), faces.join(","))
    }

    /// Permutation tables after renumbering darts in breadth-first order
    /// from `start` (letter order ρ₀, ρ₀², ρ₁). Two graphs with equal
    /// canonical tables from corresponding darts are isomorphic.
    pub fn canonical_tables(&self, start: DartId) -> (Vec<usize>, Vec<usize>) {
        let n = self.dart_count();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start.0] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for next in [self.rho0(d), self.rho0(self.rho0(d)), self.rho1(d)] {
                if label[next.0] == usize::MAX {
                    label[next.0] = order.len();
                    order.push(next);
                }
            }
        }
        let r0 = order.iter().map(|&d| label[self.rho0(d).0]).collect();
        let r1 = order.iter().map(|&d| label[self.rho1(d).0]).collect();
        (r0, r1)
    }
}
