// SPDX-License-Identifier: Apache-2.0

//! Finite metric graphs with their intrinsic length metric.
//!
//! A [`MetricGraph`] models the space of directions at the apex of a cone.
//! Edge lengths are angles in radians. Points live either on a vertex or in
//! the open interior of an edge; offsets are arc lengths measured from the
//! edge's `u` endpoint.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::parse_length;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// Traversal orientation of an edge. `Forward` runs from `u` towards `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// An edge germ: the initial piece of an edge leaving a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Germ {
    pub edge: EdgeId,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// A point of a metric graph in canonical form.
///
/// Offsets `0` and `length` never appear in the `Edge` variant: those points
/// are stored as the corresponding vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphPoint {
    Vertex(VertexId),
    Edge { edge: EdgeId, offset: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSegment {
    pub edge: EdgeId,
    pub from: f64,
    pub to: f64,
}

impl PathSegment {
    pub fn length(&self) -> f64 {
        (self.to - self.from).abs()
    }

    pub fn orientation(&self) -> Orientation {
        if self.to >= self.from {
            Orientation::Forward
        } else {
            Orientation::Backward
        }
    }
}

/// A path between two graph points, traversing sub-arcs of edges.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPath {
    pub start: GraphPoint,
    pub end: GraphPoint,
    pub segments: Vec<PathSegment>,
    /// Sum of the traversed sub-arc lengths.
    pub length: f64,
    /// Another path of the same length exists.
    pub ties: bool,
}

impl GraphPath {
    fn from_segments(start: GraphPoint, end: GraphPoint, segments: Vec<PathSegment>) -> Self {
        let segments: Vec<_> = segments.into_iter().filter(|s| s.length() > 0.0).collect();
        let length = segments.iter().map(PathSegment::length).sum();
        GraphPath {
            start,
            end,
            segments,
            length,
            ties: false,
        }
    }

    /// The edge germ along which the path leaves its start point.
    pub fn initial_direction(&self) -> Result<Germ> {
        match self.segments.first() {
            Some(seg) if self.length > 0.0 => Ok(Germ {
                edge: seg.edge,
                orientation: seg.orientation(),
            }),
            _ => Err(Error::ZeroLengthPath),
        }
    }

    /// The point at arc length `s` from the start, clamped to `[0, length]`.
    pub fn point_at(&self, graph: &MetricGraph, s: f64) -> GraphPoint {
        if s <= 0.0 || self.segments.is_empty() {
            return self.start;
        }
        if s >= self.length {
            return self.end;
        }
        let mut remaining = s;
        for seg in &self.segments {
            let len = seg.length();
            if remaining <= len {
                let offset = match seg.orientation() {
                    Orientation::Forward => seg.from + remaining,
                    Orientation::Backward => seg.from - remaining,
                };
                return graph.canonicalize(seg.edge, offset);
            }
            remaining -= len;
        }
        self.end
    }

    /// Concatenates `other` onto the end of `self`.
    pub fn concat(&self, other: &GraphPath) -> GraphPath {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        let mut path = GraphPath::from_segments(self.start, other.end, segments);
        path.ties = self.ties || other.ties;
        path
    }
}

/// Girth report for the CAT(1) criterion on metric graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cat1Report {
    pub girth: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
struct Exit {
    vertex: VertexId,
    cost: f64,
    /// Offset on the exit edge of the vertex the path leaves through.
    edge_end: f64,
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    vertex: VertexId,
    cost: f64,
    /// Offset on the entry edge of the vertex the path enters from.
    edge_start: f64,
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Relative slack used only to detect equal-length alternatives.
const TIE_EPS: f64 = 1e-12;

fn nearly_equal(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= TIE_EPS * a.abs().max(b.abs()).max(1.0)
}

/// Single-source shortest paths with path counts saturating at 2.
struct Sssp {
    dist: Vec<f64>,
    count: Vec<u8>,
    pred: Vec<Option<(EdgeId, VertexId)>>,
}

/// A finite, connected metric graph. Immutable after construction.
#[derive(Debug, Clone)]
pub struct MetricGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    incident: Vec<Vec<Germ>>,
    dist: Vec<Vec<f64>>,
    count: Vec<Vec<u8>>,
    pred: Vec<Vec<Option<(EdgeId, VertexId)>>>,
}

impl PartialEq for MetricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.edges == other.edges
    }
}

impl MetricGraph {
    /// Builds and validates a graph from vertex names and
    /// `(edge id, u name, v name, length)` tuples.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (String, String, String, f64)>,
    ) -> Result<Self> {
        let vertex_names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, name) in vertex_names.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        let mut ids = HashSet::new();
        let mut built = Vec::new();
        for (id, u, v, length) in edges {
            if !ids.insert(id.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate edge `{id}`")));
            }
            let lookup = |name: &str| {
                index.get(name).copied().ok_or_else(|| {
                    Error::InvalidGraph(format!("edge `{id}` references unknown vertex `{name}`"))
                })
            };
            let (u, v) = (lookup(&u)?, lookup(&v)?);
            if !(length.is_finite() && length > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge `{id}` has non-positive or non-finite length {length}"
                )));
            }
            built.push(Edge { id, u, v, length });
        }
        Self::from_parts(vertex_names, built)
    }

    fn from_parts(vertex_names: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertex_names.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidGraph("graph has no edges".into()));
        }
        let n = vertex_names.len();
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u.0].push(Germ {
                edge: EdgeId(i),
                orientation: Orientation::Forward,
            });
            incident[e.v.0].push(Germ {
                edge: EdgeId(i),
                orientation: Orientation::Backward,
            });
        }
        let mut graph = MetricGraph {
            vertex_names,
            edges,
            incident,
            dist: Vec::new(),
            count: Vec::new(),
            pred: Vec::new(),
        };
        let mut dist = Vec::with_capacity(n);
        let mut count = Vec::with_capacity(n);
        let mut pred = Vec::with_capacity(n);
        for s in 0..n {
            let sssp = graph.dijkstra(VertexId(s), None);
            if let Some(t) = sssp.dist.iter().position(|d| d.is_infinite()) {
                return Err(Error::InvalidGraph(format!(
                    "graph is disconnected: `{}` is unreachable from `{}`",
                    graph.vertex_names[t], graph.vertex_names[s]
                )));
            }
            dist.push(sssp.dist);
            count.push(sssp.count);
            pred.push(sssp.pred);
        }
        graph.dist = dist;
        graph.count = count;
        graph.pred = pred;
        Ok(graph)
    }

    fn dijkstra(&self, source: VertexId, skip: Option<EdgeId>) -> Sssp {
        let n = self.vertex_names.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut count = vec![0u8; n];
        let mut pred = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source.0] = 0.0;
        count[source.0] = 1;
        heap.push(HeapItem(0.0, source.0));
        while let Some(HeapItem(d, x)) = heap.pop() {
            if done[x] {
                continue;
            }
            done[x] = true;
            for germ in &self.incident[x] {
                if Some(germ.edge) == skip {
                    continue;
                }
                let e = &self.edges[germ.edge.0];
                if e.is_loop() {
                    continue;
                }
                let y = match germ.orientation {
                    Orientation::Forward => e.v.0,
                    Orientation::Backward => e.u.0,
                };
                if done[y] {
                    continue;
                }
                let nd = d + e.length;
                if nearly_equal(nd, dist[y]) {
                    count[y] = count[y].saturating_add(count[x]).min(2);
                } else if nd < dist[y] {
                    dist[y] = nd;
                    count[y] = count[x];
                    pred[y] = Some((germ.edge, VertexId(x)));
                    heap.push(HeapItem(nd, y));
                }
            }
        }
        Sssp { dist, count, pred }
    }

    /// Parses the line-based space format:
    ///
    /// ```text
    /// v <name>
    /// e <edge-id> <name-u> <name-v> <length>
    /// ```
    ///
    /// Lines starting with `#` are comments. Other record types are ignored
    /// so that configuration files can extend the format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            match fields[0] {
                "v" => {
                    if fields.len() != 2 {
                        return Err(err("expected `v <name>`".into()));
                    }
                    vertices.push(fields[1].to_string());
                }
                "e" => {
                    if fields.len() != 5 {
                        return Err(err("expected `e <edge-id> <u> <v> <length>`".into()));
                    }
                    let length = parse_length(fields[4]).map_err(err)?;
                    edges.push((
                        fields[1].to_string(),
                        fields[2].to_string(),
                        fields[3].to_string(),
                        length,
                    ));
                }
                _ => {}
            }
        }
        Self::new(vertices, edges)
    }

    /// Canonical serialization; lengths use the shortest round-trip decimal.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge_by_id(&self, id: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.id == id).map(EdgeId)
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Distance between two vertices.
    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> f64 {
        self.dist[a.0][b.0]
    }

    /// Canonical point at `offset` along `edge`, clamping into `[0, length]`.
    pub fn canonicalize(&self, edge: EdgeId, offset: f64) -> GraphPoint {
        let e = &self.edges[edge.0];
        if offset <= 0.0 {
            GraphPoint::Vertex(e.u)
        } else if offset >= e.length {
            GraphPoint::Vertex(e.v)
        } else {
            GraphPoint::Edge { edge, offset }
        }
    }

    /// Checked constructor for an edge point.
    pub fn point(&self, edge: EdgeId, offset: f64) -> Result<GraphPoint> {
        let e = self
            .edges
            .get(edge.0)
            .ok_or_else(|| Error::InvalidPoint(format!("no edge with index {}", edge.0)))?;
        if !(offset.is_finite() && (0.0..=e.length).contains(&offset)) {
            return Err(Error::InvalidPoint(format!(
                "offset {offset} outside [0, {}] on edge `{}`",
                e.length, e.id
            )));
        }
        Ok(self.canonicalize(edge, offset))
    }

    pub fn vertex_point(&self, v: VertexId) -> GraphPoint {
        GraphPoint::Vertex(v)
    }

    /// Re-canonicalizes a point (idempotent).
    pub fn canonical(&self, p: GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Vertex(_) => p,
            GraphPoint::Edge { edge, offset } => self.canonicalize(edge, offset),
        }
    }

    fn exits(&self, p: GraphPoint) -> Vec<Exit> {
        match p {
            GraphPoint::Vertex(v) => vec![Exit {
                vertex: v,
                cost: 0.0,
                edge_end: f64::NAN,
            }],
            GraphPoint::Edge { edge, offset } => {
                let e = &self.edges[edge.0];
                vec![
                    Exit {
                        vertex: e.u,
                        cost: offset,
                        edge_end: 0.0,
                    },
                    Exit {
                        vertex: e.v,
                        cost: e.length - offset,
                        edge_end: e.length,
                    },
                ]
            }
        }
    }

    fn entries(&self, p: GraphPoint) -> Vec<Entry> {
        match p {
            GraphPoint::Vertex(v) => vec![Entry {
                vertex: v,
                cost: 0.0,
                edge_start: f64::NAN,
            }],
            GraphPoint::Edge { edge, offset } => {
                let e = &self.edges[edge.0];
                vec![
                    Entry {
                        vertex: e.u,
                        cost: offset,
                        edge_start: 0.0,
                    },
                    Entry {
                        vertex: e.v,
                        cost: e.length - offset,
                        edge_start: e.length,
                    },
                ]
            }
        }
    }

    /// Length-metric distance between two points.
    pub fn distance(&self, a: GraphPoint, b: GraphPoint) -> f64 {
        let a = self.canonical(a);
        let b = self.canonical(b);
        let mut best = f64::INFINITY;
        if let (
            GraphPoint::Edge { edge: ea, offset: oa },
            GraphPoint::Edge { edge: eb, offset: ob },
        ) = (a, b)
        {
            if ea == eb {
                best = (oa - ob).abs();
            }
        }
        for x in self.exits(a) {
            for y in self.entries(b) {
                best = best.min(x.cost + self.dist[x.vertex.0][y.vertex.0] + y.cost);
            }
        }
        best
    }

    /// Distances from `a` to every vertex.
    pub fn distances_to_vertices(&self, a: GraphPoint) -> Vec<f64> {
        let exits = self.exits(self.canonical(a));
        (0..self.vertex_count())
            .map(|t| {
                exits
                    .iter()
                    .map(|x| x.cost + self.dist[x.vertex.0][t])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    fn vertex_path(&self, from: VertexId, to: VertexId) -> Vec<PathSegment> {
        let mut segments = Vec::new();
        let mut cur = to;
        while cur != from {
            let (edge, prev) = self.pred[from.0][cur.0].expect("connected graph");
            let e = &self.edges[edge.0];
            let seg = if e.u == prev {
                PathSegment {
                    edge,
                    from: 0.0,
                    to: e.length,
                }
            } else {
                PathSegment {
                    edge,
                    from: e.length,
                    to: 0.0,
                }
            };
            segments.push(seg);
            cur = prev;
        }
        segments.reverse();
        segments
    }

    /// One shortest path from `a` to `b`, flagging whether others exist.
    pub fn shortest_path(&self, a: GraphPoint, b: GraphPoint) -> GraphPath {
        let a = self.canonical(a);
        let b = self.canonical(b);
        if a == b {
            return GraphPath::from_segments(a, b, Vec::new());
        }
        enum Route {
            Direct,
            Via(Exit, Entry),
        }
        let mut candidates: Vec<(f64, u8, Route)> = Vec::new();
        if let (
            GraphPoint::Edge { edge: ea, offset: oa },
            GraphPoint::Edge { edge: eb, offset: ob },
        ) = (a, b)
        {
            if ea == eb {
                candidates.push(((oa - ob).abs(), 1, Route::Direct));
            }
        }
        for x in self.exits(a) {
            for y in self.entries(b) {
                let cost = x.cost + self.dist[x.vertex.0][y.vertex.0] + y.cost;
                candidates.push((cost, self.count[x.vertex.0][y.vertex.0], Route::Via(x, y)));
            }
        }
        let best = candidates
            .iter()
            .map(|c| c.0)
            .fold(f64::INFINITY, f64::min);
        let multiplicity: u32 = candidates
            .iter()
            .filter(|c| nearly_equal(c.0, best))
            .map(|c| c.1 as u32)
            .sum();
        let (_, _, route) = candidates
            .into_iter()
            .find(|c| c.0 == best)
            .expect("at least one route");
        let segments = match route {
            Route::Direct => match (a, b) {
                (
                    GraphPoint::Edge { edge, offset: oa },
                    GraphPoint::Edge { offset: ob, .. },
                ) => vec![PathSegment {
                    edge,
                    from: oa,
                    to: ob,
                }],
                _ => unreachable!(),
            },
            Route::Via(x, y) => {
                let mut segs = Vec::new();
                if let GraphPoint::Edge { edge, offset } = a {
                    segs.push(PathSegment {
                        edge,
                        from: offset,
                        to: x.edge_end,
                    });
                }
                segs.extend(self.vertex_path(x.vertex, y.vertex));
                if let GraphPoint::Edge { edge, offset } = b {
                    segs.push(PathSegment {
                        edge,
                        from: y.edge_start,
                        to: offset,
                    });
                }
                segs
            }
        };
        let mut path = GraphPath::from_segments(a, b, segments);
        path.ties = multiplicity >= 2;
        path
    }

    /// Edge germs at a point; two for interior points.
    pub fn germs_at(&self, p: GraphPoint) -> Vec<Germ> {
        match self.canonical(p) {
            GraphPoint::Vertex(v) => self.incident[v.0].clone(),
            GraphPoint::Edge { edge, .. } => vec![
                Germ {
                    edge,
                    orientation: Orientation::Forward,
                },
                Germ {
                    edge,
                    orientation: Orientation::Backward,
                },
            ],
        }
    }

    pub fn local_degree(&self, p: GraphPoint) -> usize {
        self.germs_at(p).len()
    }

    /// Arc length available along `germ` from `p` before reaching a vertex.
    pub fn germ_reach(&self, p: GraphPoint, germ: Germ) -> Option<f64> {
        if !self.germs_at(p).contains(&germ) {
            return None;
        }
        let e = &self.edges[germ.edge.0];
        Some(match (self.canonical(p), germ.orientation) {
            (GraphPoint::Vertex(_), _) => e.length,
            (GraphPoint::Edge { offset, .. }, Orientation::Forward) => e.length - offset,
            (GraphPoint::Edge { offset, .. }, Orientation::Backward) => offset,
        })
    }

    /// Moves `s` along `germ` from `p`. Requires `0 <= s <= germ_reach`.
    pub fn advance(&self, p: GraphPoint, germ: Germ, s: f64) -> Option<GraphPoint> {
        let reach = self.germ_reach(p, germ)?;
        if !(0.0..=reach).contains(&s) {
            return None;
        }
        let e = &self.edges[germ.edge.0];
        let start = match (self.canonical(p), germ.orientation) {
            (GraphPoint::Vertex(_), Orientation::Forward) => 0.0,
            (GraphPoint::Vertex(_), Orientation::Backward) => e.length,
            (GraphPoint::Edge { offset, .. }, _) => offset,
        };
        let offset = match germ.orientation {
            Orientation::Forward => start + s,
            Orientation::Backward => start - s,
        };
        Some(self.canonicalize(germ.edge, offset))
    }

    /// Length of the shortest cycle; infinite for forests.
    pub fn girth(&self) -> f64 {
        let mut girth = f64::INFINITY;
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                girth = girth.min(e.length);
                continue;
            }
            let sssp = self.dijkstra(e.u, Some(EdgeId(i)));
            girth = girth.min(e.length + sssp.dist[e.v.0]);
        }
        girth
    }

    /// Metric graphs are CAT(1) exactly when their girth is at least 2π.
    pub fn validate_cat1(&self) -> Cat1Report {
        let girth = self.girth();
        Cat1Report {
            girth,
            pass: girth >= 2.0 * PI,
        }
    }

    /// The same graph with all lengths multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidGraph(format!("invalid scale factor {c}")));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                length: e.length * c,
                ..e.clone()
            })
            .collect();
        Self::from_parts(self.vertex_names.clone(), edges)
    }

    /// Splits `edge` at an interior offset into two edges joined by a new
    /// vertex. Returns the refined graph and a map taking points of `self`
    /// to the same points of the refinement.
    pub fn subdivide(&self, edge: EdgeId, offset: f64) -> Result<(Self, Subdivision)> {
        let e = self
            .edges
            .get(edge.0)
            .ok_or_else(|| Error::InvalidPoint(format!("no edge with index {}", edge.0)))?;
        if !(offset > 0.0 && offset < e.length) {
            return Err(Error::InvalidPoint(format!(
                "subdivision offset {offset} must lie inside (0, {})",
                e.length
            )));
        }
        let mut names = self.vertex_names.clone();
        let mut name = format!("{}~{}", e.id, names.len());
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
        let mid = VertexId(names.len() - 1);
        let mut edges = self.edges.clone();
        let mut tail_id = format!("{}~b", e.id);
        while edges.iter().any(|x| x.id == tail_id) {
            tail_id.push('\'');
        }
        edges[edge.0] = Edge {
            id: e.id.clone(),
            u: e.u,
            v: mid,
            length: offset,
        };
        edges.push(Edge {
            id: tail_id,
            u: mid,
            v: e.v,
            length: e.length - offset,
        });
        let tail = EdgeId(edges.len() - 1);
        let refined = Self::from_parts(names, edges)?;
        Ok((
            refined,
            Subdivision {
                edge,
                offset,
                mid,
                tail,
            },
        ))
    }
}

/// Point map from a graph to one of its subdivisions.
#[derive(Debug, Clone, Copy)]
pub struct Subdivision {
    edge: EdgeId,
    offset: f64,
    mid: VertexId,
    tail: EdgeId,
}

impl Subdivision {
    pub fn map(&self, p: GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Edge { edge, offset } if edge == self.edge => {
                match offset.partial_cmp(&self.offset) {
                    Some(Ordering::Less) => p,
                    Some(Ordering::Equal) => GraphPoint::Vertex(self.mid),
                    _ => GraphPoint::Edge {
                        edge: self.tail,
                        offset: offset - self.offset,
                    },
                }
            }
            _ => p,
        }
    }
}

impl fmt::Display for MetricGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.vertex_names {
            writeln!(f, "v {name}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "e {} {} {} {:?}",
                e.id,
                self.vertex_names[e.u.0],
                self.vertex_names[e.v.0],
                e.length
            )?;
        }
        Ok(())
    }
}
