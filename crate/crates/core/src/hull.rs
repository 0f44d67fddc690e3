// SPDX-License-Identifier: Apache-2.0

//! Geodesically convex cone hulls.
//!
//! A cone is geodesically convex exactly when its direction set contains
//! the shortest path between any two of its directions at angular distance
//! below π; pairs at distance π or more are joined through the apex. The
//! direction set of a hull is a finite union of arcs, and any shortest path
//! between two of its points leaves an arc through an arc endpoint, so the
//! closure only needs to join arc endpoints.

use std::f64::consts::PI;

use crate::cone::{Cone, ConeVector};
use crate::error::{Error, Result};
use crate::graph::{GraphPoint, MetricGraph, Orientation};
use crate::limitlog::{limit_log, Arc, LimitTangentCone};

/// Default sampling resolution in radians.
pub const DEFAULT_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct ConeHull {
    arcs: Vec<Arc>,
    samples: Vec<GraphPoint>,
    delta: f64,
    rounds: usize,
}

impl ConeHull {
    /// The direction set as arcs; isolated directions are degenerate arcs.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Directions spaced at most `delta` apart along every arc.
    pub fn samples(&self) -> &[GraphPoint] {
        &self.samples
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Closure rounds until the fixpoint.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Only the apex.
    pub fn is_trivial(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(Arc::length).sum()
    }

    pub fn contains(&self, graph: &MetricGraph, p: GraphPoint) -> bool {
        let p = graph.canonical(p);
        self.arcs.iter().any(|arc| arc_covers(graph, arc, p))
    }

    /// Angular distance from `p` to the direction set.
    pub fn distance_to(&self, graph: &MetricGraph, p: GraphPoint) -> f64 {
        if self.contains(graph, p) {
            return 0.0;
        }
        self.arcs
            .iter()
            .flat_map(|a| [(a.edge, a.lo), (a.edge, a.hi)])
            .map(|(e, s)| graph.distance(p, graph.canonicalize(e, s)))
            .fold(f64::INFINITY, f64::min)
    }
}

fn arc_covers(graph: &MetricGraph, arc: &Arc, p: GraphPoint) -> bool {
    match p {
        GraphPoint::Edge { edge, offset } => edge == arc.edge && arc.contains(offset),
        GraphPoint::Vertex(v) => {
            let e = graph.edge(arc.edge);
            (e.u == v && arc.lo == 0.0) || (e.v == v && arc.hi == e.length)
        }
    }
}

fn point_arc(graph: &MetricGraph, p: GraphPoint) -> Arc {
    match graph.canonical(p) {
        GraphPoint::Edge { edge, offset } => Arc {
            edge,
            lo: offset,
            hi: offset,
        },
        GraphPoint::Vertex(v) => {
            let germ = graph.germs_at(GraphPoint::Vertex(v))[0];
            let s = match germ.orientation {
                Orientation::Forward => 0.0,
                Orientation::Backward => graph.edge(germ.edge).length,
            };
            Arc {
                edge: germ.edge,
                lo: s,
                hi: s,
            }
        }
    }
}

fn normalize(mut arcs: Vec<Arc>) -> Vec<Arc> {
    arcs.sort_by(|a, b| a.edge.cmp(&b.edge).then(a.lo.total_cmp(&b.lo)));
    let mut out: Vec<Arc> = Vec::with_capacity(arcs.len());
    for arc in arcs {
        match out.last_mut() {
            Some(last) if last.edge == arc.edge && arc.lo <= last.hi => last.hi = last.hi.max(arc.hi),
            _ => out.push(arc),
        }
    }
    out
}

fn endpoints(graph: &MetricGraph, arcs: &[Arc]) -> Vec<GraphPoint> {
    let mut pts: Vec<GraphPoint> = Vec::new();
    for arc in arcs {
        for s in [arc.lo, arc.hi] {
            let p = graph.canonicalize(arc.edge, s);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts
}

/// The smallest geodesically convex cone containing `points`, with its
/// direction set sampled at resolution `delta`.
pub fn hull(cone: &Cone, points: &[ConeVector], delta: f64) -> Result<ConeHull> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidConfiguration(format!("hull resolution {delta} must be positive")));
    }
    let graph = cone.graph();
    let mut arcs = normalize(points.iter().filter_map(|v| v.dir()).map(|p| point_arc(graph, *p)).collect());
    let max_rounds = ((graph.total_length() / delta).ceil() as usize).max(1);
    let mut rounds = 0;
    loop {
        if rounds >= max_rounds {
            return Err(Error::HullDiverged(max_rounds));
        }
        rounds += 1;
        let ends = endpoints(graph, &arcs);
        let mut next = arcs.clone();
        for (i, a) in ends.iter().enumerate() {
            for b in &ends[i + 1..] {
                let path = graph.shortest_path(*a, *b);
                if path.length > 0.0 && path.length < PI {
                    next.extend(path.segments.iter().map(|seg| Arc {
                        edge: seg.edge,
                        lo: seg.from.min(seg.to),
                        hi: seg.from.max(seg.to),
                    }));
                }
            }
        }
        let next = normalize(next);
        if next == arcs {
            break;
        }
        arcs = next;
    }
    let mut samples: Vec<GraphPoint> = Vec::new();
    for arc in &arcs {
        let n = (arc.length() / delta).ceil().max(0.0) as usize;
        for k in 0..=n {
            let s = if n == 0 {
                arc.lo
            } else {
                arc.lo + arc.length() * k as f64 / n as f64
            };
            let p = graph.canonicalize(arc.edge, s.min(arc.hi));
            if !(matches!(p, GraphPoint::Vertex(_)) && samples.contains(&p)) {
                samples.push(p);
            }
        }
    }
    Ok(ConeHull {
        arcs,
        samples,
        delta,
        rounds,
    })
}

/// How far the image of a hull sticks out of the hull of the image.
#[derive(Debug, Clone, PartialEq)]
pub struct HullSubcommute {
    pub delta: f64,
    pub samples_checked: usize,
    /// Largest carrier angular distance from a sample of `L_Z(hull S)` to
    /// `hull(L_Z S)`.
    pub max_gap: f64,
    /// The sample attaining `max_gap`.
    pub worst: Option<GraphPoint>,
}

impl HullSubcommute {
    pub fn tolerance(&self) -> f64 {
        2.0 * self.delta
    }

    pub fn passes(&self) -> bool {
        self.max_gap <= self.tolerance()
    }
}

/// Checks `L_Z(hull S) ⊆ hull(L_Z S)` up to `2δ`.
pub fn check_hull_subcommute(cone: &Cone, points: &[ConeVector], z: &ConeVector, delta: f64) -> Result<HullSubcommute> {
    let graph = cone.graph();
    let target = LimitTangentCone::new(graph, z)?;
    let carrier = target.carrier();
    let source_hull = hull(cone, points, delta)?;
    let images = points
        .iter()
        .map(|v| limit_log(graph, z, v).map(|l| target.embed(&l)))
        .collect::<Result<Vec<_>>>()?;
    let image_hull = hull(carrier, &images, delta)?;
    let mut max_gap: f64 = 0.0;
    let mut worst = None;
    for p in source_hull.samples() {
        let unit = ConeVector::new(*p, 1.0)?;
        let image = target.embed(&limit_log(graph, z, &unit)?);
        let dir = *image.dir().expect("unit image");
        let gap = image_hull.distance_to(carrier.graph(), dir);
        if gap > max_gap {
            max_gap = gap;
            worst = Some(*p);
        }
    }
    Ok(HullSubcommute {
        delta,
        samples_checked: source_hull.samples().len(),
        max_gap,
        worst,
    })
}
