// SPDX-License-Identifier: Apache-2.0

//! Shadows and the limit log map.
//!
//! The shadow of a nonzero `Z` is the closed set of directions at angular
//! distance at least π from `dir Z`. The limit log map `L_Z` sends a vector
//! of the cone to the tangent cone at points of the ray through `Z`, in the
//! open-book coordinates shared by all such points: shadow vectors collapse
//! onto the inward spine and everything else keeps its norm, its angle to
//! `Z` and the page of the shortest direction path from `dir Z`.

use std::f64::consts::PI;

use crate::cone::{Cone, ConeVector};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphPoint, Germ, MetricGraph, Orientation};
use crate::tangent::{book_angle, book_distance, BookCoord, OpenBook, Page};

/// Closed sub-arc `[lo, hi]` of one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub edge: EdgeId,
    pub lo: f64,
    pub hi: f64,
}

impl Arc {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, offset: f64) -> bool {
        self.lo <= offset && offset <= self.hi
    }
}

/// The shadow of `Z` as maximal closed arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Shadow {
    z: ConeVector,
    regions: Vec<Arc>,
}

fn direction_of(v: &ConeVector, what: &'static str) -> Result<GraphPoint> {
    v.dir().copied().ok_or(Error::ApexInput(what))
}

/// `d_s(dir V, dir Z) >= π`, with no slack.
pub fn in_shadow(graph: &MetricGraph, v: &ConeVector, z: &ConeVector) -> Result<bool> {
    let vd = direction_of(v, "shadow membership of the zero vector")?;
    let zd = direction_of(z, "shadow of the zero vector")?;
    Ok(graph.distance(vd, zd) >= PI)
}

impl Shadow {
    /// Solves `d_s(dir Z, ·) >= π` edge by edge. Along an edge the distance
    /// is a minimum of linear functions of the offset, so each piece gives
    /// an interval; endpoints are then moved by a few ulps where needed so
    /// that they agree with the pointwise test.
    pub fn new(graph: &MetricGraph, z: &ConeVector) -> Result<Self> {
        let zdir = direction_of(z, "shadow of the zero vector")?;
        let dist = graph.distances_to_vertices(zdir);
        let inside = |edge: EdgeId, s: f64| graph.distance(zdir, graph.canonicalize(edge, s)) >= PI;
        let mut regions: Vec<Arc> = Vec::new();
        for (i, e) in graph.edges().iter().enumerate() {
            let edge = EdgeId(i);
            let (du, dv, len) = (dist[e.u.0], dist[e.v.0], e.length);
            let mut pieces = Vec::new();
            match zdir {
                GraphPoint::Edge { edge: ze, offset } if ze == edge => {
                    pieces.push((0.0, offset, f64::NEG_INFINITY, offset - PI));
                    pieces.push((offset, len, offset + PI, f64::INFINITY));
                }
                _ => pieces.push((0.0, len, f64::NEG_INFINITY, f64::INFINITY)),
            }
            for (a, b, direct_lo, direct_hi) in pieces {
                let lo = a.max(PI - du).max(direct_lo);
                let hi = b.min(len + dv - PI).min(direct_hi);
                if lo > hi {
                    continue;
                }
                if let Some((lo, hi)) = snap(lo, hi, a, b, |s| inside(edge, s)) {
                    match regions.last_mut() {
                        Some(last) if last.edge == edge && last.hi >= lo => last.hi = last.hi.max(hi),
                        _ => regions.push(Arc { edge, lo, hi }),
                    }
                }
            }
        }
        // A vertex in the shadow may appear as a degenerate arc on several
        // incident edges; keep one.
        let mut kept: Vec<Arc> = Vec::new();
        for arc in regions {
            if arc.lo == arc.hi {
                let p = graph.canonicalize(arc.edge, arc.lo);
                if kept.iter().any(|k| covers(graph, k, p)) {
                    continue;
                }
            }
            kept.retain(|k| !(k.lo == k.hi && covers(graph, &arc, graph.canonicalize(k.edge, k.lo))));
            kept.push(arc);
        }
        Ok(Shadow { z: *z, regions: kept })
    }

    pub fn z(&self) -> &ConeVector {
        &self.z
    }

    pub fn regions(&self) -> &[Arc] {
        &self.regions
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// Total arc length of the shadow.
    pub fn measure(&self) -> f64 {
        self.regions.iter().map(Arc::length).sum()
    }

    pub fn contains(&self, graph: &MetricGraph, p: GraphPoint) -> bool {
        let p = graph.canonical(p);
        self.regions.iter().any(|arc| covers(graph, arc, p))
    }

    /// Shadow points paired with a germ along which the direction leaves the
    /// shadow immediately.
    pub fn boundary(&self, graph: &MetricGraph) -> Vec<(GraphPoint, Germ)> {
        let zdir = *self.z.dir().expect("shadow of a nonzero vector");
        let mut out = Vec::new();
        let mut seen: Vec<GraphPoint> = Vec::new();
        for arc in &self.regions {
            for s in [arc.lo, arc.hi] {
                let p = graph.canonicalize(arc.edge, s);
                if seen.contains(&p) {
                    continue;
                }
                seen.push(p);
                for g in graph.germs_at(p) {
                    let reach = graph.germ_reach(p, g).expect("germ at p");
                    let probe = graph.advance(p, g, (0.5 * reach).min(1e-6)).expect("within reach");
                    if graph.distance(zdir, probe) < PI {
                        out.push((p, g));
                    }
                }
            }
        }
        out
    }
}

fn covers(graph: &MetricGraph, arc: &Arc, p: GraphPoint) -> bool {
    match p {
        GraphPoint::Edge { edge, offset } => edge == arc.edge && arc.contains(offset),
        GraphPoint::Vertex(v) => {
            let e = graph.edge(arc.edge);
            (e.u == v && arc.lo == 0.0) || (e.v == v && arc.hi == e.length)
        }
    }
}

/// Adjusts `[lo, hi] ⊆ [a, b]` by at most a few ulps at each end so that
/// the endpoints pass `inside` and their outer neighbours fail it.
fn snap(mut lo: f64, mut hi: f64, a: f64, b: f64, inside: impl Fn(f64) -> bool) -> Option<(f64, f64)> {
    const STEPS: usize = 64;
    for _ in 0..STEPS {
        if inside(lo) || lo >= hi {
            break;
        }
        lo = lo.next_up().min(hi);
    }
    for _ in 0..STEPS {
        let prev = lo.next_down();
        if prev < a || !inside(prev) {
            break;
        }
        lo = prev;
    }
    for _ in 0..STEPS {
        if inside(hi) || hi <= lo {
            break;
        }
        hi = hi.next_down().max(lo);
    }
    for _ in 0..STEPS {
        let next = hi.next_up();
        if next > b || !inside(next) {
            break;
        }
        hi = next;
    }
    (inside(lo) && inside(hi)).then_some((lo, hi))
}

/// Vectors of the limit tangent cone, in open-book coordinates measured
/// from `+spine = L_Z(Z)/‖Z‖`.
pub type LimitVector = BookCoord;

/// The open book with one page per edge germ at `dir Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitTangentCone {
    z: ConeVector,
    book: OpenBook,
}

impl LimitTangentCone {
    pub fn new(graph: &MetricGraph, z: &ConeVector) -> Result<Self> {
        let zdir = direction_of(z, "limit tangent cone at the zero vector")?;
        Ok(LimitTangentCone {
            z: *z,
            book: OpenBook::new(graph, graph.germs_at(zdir)),
        })
    }

    pub fn z(&self) -> &ConeVector {
        &self.z
    }

    pub fn book(&self) -> &OpenBook {
        &self.book
    }

    /// The cone over the theta graph.
    pub fn carrier(&self) -> &Cone {
        self.book.carrier()
    }

    pub fn plus_spine(&self) -> LimitVector {
        BookCoord::radial_out(1.0)
    }

    pub fn minus_spine(&self) -> LimitVector {
        BookCoord::radial_in(1.0)
    }

    pub fn angle(&self, a: &LimitVector, b: &LimitVector) -> f64 {
        book_angle(a, b)
    }

    pub fn distance(&self, a: &LimitVector, b: &LimitVector) -> f64 {
        book_distance(a, b)
    }

    pub fn embed(&self, a: &LimitVector) -> ConeVector {
        self.book.embed(a).expect("limit vectors use pages of this cone")
    }
}

/// `L_Z V`.
pub fn limit_log(graph: &MetricGraph, z: &ConeVector, v: &ConeVector) -> Result<LimitVector> {
    let zdir = direction_of(z, "limit log along the zero vector")?;
    let Some(&vdir) = v.dir() else {
        return Ok(BookCoord::ZERO);
    };
    let norm = v.norm();
    let angle = graph.distance(zdir, vdir);
    if angle >= PI {
        return Ok(BookCoord::radial_in(norm));
    }
    if angle == 0.0 {
        return Ok(BookCoord::radial_out(norm));
    }
    let page = graph.shortest_path(zdir, vdir).initial_direction()?;
    BookCoord::new(Page::Germ(page), angle, norm)
}

/// How the geodesic `VW` meets the shadow of `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShadowContact {
    Disjoint,
    /// Only an endpoint direction lies in the shadow.
    EndpointTouch,
    /// A single direction strictly inside the geodesic.
    OneInteriorPoint,
    /// A set of positive length, or several isolated directions.
    Segment,
    /// `∠(V, W) = π` and neither endpoint ray is in the shadow.
    ApexPassingMiss,
}

impl ShadowContact {
    pub fn name(&self) -> &'static str {
        match self {
            ShadowContact::Disjoint => "disjoint",
            ShadowContact::EndpointTouch => "endpoint-touch",
            ShadowContact::OneInteriorPoint => "one-interior-point",
            ShadowContact::Segment => "segment",
            ShadowContact::ApexPassingMiss => "apex-passing-miss",
        }
    }
}

pub fn geodesic_shadow_classification(cone: &Cone, v: &ConeVector, w: &ConeVector, z: &ConeVector) -> Result<ShadowContact> {
    classify(cone, &Shadow::new(cone.graph(), z)?, v, w)
}

/// Contact intervals at most this wide (relative to the path length) count
/// as a single direction: around an isolated shadow direction the test
/// `d >= π` holds on a few consecutive floats.
pub const POINT_WIDTH: f64 = 1e-12;

/// Classification against a precomputed shadow.
pub fn classify(cone: &Cone, shadow: &Shadow, v: &ConeVector, w: &ConeVector) -> Result<ShadowContact> {
    let graph = cone.graph();
    let vd = direction_of(v, "classification of the zero vector")?;
    let wd = direction_of(w, "classification of the zero vector")?;
    let path = graph.shortest_path(vd, wd);
    if path.length >= PI {
        return Ok(if shadow.contains(graph, vd) || shadow.contains(graph, wd) {
            ShadowContact::Segment
        } else {
            ShadowContact::ApexPassingMiss
        });
    }
    let theta = path.length;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if shadow.contains(graph, vd) {
        hits.push((0.0, 0.0));
    }
    if shadow.contains(graph, wd) {
        hits.push((theta, theta));
    }
    let mut start = 0.0;
    for seg in &path.segments {
        let (a, b) = (seg.from.min(seg.to), seg.from.max(seg.to));
        let to_param = |s: f64| match seg.orientation() {
            Orientation::Forward => start + (s - seg.from),
            Orientation::Backward => start + (seg.from - s),
        };
        for arc in shadow.regions().iter().filter(|r| r.edge == seg.edge) {
            let (lo, hi) = (arc.lo.max(a), arc.hi.min(b));
            if lo <= hi {
                let (x, y) = (to_param(lo), to_param(hi));
                hits.push((x.min(y).clamp(0.0, theta), x.max(y).clamp(0.0, theta)));
            }
        }
        let end = start + seg.length();
        let joint = graph.canonicalize(seg.edge, seg.to);
        if end < theta && shadow.contains(graph, joint) {
            hits.push((end, end));
        }
        start = end;
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in hits {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let width = POINT_WIDTH * theta.max(1.0);
    Ok(match merged.as_slice() {
        [] => ShadowContact::Disjoint,
        [(lo, hi)] if hi - lo <= width && (*lo == 0.0 || *hi == theta) => ShadowContact::EndpointTouch,
        [(lo, hi)] if hi - lo <= width => ShadowContact::OneInteriorPoint,
        _ => ShadowContact::Segment,
    })
}

/// `∠(+spine, W_Z) + ∠(W_Z, −spine)`, which should equal π.
pub fn check_sum_pi(w: &LimitVector) -> Result<f64> {
    if w.is_zero() {
        return Err(Error::ApexInput("angle sum of the zero vector"));
    }
    Ok(book_angle(&BookCoord::radial_out(1.0), w) + book_angle(w, &BookCoord::radial_in(1.0)))
}

/// `(∠(V, Z), ∠(L_Z V, L_Z Z))`.
pub fn check_angle_to_z(cone: &Cone, v: &ConeVector, z: &ConeVector) -> Result<(f64, f64)> {
    let before = cone.angle_at_apex(v, z)?;
    let lv = limit_log(cone.graph(), z, v)?;
    let lz = limit_log(cone.graph(), z, z)?;
    Ok((before, book_angle(&lv, &lz)))
}

/// Angle and distance before and after the limit log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contraction {
    pub angle_before: f64,
    pub angle_after: f64,
    pub distance_before: f64,
    pub distance_after: f64,
}

impl Contraction {
    /// Largest amount by which the image is farther apart than the source.
    pub fn excess(&self) -> f64 {
        (self.angle_after - self.angle_before).max(self.distance_after - self.distance_before)
    }
}

pub fn check_contraction(cone: &Cone, v: &ConeVector, w: &ConeVector, z: &ConeVector) -> Result<Contraction> {
    let graph = cone.graph();
    let (lv, lw) = (limit_log(graph, z, v)?, limit_log(graph, z, w)?);
    Ok(Contraction {
        angle_before: cone.angle_at_apex(v, w)?,
        angle_after: book_angle(&lv, &lw),
        distance_before: cone.distance(v, w),
        distance_after: book_distance(&lv, &lw),
    })
}

/// Errors of the isometry claim for one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryCheck {
    pub contact: ShadowContact,
    pub distance_error: f64,
    pub angle_error: f64,
    /// Largest carrier distance between `L_Z(γ(s))` and the carrier geodesic
    /// between the images, over the sampled parameters.
    pub geodesic_error: f64,
}

impl IsometryCheck {
    pub fn error(&self) -> f64 {
        self.distance_error.max(self.angle_error).max(self.geodesic_error)
    }
}

/// Number of interior parameters sampled along each geodesic.
pub const GEODESIC_SAMPLES: usize = 32;

/// Compares the pair against its image, refusing pairs outside the
/// isometry regimes (disjoint with angle below π, endpoint touch, one
/// interior point).
pub fn check_isometry(cone: &Cone, v: &ConeVector, w: &ConeVector, z: &ConeVector) -> Result<IsometryCheck> {
    let shadow = Shadow::new(cone.graph(), z)?;
    check_isometry_with(cone, &shadow, v, w)
}

pub fn check_isometry_with(cone: &Cone, shadow: &Shadow, v: &ConeVector, w: &ConeVector) -> Result<IsometryCheck> {
    let contact = classify(cone, shadow, v, w)?;
    match contact {
        ShadowContact::Segment | ShadowContact::ApexPassingMiss => {
            return Err(Error::Hypothesis(format!("geodesic contact `{}`", contact.name())))
        }
        ShadowContact::Disjoint if cone.angle_at_apex(v, w)? >= PI => {
            return Err(Error::Hypothesis("angle between the vectors is pi".into()))
        }
        _ => {}
    }
    let graph = cone.graph();
    let z = shadow.z();
    let target = LimitTangentCone::new(graph, z)?;
    let (lv, lw) = (limit_log(graph, z, v)?, limit_log(graph, z, w)?);
    let distance_error = (cone.distance(v, w) - book_distance(&lv, &lw)).abs();
    let angle_error = (cone.angle_at_apex(v, w)? - book_angle(&lv, &lw)).abs();
    let source = cone.geodesic(v, w);
    let carrier = target.carrier();
    let image = carrier.geodesic(&target.embed(&lv), &target.embed(&lw));
    let mut geodesic_error: f64 = 0.0;
    for i in 1..=GEODESIC_SAMPLES {
        let s = i as f64 / (GEODESIC_SAMPLES + 1) as f64;
        let mapped = limit_log(graph, z, &source.eval(graph, s))?;
        let along = image.eval(carrier.graph(), s);
        geodesic_error = geodesic_error.max(carrier.distance(&target.embed(&mapped), &along));
    }
    Ok(IsometryCheck {
        contact,
        distance_error,
        angle_error,
        geodesic_error,
    })
}

/// Image gaps `‖L_Z(η_ε) − L_Z(η)‖` for directions `η_ε` at distance `ε`
/// from a shadow boundary point `η` along a germ leaving the shadow.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityCheck {
    pub point: GraphPoint,
    pub germ: Germ,
    /// `(ε, gap)` pairs in the order given.
    pub gaps: Vec<(f64, f64)>,
}

impl ContinuityCheck {
    pub fn monotone(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1].1 <= w[0].1)
    }

    pub fn final_gap(&self) -> f64 {
        self.gaps.last().map_or(0.0, |g| g.1)
    }

    pub fn passes(&self, final_tol: f64) -> bool {
        self.monotone() && self.final_gap() < final_tol
    }
}

pub fn check_continuity(
    graph: &MetricGraph,
    z: &ConeVector,
    point: GraphPoint,
    germ: Germ,
    offsets: &[f64],
) -> Result<ContinuityCheck> {
    let unit = |p: GraphPoint| ConeVector::new(p, 1.0).expect("unit radius");
    let limit = limit_log(graph, z, &unit(point))?;
    let reach = graph
        .germ_reach(point, germ)
        .ok_or_else(|| Error::InvalidPoint("germ does not start at the boundary point".into()))?;
    let mut gaps = Vec::with_capacity(offsets.len());
    for &eps in offsets {
        if eps > reach {
            return Err(Error::OutOfRange(format!("offset {eps} exceeds the edge reach {reach}")));
        }
        let p = graph.advance(point, germ, eps).expect("within reach");
        gaps.push((eps, book_distance(&limit_log(graph, z, &unit(p))?, &limit)));
    }
    Ok(ContinuityCheck { point, germ, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(c: f64) -> Cone {
        Cone::new(MetricGraph::new(["o"], [("e0".into(), "o".into(), "o".into(), c)]).unwrap())
    }

    fn quadrant() -> Cone {
        Cone::new(MetricGraph::parse("v x\nv y\ne e0 x y 3pi/2\n").unwrap())
    }

    fn at(cone: &Cone, offset: f64, r: f64) -> ConeVector {
        ConeVector::new(cone.graph().canonicalize(EdgeId(0), offset), r).unwrap()
    }

    #[test]
    fn quadrant_shadow() {
        let q = quadrant();
        let s = Shadow::new(q.graph(), &at(&q, 1.25 * PI, 1.0)).unwrap();
        assert_eq!(s.regions().len(), 1);
        let arc = s.regions()[0];
        assert_eq!(arc.lo, 0.0);
        assert!((arc.hi - PI / 4.0).abs() < 1e-15);
        assert!(s.contains(q.graph(), q.graph().canonicalize(EdgeId(0), 0.0)));
    }

    #[test]
    fn kale_shadow_is_antipodal_arc() {
        let k = circle(2.5 * PI);
        for zoff in [0.0, 0.3, 1.25 * PI, 2.4 * PI] {
            let s = Shadow::new(k.graph(), &at(&k, zoff, 2.0)).unwrap();
            assert!((s.measure() - PI / 2.0).abs() < 1e-14, "{zoff}: {s:?}");
        }
    }

    #[test]
    fn plane_shadow_is_the_antipode() {
        let p = circle(2.0 * PI);
        let s = Shadow::new(p.graph(), &at(&p, 0.4, 1.0)).unwrap();
        assert_eq!(s.measure(), 0.0);
        assert_eq!(s.regions().len(), 1);
        assert!(s.contains(p.graph(), p.graph().canonicalize(EdgeId(0), 0.4 + PI)));
    }

    #[test]
    fn shadow_endpoints_agree_with_pointwise_test() {
        let k = circle(2.5 * PI);
        let z = at(&k, 0.7, 1.0);
        let s = Shadow::new(k.graph(), &z).unwrap();
        for arc in s.regions() {
            for off in [arc.lo, arc.hi] {
                assert!(in_shadow(k.graph(), &at(&k, off, 1.0), &z).unwrap());
            }
            assert!(!in_shadow(k.graph(), &at(&k, arc.lo.next_down(), 1.0), &z).unwrap());
            assert!(!in_shadow(k.graph(), &at(&k, arc.hi.next_up(), 1.0), &z).unwrap());
        }
    }

    #[test]
    fn shadow_membership_edges() {
        let k = circle(2.5 * PI);
        let z = at(&k, 0.0, 1.0);
        assert!(!in_shadow(k.graph(), &z, &z).unwrap());
        assert!(in_shadow(k.graph(), &at(&k, PI, 1.0), &z).unwrap());
        assert!(in_shadow(k.graph(), &at(&k, 1.25 * PI, 1.0), &z).unwrap());
        assert!(in_shadow(k.graph(), &ConeVector::APEX, &z).is_err());
        assert!(Shadow::new(k.graph(), &ConeVector::APEX).is_err());
    }

    #[test]
    fn limit_log_examples() {
        let q = quadrant();
        let z = at(&q, 1.25 * PI, 1.0);
        assert_eq!(limit_log(q.graph(), &z, &z).unwrap(), BookCoord::radial_out(1.0));
        assert_eq!(limit_log(q.graph(), &z, &at(&q, 0.0, 2.0)).unwrap(), BookCoord::radial_in(2.0));
        let oy = limit_log(q.graph(), &z, &at(&q, 1.5 * PI, 1.0)).unwrap();
        assert_eq!(
            oy.page,
            Page::Germ(Germ {
                edge: EdgeId(0),
                orientation: Orientation::Forward
            })
        );
        assert!((oy.phi - PI / 4.0).abs() < 1e-15);
        assert_eq!(limit_log(q.graph(), &z, &ConeVector::APEX).unwrap(), BookCoord::ZERO);
    }

    #[test]
    fn limit_cone_pages() {
        let t = Cone::new(MetricGraph::parse("v c\nv a\nv b\nv d\ne e1 c a pi/2\ne e2 c b pi/2\ne e3 c d pi/2\n").unwrap());
        let center = ConeVector::new(t.graph().vertex_point(crate::graph::VertexId(0)), 1.0).unwrap();
        let cone = LimitTangentCone::new(t.graph(), &center).unwrap();
        assert_eq!(cone.book().page_count(), 3);
        assert_eq!(cone.carrier().graph().girth(), 2.0 * PI);
        assert_eq!(cone.angle(&cone.plus_spine(), &cone.minus_spine()), PI);
    }

    #[test]
    fn classification_regimes() {
        let k = circle(2.5 * PI);
        let z = at(&k, 0.0, 1.0);
        let c = |a: f64, b: f64| geodesic_shadow_classification(&k, &at(&k, a, 1.0), &at(&k, b, 2.0), &z).unwrap();
        assert_eq!(c(0.2, 1.2), ShadowContact::Disjoint);
        assert_eq!(c(PI, 0.5 * PI), ShadowContact::EndpointTouch);
        assert_eq!(c(1.1 * PI, 1.2 * PI), ShadowContact::Segment);
        assert_eq!(c(0.8 * PI, 1.3 * PI), ShadowContact::Segment);
        assert_eq!(c(0.4 * PI, 1.9 * PI), ShadowContact::ApexPassingMiss);
        assert_eq!(c(0.1, 0.1 + PI), ShadowContact::Segment);
        assert_eq!(c(0.0, 1.25 * PI), ShadowContact::Segment);
        let plane = circle(2.0 * PI);
        let zp = at(&plane, 0.0, 1.0);
        let v = at(&plane, PI - 0.3, 1.0);
        let w = at(&plane, PI + 0.4, 1.0);
        assert_eq!(
            geodesic_shadow_classification(&plane, &v, &w, &zp).unwrap(),
            ShadowContact::OneInteriorPoint
        );
    }

    #[test]
    fn apex_passing_miss_contracts_strictly() {
        let q = quadrant();
        let z = at(&q, 1.25 * PI, 1.0);
        let eps = 0.1;
        let v = at(&q, PI / 4.0 + eps, 1.0);
        let w = at(&q, 1.5 * PI, 1.0);
        assert_eq!(
            geodesic_shadow_classification(&q, &v, &w, &z).unwrap(),
            ShadowContact::ApexPassingMiss
        );
        let c = check_contraction(&q, &v, &w, &z).unwrap();
        assert_eq!(c.angle_before, PI);
        assert!((c.angle_after - (0.75 * PI + eps)).abs() < 1e-15);
        assert!(matches!(check_isometry(&q, &v, &w, &z), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn isometry_in_the_plane_across_the_antipode() {
        let plane = circle(2.0 * PI);
        let z = at(&plane, 0.0, 1.5);
        let v = at(&plane, PI - 0.3, 1.0);
        let w = at(&plane, PI + 0.4, 2.0);
        let check = check_isometry(&plane, &v, &w, &z).unwrap();
        assert_eq!(check.contact, ShadowContact::OneInteriorPoint);
        assert!(check.error() < 1e-12, "{check:?}");
    }

    #[test]
    fn shadow_vectors_collapse() {
        let k = circle(2.5 * PI);
        let z = at(&k, 0.0, 1.0);
        let a = limit_log(k.graph(), &z, &at(&k, 1.05 * PI, 3.0)).unwrap();
        let b = limit_log(k.graph(), &z, &at(&k, 1.4 * PI, 3.0)).unwrap();
        assert_eq!(a, b);
        let c = check_contraction(&k, &at(&k, 1.05 * PI, 3.0), &at(&k, 1.4 * PI, 3.0), &z).unwrap();
        assert_eq!(c.angle_after, 0.0);
    }

    #[test]
    fn sum_pi_and_angle_to_z() {
        assert_eq!(check_sum_pi(&BookCoord::radial_out(1.0)).unwrap(), PI);
        let g = Page::Germ(Germ {
            edge: EdgeId(0),
            orientation: Orientation::Forward,
        });
        let w = BookCoord::new(g, PI / 3.0, 2.0).unwrap();
        assert!((check_sum_pi(&w).unwrap() - PI).abs() < 1e-15);
        let k = circle(2.5 * PI);
        let z = at(&k, 0.0, 1.0);
        assert_eq!(check_angle_to_z(&k, &z, &z).unwrap(), (0.0, 0.0));
        assert_eq!(check_angle_to_z(&k, &at(&k, 1.2 * PI, 1.0), &z).unwrap(), (PI, PI));
    }

    #[test]
    fn continuity_at_the_boundary() {
        let k = circle(2.5 * PI);
        let z = at(&k, 0.0, 1.0);
        let s = Shadow::new(k.graph(), &z).unwrap();
        let boundary = s.boundary(k.graph());
        assert_eq!(boundary.len(), 2);
        let offsets: Vec<f64> = (1..=7).map(|i| 10f64.powi(-i)).collect();
        for (p, g) in boundary {
            let check = check_continuity(k.graph(), &z, p, g, &offsets).unwrap();
            assert!(check.passes(1e-6), "{check:?}");
        }
    }
}
