// SPDX-License-Identifier: Apache-2.0

//! Tangent cones at non-apex points.
//!
//! Near a point `z` with direction `x = dir z`, the cone is a union of flat
//! sectors, one per edge germ at `x`, glued along the ray through `z`. The
//! tangent cone at `z` is therefore an open book: half-planes (pages) glued
//! along the radial line. A tangent vector is written `(page, φ, m)` where `φ`
//! is measured from the outward radial direction, so `φ = 0` points away from
//! the apex and `φ = π` points at it. Both radial directions lie on the spine
//! and carry no page.

use std::f64::consts::PI;

use crate::cone::{Cone, ConeVector};
use crate::error::{Error, Result};
use crate::graph::{GraphPath, Germ, MetricGraph};
use crate::syntax::format_page;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Page {
    /// The spine; used for `φ ∈ {0, π}` and for the zero vector.
    Radial,
    Germ(Germ),
}

/// Open-book coordinates `(page, φ, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BookCoord {
    pub page: Page,
    pub phi: f64,
    pub magnitude: f64,
}

impl BookCoord {
    pub const ZERO: BookCoord = BookCoord {
        page: Page::Radial,
        phi: 0.0,
        magnitude: 0.0,
    };

    /// Validates and canonicalizes: spine angles drop their page and the
    /// zero vector forgets page and angle.
    pub fn new(page: Page, phi: f64, magnitude: f64) -> Result<Self> {
        if !(magnitude.is_finite() && magnitude >= 0.0) {
            return Err(Error::InvalidPoint(format!("magnitude {magnitude} must be finite and >= 0")));
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(Error::InvalidPoint(format!("polar angle {phi} outside [0, pi]")));
        }
        if magnitude == 0.0 {
            return Ok(Self::ZERO);
        }
        if phi == 0.0 || phi == PI {
            return Ok(BookCoord {
                page: Page::Radial,
                phi,
                magnitude,
            });
        }
        if page == Page::Radial {
            return Err(Error::InvalidPoint(format!(
                "polar angle {phi} is off the spine and needs a page"
            )));
        }
        Ok(BookCoord {
            page,
            phi,
            magnitude,
        })
    }

    pub fn radial_out(magnitude: f64) -> Self {
        Self::new(Page::Radial, 0.0, magnitude).expect("valid radial coordinate")
    }

    pub fn radial_in(magnitude: f64) -> Self {
        Self::new(Page::Radial, PI, magnitude).expect("valid radial coordinate")
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude == 0.0
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.page, self.phi, self.magnitude * c).unwrap_or(Self::ZERO)
    }
}

/// Angle between two nonzero open-book vectors.
pub fn book_angle(a: &BookCoord, b: &BookCoord) -> f64 {
    match (a.page, b.page) {
        (Page::Germ(p), Page::Germ(q)) if p != q => (a.phi + b.phi).min(2.0 * PI - a.phi - b.phi),
        _ => (a.phi - b.phi).abs(),
    }
    .min(PI)
}

/// Conical distance between two open-book vectors.
pub fn book_distance(a: &BookCoord, b: &BookCoord) -> f64 {
    if a.is_zero() || b.is_zero() {
        return (a.magnitude - b.magnitude).abs();
    }
    let half = (0.5 * book_angle(a, b)).sin();
    let dm = a.magnitude - b.magnitude;
    (dm * dm + 4.0 * a.magnitude * b.magnitude * half * half).sqrt()
}

/// A tangent vector at a non-apex point of the cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentAtPoint {
    base: ConeVector,
    coord: BookCoord,
}

impl TangentAtPoint {
    pub fn new(graph: &MetricGraph, base: ConeVector, coord: BookCoord) -> Result<Self> {
        let dir = *base
            .dir()
            .ok_or(Error::ApexInput("tangent vectors need a non-apex base"))?;
        if let Page::Germ(g) = coord.page {
            if !graph.germs_at(dir).contains(&g) {
                return Err(Error::InvalidPoint(format!(
                    "page {} is not a germ at the base direction",
                    format_page(graph, &coord.page)
                )));
            }
        }
        Ok(TangentAtPoint { base, coord })
    }

    pub fn base(&self) -> &ConeVector {
        &self.base
    }

    pub fn coord(&self) -> &BookCoord {
        &self.coord
    }

    pub fn magnitude(&self) -> f64 {
        self.coord.magnitude
    }

    pub fn scaled(&self, c: f64) -> Self {
        TangentAtPoint {
            base: self.base,
            coord: self.coord.scaled(c),
        }
    }

    fn rebased(&self, base: ConeVector) -> Self {
        TangentAtPoint {
            base,
            coord: self.coord,
        }
    }
}

/// The cone over the theta graph `Θ_k`: two poles `+` and `-` joined by one
/// arc of length π per page. Models the tangent cone at a non-apex point and
/// the limit tangent cone.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenBook {
    pages: Vec<Germ>,
    carrier: Cone,
}

impl OpenBook {
    /// Builds `Θ_k` with arcs named after the germs of `graph`.
    pub fn new(graph: &MetricGraph, pages: Vec<Germ>) -> Self {
        let arcs = pages.iter().map(|g| {
            (
                format_page(graph, &Page::Germ(*g)),
                "+".to_string(),
                "-".to_string(),
                PI,
            )
        });
        let theta = if pages.is_empty() {
            MetricGraph::new(["+", "-"], [("spine".to_string(), "+".into(), "-".into(), PI)])
        } else {
            MetricGraph::new(["+", "-"], arcs)
        }
        .expect("theta graph is valid");
        OpenBook {
            pages,
            carrier: Cone::new(theta),
        }
    }

    pub fn pages(&self) -> &[Germ] {
        &self.pages
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    /// The theta graph.
    pub fn theta(&self) -> &MetricGraph {
        self.carrier.graph()
    }

    /// The cone over the theta graph.
    pub fn carrier(&self) -> &Cone {
        &self.carrier
    }

    /// The point of the carrier cone with coordinates `c`.
    pub fn embed(&self, c: &BookCoord) -> Result<ConeVector> {
        let theta = self.carrier.graph();
        let dir = match c.page {
            _ if c.is_zero() => return Ok(ConeVector::APEX),
            Page::Radial if c.phi == 0.0 => theta.vertex_point(theta.vertex_by_name("+").expect("pole")),
            Page::Radial => theta.vertex_point(theta.vertex_by_name("-").expect("pole")),
            Page::Germ(g) => {
                let i = self
                    .pages
                    .iter()
                    .position(|p| *p == g)
                    .ok_or_else(|| Error::InvalidPoint("page is not part of this open book".into()))?;
                theta.point(crate::graph::EdgeId(i), c.phi)?
            }
        };
        ConeVector::new(dir, c.magnitude)
    }

    pub fn angle(&self, a: &BookCoord, b: &BookCoord) -> f64 {
        book_angle(a, b)
    }

    pub fn distance(&self, a: &BookCoord, b: &BookCoord) -> f64 {
        book_distance(a, b)
    }
}

/// `Θ_k` at `dir z`, with one page per edge germ.
pub fn tangent_sphere_at(graph: &MetricGraph, z: &ConeVector) -> Result<OpenBook> {
    let dir = *z.dir().ok_or(Error::ApexInput("tangent sphere at the apex"))?;
    Ok(OpenBook::new(graph, graph.germs_at(dir)))
}

/// Angle at the common base of two nonzero tangent vectors.
pub fn angle_at(u1: &TangentAtPoint, u2: &TangentAtPoint) -> Result<f64> {
    if u1.base != u2.base {
        return Err(Error::BaseMismatch);
    }
    if u1.coord.is_zero() || u2.coord.is_zero() {
        return Err(Error::ApexInput("angle needs nonzero tangent vectors"));
    }
    Ok(book_angle(&u1.coord, &u2.coord))
}

/// The tangent at `z` of the geodesic to `w`, with magnitude `d(z, w)`.
pub fn log_at(cone: &Cone, z: &ConeVector, w: &ConeVector) -> Result<TangentAtPoint> {
    let graph = cone.graph();
    let zdir = *z.dir().ok_or(Error::ApexInput("log at the apex"))?;
    let (rz, rw) = (z.norm(), w.norm());
    let coord = match w.dir() {
        None => BookCoord::radial_in(rz),
        Some(&wdir) => {
            let path = graph.shortest_path(zdir, wdir);
            let theta = path.length;
            if theta >= PI {
                BookCoord::radial_in(rz + rw)
            } else if theta == 0.0 {
                if rw == rz {
                    return Err(Error::InvalidPoint("log of the base point itself".into()));
                }
                if rw > rz {
                    BookCoord::radial_out(rw - rz)
                } else {
                    BookCoord::radial_in(rz - rw)
                }
            } else {
                let (x, y) = (rw * theta.cos() - rz, rw * theta.sin());
                let phi = y.atan2(x);
                BookCoord::new(Page::Germ(path.initial_direction()?), phi, cone.distance(z, w))?
            }
        }
    };
    TangentAtPoint::new(graph, *z, coord)
}

/// Largest magnitude for which [`exp_at`] accepts a vector with the page and
/// angle of `u`: the developed segment must stay in the flat sector of its
/// page and must not pass through the apex.
pub fn exp_validity_radius(graph: &MetricGraph, u: &TangentAtPoint) -> f64 {
    let rz = u.base.norm();
    let dir = *u.base.dir().expect("tangent base is not the apex");
    match u.coord.page {
        Page::Radial if u.coord.phi == 0.0 => f64::INFINITY,
        Page::Radial => rz,
        Page::Germ(g) => {
            let reach = graph.germ_reach(dir, g).expect("page is a germ at the base");
            let phi = u.coord.phi;
            if phi <= reach {
                f64::INFINITY
            } else {
                rz * reach.sin() / (phi - reach).sin()
            }
        }
    }
}

pub fn exp_at(cone: &Cone, u: &TangentAtPoint) -> Result<ConeVector> {
    let graph = cone.graph();
    let z = u.base;
    let dir = *z.dir().expect("tangent base is not the apex");
    let rz = z.norm();
    let BookCoord {
        page,
        phi,
        magnitude: m,
    } = u.coord;
    if m == 0.0 {
        return Ok(z);
    }
    match page {
        Page::Radial if phi == 0.0 => ConeVector::new(dir, rz + m),
        Page::Radial => {
            if m > rz {
                return Err(Error::OutOfRange(format!(
                    "inward radial step {m} passes the apex at distance {rz}"
                )));
            }
            ConeVector::new(dir, rz - m)
        }
        Page::Germ(g) => {
            let reach = graph.germ_reach(dir, g).expect("page is a germ at the base");
            let (x, y) = (rz + m * phi.cos(), m * phi.sin());
            let alpha = y.atan2(x);
            if alpha > reach {
                return Err(Error::OutOfRange(format!(
                    "segment turns by {alpha} but the page is flat only up to {reach}"
                )));
            }
            let target = graph.advance(dir, g, alpha).expect("within reach");
            let d = graph.distance(dir, target);
            if d < alpha - 1e-12 * alpha.max(1.0) {
                return Err(Error::OutOfRange(format!(
                    "arc of length {alpha} along the page is not a shortest path"
                )));
            }
            ConeVector::new(target, x.hypot(y))
        }
    }
}

/// Transports `u` from `q` to `z` along their common ray. The open-book
/// coordinates are unchanged.
pub fn radial_transport(
    graph: &MetricGraph,
    q: &ConeVector,
    z: &ConeVector,
    u: &TangentAtPoint,
) -> Result<TangentAtPoint> {
    let (qd, zd) = match (q.dir(), z.dir()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Err(Error::ApexInput("radial transport between non-apex points")),
    };
    if graph.canonical(qd) != graph.canonical(zd) {
        return Err(Error::NotOnCommonRay);
    }
    if u.base != *q {
        return Err(Error::BaseMismatch);
    }
    Ok(u.rebased(*z))
}

/// Transport of `V ∈ T_O X` to the tangent cone at `Z`. Directions at angular
/// distance `>= π` all land on the inward spine.
pub fn radial_transport_from_apex(graph: &MetricGraph, z: &ConeVector, v: &ConeVector) -> Result<TangentAtPoint> {
    let coord = apex_coordinates(graph, z, v)?;
    TangentAtPoint::new(graph, *z, coord)
}

pub(crate) fn apex_coordinates(graph: &MetricGraph, z: &ConeVector, v: &ConeVector) -> Result<BookCoord> {
    let zdir = *z.dir().ok_or(Error::ApexInput("transport to the apex"))?;
    let vdir = match v.dir() {
        Some(d) => *d,
        None => return Ok(BookCoord::ZERO),
    };
    let path = graph.shortest_path(zdir, vdir);
    let theta = path.length;
    if theta >= PI {
        Ok(BookCoord::radial_in(v.norm()))
    } else if theta == 0.0 {
        Ok(BookCoord::radial_out(v.norm()))
    } else {
        BookCoord::new(Page::Germ(path.initial_direction()?), theta, v.norm())
    }
}

/// Result of comparing coordinate transport against the similar-triangle
/// construction for one pair of tangent vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordCheck {
    /// Angle at `q` before transport.
    pub angle_before: f64,
    /// Angle at `z` after coordinate transport.
    pub angle_after: f64,
    /// Angle at `z` between the chords to the scaled endpoints.
    pub angle_chord: f64,
    /// Largest coordinate difference between a transported vector and the
    /// direction of its scaled chord.
    pub coordinate_error: f64,
}

impl ChordCheck {
    pub fn error(&self) -> f64 {
        (self.angle_after - self.angle_chord)
            .abs()
            .max((self.angle_before - self.angle_after).abs())
            .max(self.coordinate_error)
    }
}

/// Checks that radial transport preserves angles by the chord construction:
/// step along each vector from `q`, scale the endpoints by `‖z‖/‖q‖`, and
/// read off the direction of each chord at `z` from the developed sector.
pub fn transport_chord_check(
    cone: &Cone,
    q: &ConeVector,
    z: &ConeVector,
    u1: &TangentAtPoint,
    u2: &TangentAtPoint,
) -> Result<ChordCheck> {
    let graph = cone.graph();
    let angle_before = angle_at(u1, u2)?;
    let t1 = radial_transport(graph, q, z, u1)?;
    let t2 = radial_transport(graph, q, z, u2)?;
    let angle_after = angle_at(&t1, &t2)?;
    let c = z.norm() / q.norm();
    let zdir = *z.dir().expect("checked by transport");
    let chord = |u: &TangentAtPoint| -> Result<BookCoord> {
        let step = (0.5 * q.norm()).min(0.9 * exp_validity_radius(graph, u));
        let end = exp_at(cone, &TangentAtPoint { base: *q, coord: BookCoord { magnitude: step, ..u.coord } })?;
        let end = end.scale(c);
        let alpha = graph.distance(zdir, *end.dir().expect("nonzero step"));
        let (x, y) = (end.norm() * alpha.cos() - z.norm(), end.norm() * alpha.sin());
        let phi = y.atan2(x);
        let page = if alpha > 0.0 {
            Page::Germ(graph.shortest_path(zdir, *end.dir().unwrap()).initial_direction()?)
        } else {
            Page::Radial
        };
        BookCoord::new(page, phi.clamp(0.0, PI), 1.0)
    };
    let (c1, c2) = (chord(u1)?, chord(u2)?);
    let coord_err = |t: &TangentAtPoint, c: &BookCoord| {
        if t.coord.page == c.page || t.coord.page == Page::Radial || c.page == Page::Radial {
            (t.coord.phi - c.phi).abs()
        } else {
            f64::INFINITY
        }
    };
    Ok(ChordCheck {
        angle_before,
        angle_after,
        angle_chord: book_angle(&c1, &c2),
        coordinate_error: coord_err(&t1, &c1).max(coord_err(&t2, &c2)),
    })
}

/// One-sided derivative check of `t ↦ d(p, exp_q(tU))` at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstVariation {
    pub finite_difference: f64,
    /// `−cos∠(log_q p, U)`.
    pub predicted: f64,
    /// Step actually used.
    pub h: f64,
}

impl FirstVariation {
    pub fn error(&self) -> f64 {
        (self.finite_difference - self.predicted).abs()
    }
}

pub fn first_variation_check(cone: &Cone, p: &ConeVector, u: &TangentAtPoint, h_min: f64) -> Result<FirstVariation> {
    let q = u.base;
    if cone.distance(p, &q) == 0.0 {
        return Err(Error::InvalidPoint("first variation needs p != q".into()));
    }
    if (u.magnitude() - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(u.magnitude()));
    }
    let toward_p = log_at(cone, &q, p)?;
    let predicted = -angle_at(&toward_p, u)?.cos();
    let mut h = h_min;
    let radius = exp_validity_radius(cone.graph(), u);
    while h > radius {
        h *= 0.5;
    }
    let moved = loop {
        match exp_at(cone, &u.scaled(h)) {
            Ok(x) => break x,
            Err(Error::OutOfRange(_)) if h > 1e-15 => h *= 0.5,
            Err(e) => return Err(e),
        }
    };
    let finite_difference = (cone.distance(p, &moved) - cone.distance(p, &q)) / h;
    Ok(FirstVariation {
        finite_difference,
        predicted,
        h,
    })
}

#[derive(Debug, Clone, PartialEq)]
enum RayKind {
    /// `θ < π`: a straight ray in the developed strip over `path`.
    Straight { path: GraphPath, theta: f64 },
    /// `θ >= π`: into the apex, then out along `V`.
    ThroughApex,
}

/// The ray from `z` parallel to the ray `t ↦ tV` from the apex.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelRay {
    pub start: ConeVector,
    pub direction: ConeVector,
    kind: RayKind,
}

impl ParallelRay {
    pub fn passes_through_apex(&self) -> bool {
        self.kind == RayKind::ThroughApex
    }

    /// Unit-speed evaluation.
    pub fn eval(&self, graph: &MetricGraph, t: f64) -> ConeVector {
        let rz = self.start.norm();
        let zdir = *self.start.dir().expect("ray starts off the apex");
        match &self.kind {
            RayKind::Straight { path, theta } => {
                if t <= 0.0 {
                    return self.start;
                }
                let (x, y) = (rz + t * theta.cos(), t * theta.sin());
                let alpha = y.atan2(x).min(*theta);
                ConeVector::new(path.point_at(graph, alpha), x.hypot(y)).expect("positive radius")
            }
            RayKind::ThroughApex => {
                if t <= rz {
                    ConeVector::new(zdir, rz - t).expect("radius in range")
                } else {
                    self.direction.scale(t - rz)
                }
            }
        }
    }
}

pub fn parallel_ray_from(cone: &Cone, z: &ConeVector, v: &ConeVector) -> Result<ParallelRay> {
    let zdir = *z.dir().ok_or(Error::ApexInput("parallel ray from the apex"))?;
    let vdir = *v.dir().ok_or(Error::NotUnit(0.0))?;
    if (v.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(v.norm()));
    }
    let path = cone.graph().shortest_path(zdir, vdir);
    let kind = if path.length >= PI {
        RayKind::ThroughApex
    } else {
        let theta = path.length;
        RayKind::Straight { path, theta }
    };
    Ok(ParallelRay {
        start: *z,
        direction: *v,
        kind,
    })
}

/// Sampled distance between two rays.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    /// `(t, f(t))` pairs.
    pub samples: Vec<(f64, f64)>,
    pub min: f64,
    pub max: f64,
}

impl DistanceProfile {
    fn from_samples(samples: Vec<(f64, f64)>) -> Self {
        let min = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        let max = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
        DistanceProfile { samples, min, max }
    }

    pub fn spread(&self) -> f64 {
        self.max - self.min
    }

    pub fn is_constant(&self) -> bool {
        self.spread() <= 1e-9
    }
}

fn sample_times(t_max: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| t_max * i as f64 / (n - 1) as f64)
}

/// `f(t) = d(ray_z(t), tV)` for the parallel ray from `z`.
pub fn parallel_distance_profile(cone: &Cone, z: &ConeVector, v: &ConeVector, t_max: f64, n: usize) -> Result<DistanceProfile> {
    let ray = parallel_ray_from(cone, z, v)?;
    let samples = sample_times(t_max, n)
        .map(|t| (t, cone.distance(&ray.eval(cone.graph(), t), &v.scale(t))))
        .collect();
    Ok(DistanceProfile::from_samples(samples))
}

/// `f(t) = d(ray_q(t), ray_p(t))` for the rays from `q` and `p` that are
/// both parallel to `t ↦ tV`.
pub fn parallel_pair_profile(
    cone: &Cone,
    p: &ConeVector,
    q: &ConeVector,
    v: &ConeVector,
    t_max: f64,
    n: usize,
) -> Result<DistanceProfile> {
    let rp = parallel_ray_from(cone, p, v)?;
    let rq = parallel_ray_from(cone, q, v)?;
    let samples = sample_times(t_max, n)
        .map(|t| (t, cone.distance(&rq.eval(cone.graph(), t), &rp.eval(cone.graph(), t))))
        .collect();
    Ok(DistanceProfile::from_samples(samples))
}
