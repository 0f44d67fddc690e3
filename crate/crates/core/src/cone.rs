// SPDX-License-Identifier: Apache-2.0

//! The Euclidean cone over a metric graph.
//!
//! A [`ConeVector`] is a direction in the graph together with a radius. The
//! cone carries the conical metric
//!
//! ```text
//! d(V, W)² = ‖V‖² + ‖W‖² − 2‖V‖‖W‖cos∠(V, W),   ∠(V, W) = min(d_s, π)
//! ```
//!
//! which is evaluated in the cancellation-free form
//! `(‖V‖ − ‖W‖)² + 4‖V‖‖W‖sin²(∠/2)`. Triangles with a vertex at the apex are
//! flat, so geodesics are computed by developing the sector spanned by the
//! direction path into the plane.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GraphPath, GraphPoint, MetricGraph};
use crate::sample::{random_vector, trial_rng};

/// A point of the cone, equivalently a tangent vector at the apex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeVector {
    dir: Option<GraphPoint>,
    norm: f64,
}

impl ConeVector {
    pub const APEX: ConeVector = ConeVector {
        dir: None,
        norm: 0.0,
    };

    pub fn new(dir: GraphPoint, norm: f64) -> Result<Self> {
        if !(norm.is_finite() && norm >= 0.0) {
            return Err(Error::InvalidPoint(format!("radius {norm} must be finite and >= 0")));
        }
        Ok(if norm == 0.0 {
            Self::APEX
        } else {
            ConeVector {
                dir: Some(dir),
                norm,
            }
        })
    }

    /// Direction of a non-apex vector.
    pub fn dir(&self) -> Option<&GraphPoint> {
        self.dir.as_ref()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn is_apex(&self) -> bool {
        self.dir.is_none()
    }

    /// `c·(dir, r) = (dir, c·r)` for `c >= 0`.
    pub fn scale(&self, c: f64) -> Self {
        match self.dir {
            Some(dir) => ConeVector::new(dir, self.norm * c).unwrap_or(Self::APEX),
            None => Self::APEX,
        }
    }

    pub fn unit(&self) -> Option<Self> {
        self.dir.map(|dir| ConeVector { dir: Some(dir), norm: 1.0 })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeodesicKind {
    /// Angle below π: a chord in the developed flat sector over `path`.
    Straight { path: GraphPath, angle: f64 },
    /// Angle π: the concatenation `V → O → W`.
    ThroughApex,
    /// One endpoint is the apex; the geodesic runs along a single ray.
    Radial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeGeodesic {
    pub start: ConeVector,
    pub end: ConeVector,
    pub kind: GeodesicKind,
    pub length: f64,
}

impl ConeGeodesic {
    /// Point at parameter `t ∈ [0, 1]` (constant speed).
    pub fn eval(&self, graph: &MetricGraph, t: f64) -> ConeVector {
        let t = t.clamp(0.0, 1.0);
        if t == 0.0 {
            return self.start;
        }
        if t == 1.0 {
            return self.end;
        }
        let (rv, rw) = (self.start.norm, self.end.norm);
        match &self.kind {
            GeodesicKind::Straight { path, angle } => {
                let x = (1.0 - t) * rv + t * rw * angle.cos();
                let y = t * rw * angle.sin();
                let alpha = y.atan2(x).clamp(0.0, *angle);
                let dir = path.point_at(graph, alpha);
                ConeVector::new(dir, x.hypot(y)).unwrap_or(ConeVector::APEX)
            }
            GeodesicKind::ThroughApex => {
                let s = t * (rv + rw);
                if s <= rv {
                    self.start.scale((rv - s) / rv)
                } else {
                    self.end.scale((s - rv) / rw)
                }
            }
            GeodesicKind::Radial => {
                let r = (1.0 - t) * rv + t * rw;
                match (self.start.dir, self.end.dir) {
                    (Some(dir), _) | (None, Some(dir)) => {
                        ConeVector::new(dir, r).unwrap_or(ConeVector::APEX)
                    }
                    (None, None) => ConeVector::APEX,
                }
            }
        }
    }
}

/// Outcome of the scaling check for a pair of vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingCheck {
    /// `|d(tV, tW) − t·d(V, W)|`.
    pub distance_error: f64,
    /// Largest distance between `t·γ(s)` and the geodesic of the scaled
    /// endpoints at `s`, over the sampled parameters.
    pub geodesic_error: f64,
}

impl ScalingCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.distance_error <= tol && self.geodesic_error <= tol
    }
}

/// One sampled triangle that violates the comparison inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonWitness {
    pub trial: u64,
    pub x: ConeVector,
    pub y: ConeVector,
    pub z: ConeVector,
    pub t: f64,
    /// `d(x, γ(t))` in the cone.
    pub actual: f64,
    /// Distance in the planar comparison triangle.
    pub comparison: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub violations: Vec<ComparisonWitness>,
    /// Largest observed `actual − comparison`.
    pub max_excess: f64,
}

impl ComparisonReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Planar comparison distance from `x'` to the point at `t` on `y'z'`,
/// given the three side lengths (Stewart's theorem).
pub fn planar_comparison(dxy: f64, dxz: f64, dyz: f64, t: f64) -> f64 {
    ((1.0 - t) * dxy * dxy + t * dxz * dxz - t * (1.0 - t) * dyz * dyz)
        .max(0.0)
        .sqrt()
}

/// The Euclidean cone `C(G)` over a metric graph `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cone {
    graph: MetricGraph,
}

impl Cone {
    pub fn new(graph: MetricGraph) -> Self {
        Cone { graph }
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn into_graph(self) -> MetricGraph {
        self.graph
    }

    /// Uncapped angular distance `d_s` between the directions of two
    /// non-apex vectors.
    pub fn direction_distance(&self, v: &ConeVector, w: &ConeVector) -> Result<f64> {
        match (v.dir, w.dir) {
            (Some(a), Some(b)) => Ok(self.graph.distance(a, b)),
            _ => Err(Error::ApexInput("angle at the apex needs two nonzero vectors")),
        }
    }

    /// Angle at the apex, `min(d_s, π)`.
    pub fn angle_at_apex(&self, v: &ConeVector, w: &ConeVector) -> Result<f64> {
        Ok(self.direction_distance(v, w)?.min(PI))
    }

    /// `⟨V, W⟩ = ‖V‖‖W‖cos∠(V, W)`; zero when either vector is the apex.
    pub fn inner_product(&self, v: &ConeVector, w: &ConeVector) -> f64 {
        match self.angle_at_apex(v, w) {
            Ok(angle) => v.norm * w.norm * angle.cos(),
            Err(_) => 0.0,
        }
    }

    pub fn distance(&self, v: &ConeVector, w: &ConeVector) -> f64 {
        match self.angle_at_apex(v, w) {
            Ok(angle) => {
                let half = (0.5 * angle).sin();
                let dr = v.norm - w.norm;
                (dr * dr + 4.0 * v.norm * w.norm * half * half).sqrt()
            }
            Err(_) => (v.norm - w.norm).abs(),
        }
    }

    pub fn geodesic(&self, v: &ConeVector, w: &ConeVector) -> ConeGeodesic {
        let length = self.distance(v, w);
        let kind = match (v.dir, w.dir) {
            (Some(a), Some(b)) => {
                let path = self.graph.shortest_path(a, b);
                if path.length >= PI {
                    GeodesicKind::ThroughApex
                } else {
                    let angle = path.length;
                    GeodesicKind::Straight { path, angle }
                }
            }
            _ => GeodesicKind::Radial,
        };
        ConeGeodesic {
            start: *v,
            end: *w,
            kind,
            length,
        }
    }

    /// The log map at the apex. The cone is its own tangent cone at the
    /// apex, so this is the identity on representations.
    pub fn log_apex(&self, x: &ConeVector) -> ConeVector {
        *x
    }

    /// Inverse of [`Cone::log_apex`].
    pub fn exp_apex(&self, v: &ConeVector) -> ConeVector {
        *v
    }

    /// Compares `d(tV, tW)` against `t·d(V, W)` and `t·γ(s)` against the
    /// geodesic between `tV` and `tW` at `samples` interior parameters.
    pub fn scaled_geodesic_check(&self, v: &ConeVector, w: &ConeVector, t: f64, samples: usize) -> ScalingCheck {
        let (tv, tw) = (v.scale(t), w.scale(t));
        let distance_error = (self.distance(&tv, &tw) - t * self.distance(v, w)).abs();
        let full = self.geodesic(v, w);
        let scaled = self.geodesic(&tv, &tw);
        let mut geodesic_error: f64 = 0.0;
        for i in 0..=samples {
            let s = i as f64 / samples as f64;
            let a = full.eval(&self.graph, s).scale(t);
            let b = scaled.eval(&self.graph, s);
            geodesic_error = geodesic_error.max(self.distance(&a, &b));
        }
        ScalingCheck {
            distance_error,
            geodesic_error,
        }
    }

    /// Samples random triangles and parameters and checks
    /// `d(x, γ(t)) <= d₀(x', γ'(t))` against the planar comparison triangle.
    pub fn cat0_comparison_check(&self, trials: u64, seed: u64, tol: f64) -> ComparisonReport {
        let outcomes: Vec<(f64, Option<ComparisonWitness>)> = (0..trials)
            .into_par_iter()
            .map(|trial| self.comparison_trial(seed, trial, tol))
            .collect();
        let max_excess = outcomes
            .iter()
            .map(|o| o.0)
            .fold(f64::NEG_INFINITY, f64::max);
        ComparisonReport {
            trials,
            seed,
            tolerance: tol,
            violations: outcomes.into_iter().filter_map(|o| o.1).collect(),
            max_excess,
        }
    }

    /// Replays a single trial of [`Cone::cat0_comparison_check`].
    pub fn comparison_trial(&self, seed: u64, trial: u64, tol: f64) -> (f64, Option<ComparisonWitness>) {
        let mut rng = trial_rng(seed, trial);
        let x = random_vector(&self.graph, &mut rng, 0.0, 2.0);
        let y = random_vector(&self.graph, &mut rng, 0.0, 2.0);
        let z = random_vector(&self.graph, &mut rng, 0.0, 2.0);
        let t: f64 = rand::Rng::gen_range(&mut rng, 0.0..=1.0);
        let gamma = self.geodesic(&y, &z);
        let actual = self.distance(&x, &gamma.eval(&self.graph, t));
        let comparison = planar_comparison(
            self.distance(&x, &y),
            self.distance(&x, &z),
            self.distance(&y, &z),
            t,
        );
        let excess = actual - comparison;
        let witness = (excess > tol).then_some(ComparisonWitness {
            trial,
            x,
            y,
            z,
            t,
            actual,
            comparison,
        });
        (excess, witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    fn circle(c: f64) -> Cone {
        Cone::new(MetricGraph::new(["o"], [("e0".into(), "o".into(), "o".into(), c)]).unwrap())
    }

    fn vec_at(cone: &Cone, offset: f64, r: f64) -> ConeVector {
        ConeVector::new(cone.graph().point(EdgeId(0), offset).unwrap(), r).unwrap()
    }

    #[test]
    fn angles_are_capped() {
        let k = circle(2.5 * PI);
        let a = vec_at(&k, 0.0, 1.0);
        assert_eq!(k.angle_at_apex(&a, &vec_at(&k, 0.0, 7.0)).unwrap(), 0.0);
        assert_eq!(k.angle_at_apex(&a, &vec_at(&k, PI / 2.0, 1.0)).unwrap(), PI / 2.0);
        assert_eq!(k.angle_at_apex(&a, &vec_at(&k, 1.25 * PI, 1.0)).unwrap(), PI);
        assert!(matches!(
            k.angle_at_apex(&a, &ConeVector::APEX),
            Err(Error::ApexInput(_))
        ));
    }

    #[test]
    fn inner_products() {
        let k = circle(2.5 * PI);
        let v = vec_at(&k, 0.0, 3.0);
        let w = vec_at(&k, PI / 2.0, 4.0);
        assert!(k.inner_product(&v, &w).abs() < 1e-15);
        let v2 = vec_at(&k, 1.0, 2.0);
        assert_eq!(k.inner_product(&v2, &v2), 4.0);
        let a = vec_at(&k, 0.0, 1.0);
        let b = vec_at(&k, 1.25 * PI, 2.0);
        assert_eq!(k.inner_product(&a, &b), -2.0);
        assert_eq!(k.inner_product(&a, &ConeVector::APEX), 0.0);
    }

    #[test]
    fn distances() {
        let k = circle(2.5 * PI);
        let v = vec_at(&k, 0.0, 3.0);
        let w = vec_at(&k, PI / 2.0, 4.0);
        assert!((k.distance(&v, &w) - 5.0).abs() < 1e-14);
        let far = vec_at(&k, 1.25 * PI, 4.0);
        assert_eq!(k.distance(&v, &far), 7.0);
        assert_eq!(k.distance(&v, &v), 0.0);
        assert_eq!(k.distance(&v, &ConeVector::APEX), 3.0);
    }

    #[test]
    fn planar_chord_midpoint() {
        let plane = circle(2.0 * PI);
        let v = vec_at(&plane, 0.0, 1.0);
        let w = vec_at(&plane, PI / 2.0, 1.0);
        let mid = plane.geodesic(&v, &w).eval(plane.graph(), 0.5);
        let expected = vec_at(&plane, PI / 4.0, (PI / 4.0).cos());
        assert!(plane.distance(&mid, &expected) < 1e-15);
        match mid.dir().unwrap() {
            GraphPoint::Edge { offset, .. } => assert!((offset - PI / 4.0).abs() < 1e-15),
            other => panic!("unexpected direction {other:?}"),
        }
    }

    #[test]
    fn antipodal_midpoint_is_apex() {
        let plane = circle(2.0 * PI);
        let v = vec_at(&plane, 0.0, 1.0);
        let w = vec_at(&plane, PI, 1.0);
        let g = plane.geodesic(&v, &w);
        assert_eq!(g.kind, GeodesicKind::ThroughApex);
        assert!(g.eval(plane.graph(), 0.5).is_apex());
    }

    #[test]
    fn geodesic_endpoints_and_length() {
        let k = circle(2.5 * PI);
        let v = vec_at(&k, 0.0, 1.0);
        let w = vec_at(&k, 0.75 * PI, 1.0);
        let g = k.geodesic(&v, &w);
        assert_eq!(g.eval(k.graph(), 0.0), v);
        assert_eq!(g.eval(k.graph(), 1.0), w);
        assert!((g.length - (2.0 - 2.0 * (0.75 * PI).cos()).sqrt()).abs() < 1e-15);
        let n = 64;
        let mut arc = 0.0;
        let mut prev = v;
        for i in 1..=n {
            let p = g.eval(k.graph(), i as f64 / n as f64);
            arc += k.distance(&prev, &p);
            prev = p;
        }
        assert!((arc - g.length).abs() < 1e-12);
    }

    #[test]
    fn scaling_endpoints() {
        let k = circle(2.5 * PI);
        let v = vec_at(&k, 0.3, 1.5);
        let w = vec_at(&k, 2.0, 0.7);
        let zero = k.scaled_geodesic_check(&v, &w, 0.0, 8);
        assert_eq!(zero.distance_error, 0.0);
        assert_eq!(zero.geodesic_error, 0.0);
        assert!(k.scaled_geodesic_check(&v, &w, 1.0, 8).passes(0.0));
    }

    #[test]
    fn log_apex_is_identity() {
        let k = circle(2.5 * PI);
        let v = vec_at(&k, 0.3, 1.5);
        assert_eq!(k.log_apex(&v), v);
        assert_eq!(k.log_apex(&ConeVector::APEX), ConeVector::APEX);
    }

    #[test]
    fn degenerate_triangle_through_apex_is_equality() {
        let plane = circle(2.0 * PI);
        let y = vec_at(&plane, 0.0, 1.0);
        let z = vec_at(&plane, PI, 2.0);
        let x = vec_at(&plane, 0.0, 0.5);
        let g = plane.geodesic(&y, &z);
        for t in [0.1, 0.25, 0.6, 0.9] {
            let actual = plane.distance(&x, &g.eval(plane.graph(), t));
            let cmp = planar_comparison(plane.distance(&x, &y), plane.distance(&x, &z), 3.0, t);
            assert!((actual - cmp).abs() < 1e-9);
        }
    }

    #[test]
    fn positively_curved_cone_violates_comparison() {
        let report = circle(1.5 * PI).cat0_comparison_check(2000, 3, 1e-9);
        assert!(!report.passes());
        let w = &report.violations[0];
        let (excess, replay) = circle(1.5 * PI).comparison_trial(3, w.trial, 1e-9);
        assert_eq!(replay.as_ref(), Some(w));
        assert!(excess > 1e-9);
    }
}
