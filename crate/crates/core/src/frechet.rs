// SPDX-License-Identifier: Apache-2.0

//! Weighted Fréchet means on the cone.
//!
//! Two independent solvers: the inductive mean, which only walks along
//! geodesics, and a direction sweep that is exhaustive up to the grid
//! spacing. For a fixed direction `η` the objective is a quadratic in the
//! radius,
//!
//! ```text
//! F(η, r) = W r² − 2 r g(η) + Σ wᵢ rᵢ²,   g(η) = Σ wᵢ rᵢ cos min(d_s(η, xᵢ), π),
//! ```
//!
//! so the sweep maximizes `g` over directions and takes `r = g / W`, or the
//! apex when `g <= 0` everywhere.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::cone::{Cone, ConeVector};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphPoint, MetricGraph};
use crate::limitlog::in_shadow;
use crate::sample::trial_rng;
use crate::syntax::parse_cone_vector;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedConfiguration {
    points: Vec<(ConeVector, f64)>,
    total: f64,
}

impl WeightedConfiguration {
    pub fn new(points: Vec<(ConeVector, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfiguration("configuration has no points".into()));
        }
        if let Some((_, w)) = points.iter().find(|(_, w)| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidConfiguration(format!("weight {w} must be finite and positive")));
        }
        let total = points.iter().map(|p| p.1).sum();
        Ok(WeightedConfiguration { points, total })
    }

    /// Reads `m <conevector> <weight>` records; other lines are ignored so
    /// the records can be appended to a space file.
    pub fn parse(graph: &MetricGraph, text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.first() != Some(&"m") {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            if fields.len() != 3 {
                return Err(err("expected `m <conevector> <weight>`".into()));
            }
            let v = parse_cone_vector(graph, fields[1]).map_err(|e| err(e.to_string()))?;
            let w = fields[2]
                .parse::<f64>()
                .map_err(|_| err(format!("cannot parse weight `{}`", fields[2])))?;
            points.push((v, w));
        }
        Self::new(points)
    }

    pub fn points(&self) -> &[(ConeVector, f64)] {
        &self.points
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    pub fn radius_bound(&self) -> f64 {
        self.points.iter().map(|p| p.0.norm()).fold(0.0, f64::max)
    }

    pub fn with_point(&self, v: ConeVector, w: f64) -> Result<Self> {
        let mut points = self.points.clone();
        points.push((v, w));
        Self::new(points)
    }

    pub fn diameter(&self, cone: &Cone) -> f64 {
        let mut d: f64 = 0.0;
        for (i, (a, _)) in self.points.iter().enumerate() {
            for (b, _) in &self.points[i + 1..] {
                d = d.max(cone.distance(a, b));
            }
        }
        d
    }

    /// Grid resolution used when none is given: `1e-3` of the diameter,
    /// or of the largest radius for single-ray configurations.
    pub fn default_delta(&self, cone: &Cone) -> f64 {
        let scale = self.diameter(cone).max(self.radius_bound());
        if scale > 0.0 {
            1e-3 * scale
        } else {
            1e-3
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    pub mean: ConeVector,
    pub objective: f64,
    pub iterations: usize,
    /// Sweep: the grid spacing in distance units. Inductive mean: distance
    /// moved over the second half of the iterations.
    pub gap: f64,
}

pub fn objective(cone: &Cone, x: &ConeVector, cfg: &WeightedConfiguration) -> f64 {
    cfg.points
        .iter()
        .map(|(p, w)| {
            let d = cone.distance(x, p);
            w * d * d
        })
        .sum()
}

/// Inductive mean. Iterations run in epochs; each epoch visits every
/// point once in a seeded random order, and the step towards `ξ` is the
/// fraction `w_ξ / (W + w_ξ)` of the geodesic, `W` the weight already
/// absorbed. In a flat sector the iterate at the end of every epoch is the
/// exact weighted mean.
pub fn frechet_mean_sturm(cone: &Cone, cfg: &WeightedConfiguration, iterations: usize, seed: u64) -> Result<SolverReport> {
    if iterations == 0 {
        return Err(Error::InvalidConfiguration("at least one iteration is required".into()));
    }
    let graph = cone.graph();
    let mut rng = trial_rng(seed, 0);
    let mut order: Vec<usize> = (0..cfg.points.len()).collect();
    let mut x = ConeVector::APEX;
    let mut absorbed = 0.0;
    let mut halfway = x;
    let mut k = 0;
    while k < iterations {
        order.shuffle(&mut rng);
        for &i in &order {
            if k == iterations {
                break;
            }
            let (xi, w) = cfg.points[i];
            absorbed += w;
            x = if k == 0 {
                xi
            } else {
                cone.geodesic(&x, &xi).eval(graph, w / absorbed)
            };
            k += 1;
            if k == iterations / 2 {
                halfway = x;
            }
        }
    }
    Ok(SolverReport {
        mean: x,
        objective: objective(cone, &x, cfg),
        iterations,
        gap: cone.distance(&x, &halfway),
    })
}

/// Angular distances from every vertex to one configuration point, plus
/// its position when it lies inside an edge.
struct DistanceTable {
    to_vertex: Vec<f64>,
    on_edge: Option<(EdgeId, f64)>,
    radius: f64,
    weight: f64,
}

impl DistanceTable {
    fn angular(&self, graph: &MetricGraph, edge: EdgeId, s: f64) -> f64 {
        let e = graph.edge(edge);
        let mut d = (self.to_vertex[e.u.0] + s).min(self.to_vertex[e.v.0] + (e.length - s));
        if let Some((pe, ps)) = self.on_edge {
            if pe == edge {
                d = d.min((s - ps).abs());
            }
        }
        d
    }
}

/// Exhaustive sweep over directions spaced `delta / R` apart (`R` the
/// largest radius), together with all vertices and configuration
/// directions.
pub fn frechet_mean_grid(cone: &Cone, cfg: &WeightedConfiguration, delta: f64) -> Result<SolverReport> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidConfiguration(format!("grid resolution {delta} must be positive")));
    }
    let r_max = cfg.radius_bound();
    let spacing = if r_max > 0.0 { delta / r_max } else { f64::INFINITY };
    sweep(cone, cfg, spacing, delta)
}

fn sweep(cone: &Cone, cfg: &WeightedConfiguration, spacing: f64, delta: f64) -> Result<SolverReport> {
    let graph = cone.graph();
    let tables: Vec<DistanceTable> = cfg
        .points
        .iter()
        .filter_map(|(p, w)| {
            p.dir().map(|d| DistanceTable {
                to_vertex: graph.distances_to_vertices(*d),
                on_edge: match graph.canonical(*d) {
                    GraphPoint::Edge { edge, offset } => Some((edge, offset)),
                    GraphPoint::Vertex(_) => None,
                },
                radius: p.norm(),
                weight: *w,
            })
        })
        .collect();
    let pull = |edge: EdgeId, s: f64| -> f64 {
        tables
            .iter()
            .map(|t| t.weight * t.radius * t.angular(graph, edge, s).min(PI).cos())
            .sum()
    };
    let mut candidates: Vec<(EdgeId, f64)> = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        let n = if spacing.is_finite() {
            (e.length / spacing).ceil() as usize
        } else {
            1
        };
        candidates.extend((0..=n).map(|k| (EdgeId(i), e.length * k as f64 / n as f64)));
    }
    candidates.extend(tables.iter().filter_map(|t| t.on_edge));
    let evaluated: Vec<(f64, usize)> = candidates
        .par_iter()
        .enumerate()
        .map(|(i, &(edge, s))| (pull(edge, s), i))
        .collect();
    let (best, at) = evaluated
        .iter()
        .copied()
        .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
        .expect("at least one candidate direction");
    let total = cfg.total_weight();
    let scale: f64 = tables.iter().map(|t| t.weight * t.radius).sum();
    let mean = if best > 1e-12 * scale {
        let (edge, s) = candidates[at];
        ConeVector::new(graph.canonicalize(edge, s), best / total)?
    } else {
        ConeVector::APEX
    };
    Ok(SolverReport {
        mean,
        objective: objective(cone, &mean, cfg),
        iterations: candidates.len(),
        gap: delta,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DragReport {
    pub old_mean: ConeVector,
    pub new_mean: ConeVector,
    /// Angular distance between the directions of the two means.
    pub deviation: f64,
    /// Angular spacing of the sweeps.
    pub resolution: f64,
}

impl DragReport {
    pub fn passes(&self) -> bool {
        self.deviation <= self.resolution && self.new_mean.norm() < self.old_mean.norm()
    }
}

/// Adds mass `weight` at `added`, which must lie in the shadow of the
/// current mean, and recomputes the mean with the sweep. Both sweeps use
/// the angular grid of the original configuration.
pub fn shadow_drag_experiment(
    cone: &Cone,
    cfg: &WeightedConfiguration,
    added: &ConeVector,
    weight: f64,
    delta: f64,
) -> Result<DragReport> {
    let graph = cone.graph();
    let before = frechet_mean_grid(cone, cfg, delta)?;
    let resolution = delta / cfg.radius_bound();
    if before.mean.is_apex() {
        return Err(Error::Hypothesis("the mean is the apex".into()));
    }
    if added.is_apex() || !in_shadow(graph, added, &before.mean)? {
        return Err(Error::Hypothesis("added mass is not in the shadow of the mean".into()));
    }
    let after = if weight == 0.0 {
        before.clone()
    } else {
        sweep(cone, &cfg.with_point(*added, weight)?, resolution, delta)?
    };
    if after.mean.is_apex() {
        return Err(Error::Hypothesis("added mass moves the mean to the apex".into()));
    }
    let deviation = graph.distance(*before.mean.dir().unwrap(), *after.mean.dir().unwrap());
    Ok(DragReport {
        old_mean: before.mean,
        new_mean: after.mean,
        deviation,
        resolution,
    })
}
