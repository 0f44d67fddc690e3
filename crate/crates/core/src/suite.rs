// SPDX-License-Identifier: Apache-2.0

//! Seeded verification suites.
//!
//! Every trial draws from its own stream `(seed, trial)`, so a failing
//! trial can be replayed on its own and reproduces bit for bit.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bundled::SpaceBundle;
use crate::cone::{Cone, ConeVector};
use crate::error::{Error, Result};
use crate::frechet::{frechet_mean_grid, frechet_mean_sturm, shadow_drag_experiment, WeightedConfiguration};
use crate::graph::{GraphPoint, MetricGraph};
use crate::hull::{check_hull_subcommute, DEFAULT_DELTA};
use crate::limitlog::{
    check_angle_to_z, check_continuity, check_contraction, check_isometry_with, check_sum_pi, limit_log, Shadow,
};
use crate::sample::{random_direction, random_vector, trial_rng};
use crate::syntax::{format_cone_vector, format_graph_point, format_page, format_tangent};
use crate::tangent::{
    first_variation_check, radial_transport_from_apex, transport_chord_check, BookCoord, Page, TangentAtPoint,
};

/// Inductive-mean iterations used by the `frechet` suite.
pub const STURM_ITERATIONS: usize = 50_000;

/// Offsets used to approach a shadow boundary point.
pub const CONTINUITY_OFFSETS: [f64; 7] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

/// Attempts per `drag` trial to find an instance meeting the hypotheses.
const DRAG_ATTEMPTS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Cat0,
    Homogeneity,
    FirstVariation,
    Transport,
    SumPi,
    AngleToZ,
    Norm,
    Collapse,
    Consistency,
    Contraction,
    Isometry,
    Continuity,
    HullSubcommute,
    Frechet,
    Drag,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Cat0,
        Suite::Homogeneity,
        Suite::FirstVariation,
        Suite::Transport,
        Suite::SumPi,
        Suite::AngleToZ,
        Suite::Norm,
        Suite::Collapse,
        Suite::Consistency,
        Suite::Contraction,
        Suite::Isometry,
        Suite::Continuity,
        Suite::HullSubcommute,
        Suite::Frechet,
        Suite::Drag,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Cat0 => "cat0",
            Suite::Homogeneity => "homogeneity",
            Suite::FirstVariation => "firstvar",
            Suite::Transport => "transport",
            Suite::SumPi => "sumpi",
            Suite::AngleToZ => "angletoz",
            Suite::Norm => "norm",
            Suite::Collapse => "collapse",
            Suite::Consistency => "consistency",
            Suite::Contraction => "contraction",
            Suite::Isometry => "isometry",
            Suite::Continuity => "continuity",
            Suite::HullSubcommute => "hullsub",
            Suite::Frechet => "frechet",
            Suite::Drag => "drag",
        }
    }

    pub fn default_trials(&self) -> u64 {
        match self {
            Suite::FirstVariation | Suite::Transport | Suite::Continuity => 1_000,
            Suite::HullSubcommute | Suite::Frechet => 100,
            Suite::Drag => 50,
            _ => 10_000,
        }
    }

    /// Default tolerance. For `frechet` it is a multiple of the grid
    /// resolution δ, for `drag` a multiple of the angular grid spacing.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Suite::Cat0 | Suite::Contraction | Suite::Isometry => 1e-9,
            Suite::Homogeneity | Suite::Transport | Suite::SumPi | Suite::AngleToZ | Suite::Consistency => 1e-12,
            Suite::FirstVariation => 1e-3,
            Suite::Norm | Suite::Collapse => 0.0,
            Suite::Continuity => 1e-6,
            Suite::HullSubcommute => 2.0 * DEFAULT_DELTA,
            Suite::Frechet => 2.0,
            Suite::Drag => 1.0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: s.to_string(),
            })
    }
}

/// Result of a single trial.
#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    Pass { error: f64 },
    /// The sampled instance does not meet the hypotheses of the check.
    Skip { reason: String },
    Fail { error: f64, detail: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub trial: u64,
    pub error: f64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CheckSuiteResult {
    pub suite: Suite,
    pub space: String,
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// Trials that met the hypotheses and were checked.
    pub checked: u64,
    pub max_error: f64,
    pub failures: Vec<Witness>,
    pub elapsed: Duration,
}

impl CheckSuiteResult {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn skipped(&self) -> u64 {
        self.trials - self.checked
    }
}

pub fn run_suite(suite: Suite, space: &SpaceBundle, trials: u64, seed: u64, tol: f64) -> CheckSuiteResult {
    let start = Instant::now();
    let cone = Cone::new(space.graph.clone());
    let outcomes: Vec<(u64, TrialOutcome)> = (0..trials)
        .into_par_iter()
        .map(|trial| (trial, run_trial(suite, &cone, seed, trial, tol)))
        .collect();
    let mut checked = 0;
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    for (trial, outcome) in outcomes {
        match outcome {
            TrialOutcome::Pass { error } => {
                checked += 1;
                max_error = max_error.max(error);
            }
            TrialOutcome::Fail { error, detail } => {
                checked += 1;
                max_error = max_error.max(error);
                failures.push(Witness { trial, error, detail });
            }
            TrialOutcome::Skip { .. } => {}
        }
    }
    CheckSuiteResult {
        suite,
        space: space.name.clone(),
        trials,
        seed,
        tolerance: tol,
        checked,
        max_error,
        failures,
        elapsed: start.elapsed(),
    }
}

/// Runs one trial; [`run_suite`] is this over `0..trials`.
pub fn run_trial(suite: Suite, cone: &Cone, seed: u64, trial: u64, tol: f64) -> TrialOutcome {
    let mut rng = trial_rng(seed, trial);
    let result = match suite {
        Suite::Cat0 => cat0(cone, seed, trial, tol),
        Suite::Homogeneity => homogeneity(cone, &mut rng, tol),
        Suite::FirstVariation => first_variation(cone, &mut rng, tol),
        Suite::Transport => transport(cone, &mut rng, tol),
        Suite::SumPi => sum_pi(cone, &mut rng, tol),
        Suite::AngleToZ => angle_to_z(cone, &mut rng, tol),
        Suite::Norm => norm(cone, &mut rng, tol),
        Suite::Collapse => collapse(cone, &mut rng),
        Suite::Consistency => consistency(cone, &mut rng, tol),
        Suite::Contraction => contraction(cone, &mut rng, trial, tol),
        Suite::Isometry => isometry(cone, &mut rng, trial, tol),
        Suite::Continuity => continuity(cone, &mut rng, trial, tol),
        Suite::HullSubcommute => hull_subcommute(cone, &mut rng, tol),
        Suite::Frechet => frechet(cone, &mut rng, trial, tol),
        Suite::Drag => drag(cone, seed, trial, tol),
    };
    match result {
        Ok(outcome) => outcome,
        Err(Error::Hypothesis(reason)) => TrialOutcome::Skip { reason },
        Err(e) => TrialOutcome::Fail {
            error: f64::INFINITY,
            detail: format!("error={e}"),
        },
    }
}

fn verdict(error: f64, tol: f64, detail: impl FnOnce() -> String) -> Result<TrialOutcome> {
    Ok(if error <= tol {
        TrialOutcome::Pass { error }
    } else {
        TrialOutcome::Fail { error, detail: detail() }
    })
}

fn skip(reason: &str) -> Result<TrialOutcome> {
    Err(Error::Hypothesis(reason.into()))
}

fn fmt_v(cone: &Cone, v: &ConeVector) -> String {
    format_cone_vector(cone.graph(), v)
}

/// A nonzero vector with radius in `[0.2, 2]`.
fn nonzero(graph: &MetricGraph, rng: &mut ChaCha8Rng) -> ConeVector {
    random_vector(graph, rng, 0.2, 2.0)
}

/// A direction in the shadow of `z`, if the shadow is nonempty.
fn shadow_point(graph: &MetricGraph, shadow: &Shadow, rng: &mut ChaCha8Rng) -> Option<GraphPoint> {
    let regions = shadow.regions();
    if regions.is_empty() {
        return None;
    }
    let arc = regions[rng.gen_range(0..regions.len())];
    let s = if arc.hi > arc.lo { rng.gen_range(arc.lo..=arc.hi) } else { arc.lo };
    Some(graph.canonicalize(arc.edge, s))
}

/// A direction at distance `d` from `p` along a random germ, or `p`
/// itself if the germ is too short.
fn step_from(graph: &MetricGraph, p: GraphPoint, rng: &mut ChaCha8Rng, d: f64) -> GraphPoint {
    let germs = graph.germs_at(p);
    let g = germs[rng.gen_range(0..germs.len())];
    let reach = graph.germ_reach(p, g).expect("germ at p");
    graph.advance(p, g, d.min(reach)).expect("within reach")
}

/// Pairs biased towards the shadow of `z`: uniform pairs, one vector in the
/// shadow, one on its boundary, and pairs straddling a shadow direction.
fn shadow_pair(graph: &MetricGraph, shadow: &Shadow, rng: &mut ChaCha8Rng, trial: u64) -> (ConeVector, ConeVector) {
    let mut v = nonzero(graph, rng);
    let mut w = nonzero(graph, rng);
    let with_dir = |dir: GraphPoint, r: f64| ConeVector::new(dir, r).expect("nonnegative radius");
    match trial % 4 {
        1 => {
            if let Some(p) = shadow_point(graph, shadow, rng) {
                v = with_dir(p, v.norm());
            }
        }
        2 => {
            let boundary = shadow.boundary(graph);
            if !boundary.is_empty() {
                let (p, _) = boundary[rng.gen_range(0..boundary.len())];
                v = with_dir(p, v.norm());
            }
        }
        3 => {
            if let Some(p) = shadow_point(graph, shadow, rng) {
                let a = rng.gen_range(0.0..PI / 2.0);
                let b = rng.gen_range(0.0..PI / 2.0);
                v = with_dir(step_from(graph, p, rng, a), v.norm());
                w = with_dir(step_from(graph, p, rng, b), w.norm());
            }
        }
        _ => {}
    }
    (v, w)
}

/// A unit tangent vector at `base`: radial with probability 1/5 each way,
/// otherwise on a random page at a uniform angle.
fn random_tangent(graph: &MetricGraph, base: ConeVector, rng: &mut ChaCha8Rng) -> Result<TangentAtPoint> {
    let u: f64 = rng.gen();
    let coord = if u < 0.2 {
        BookCoord::radial_out(1.0)
    } else if u < 0.4 {
        BookCoord::radial_in(1.0)
    } else {
        let dir = *base.dir().expect("non-apex base");
        let germs = graph.germs_at(dir);
        let g = germs[rng.gen_range(0..germs.len())];
        let phi = rng.gen_range(0.0..PI);
        if phi == 0.0 {
            BookCoord::radial_out(1.0)
        } else {
            BookCoord::new(Page::Germ(g), phi, 1.0)?
        }
    };
    TangentAtPoint::new(graph, base, coord)
}

fn cat0(cone: &Cone, seed: u64, trial: u64, tol: f64) -> Result<TrialOutcome> {
    let (excess, witness) = cone.comparison_trial(seed, trial, tol);
    Ok(match witness {
        None => TrialOutcome::Pass { error: excess.max(0.0) },
        Some(w) => TrialOutcome::Fail {
            error: excess,
            detail: format!(
                "x={} y={} z={} t={} actual={} comparison={}",
                fmt_v(cone, &w.x),
                fmt_v(cone, &w.y),
                fmt_v(cone, &w.z),
                w.t,
                w.actual,
                w.comparison
            ),
        },
    })
}

fn homogeneity(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let v = random_vector(g, rng, 0.0, 2.0);
    let w = random_vector(g, rng, 0.0, 2.0);
    let t = rng.gen_range(0.0..=2.0);
    let check = cone.scaled_geodesic_check(&v, &w, t, 8);
    let error = check.distance_error.max(check.geodesic_error);
    verdict(error, tol, || {
        format!("v={} w={} t={t} distance_error={} geodesic_error={}", fmt_v(cone, &v), fmt_v(cone, &w), check.distance_error, check.geodesic_error)
    })
}

fn first_variation(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let q = nonzero(g, rng);
    let p = random_vector(g, rng, 0.0, 2.0);
    let u = random_tangent(g, q, rng)?;
    if cone.distance(&p, &q) < 1e-2 {
        return skip("p too close to q");
    }
    let fv = first_variation_check(cone, &p, &u, 1e-6)?;
    verdict(fv.error(), tol, || {
        format!(
            "p={} u={} h={} finite_difference={} predicted={}",
            fmt_v(cone, &p),
            format_tangent(g, &u),
            fv.h,
            fv.finite_difference,
            fv.predicted
        )
    })
}

fn transport(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let dir = random_direction(g, rng);
    let q = ConeVector::new(dir, rng.gen_range(0.2..=2.0))?;
    let z = ConeVector::new(dir, rng.gen_range(0.2..=2.0))?;
    let u1 = random_tangent(g, q, rng)?;
    let u2 = random_tangent(g, q, rng)?;
    let check = transport_chord_check(cone, &q, &z, &u1, &u2)?;
    verdict(check.error(), tol, || {
        format!(
            "z={} u1={} u2={} angle_before={} angle_after={} angle_chord={} coordinate_error={}",
            fmt_v(cone, &z),
            format_tangent(g, &u1),
            format_tangent(g, &u2),
            check.angle_before,
            check.angle_after,
            check.angle_chord,
            check.coordinate_error
        )
    })
}

fn sum_pi(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let v = nonzero(g, rng);
    let sum = check_sum_pi(&limit_log(g, &z, &v)?)?;
    verdict((sum - PI).abs(), tol, || format!("z={} v={} sum={sum}", fmt_v(cone, &z), fmt_v(cone, &v)))
}

fn angle_to_z(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let v = nonzero(g, rng);
    let (before, after) = check_angle_to_z(cone, &v, &z)?;
    verdict((before - after).abs(), tol, || {
        format!("z={} v={} before={before} after={after}", fmt_v(cone, &z), fmt_v(cone, &v))
    })
}

fn norm(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let v = random_vector(g, rng, 0.0, 2.0);
    let image = limit_log(g, &z, &v)?;
    verdict((image.magnitude - v.norm()).abs(), tol, || {
        format!("z={} v={} image_norm={}", fmt_v(cone, &z), fmt_v(cone, &v), image.magnitude)
    })
}

fn collapse(cone: &Cone, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let shadow = Shadow::new(g, &z)?;
    let Some(p) = shadow_point(g, &shadow, rng) else {
        return skip("empty shadow");
    };
    let v = ConeVector::new(p, rng.gen_range(0.2..=2.0))?;
    let image = limit_log(g, &z, &v)?;
    let expected = BookCoord::radial_in(v.norm());
    verdict(if image == expected { 0.0 } else { 1.0 }, 0.0, || {
        format!(
            "z={} v={} page={} phi={} magnitude={}",
            fmt_v(cone, &z),
            fmt_v(cone, &v),
            format_page(g, &image.page),
            image.phi,
            image.magnitude
        )
    })
}

fn consistency(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let v = random_vector(g, rng, 0.0, 2.0);
    let image = limit_log(g, &z, &v)?;
    let moved = *radial_transport_from_apex(g, &z, &v)?.coord();
    let error = if image.page == moved.page {
        (image.phi - moved.phi).abs().max((image.magnitude - moved.magnitude).abs())
    } else {
        f64::INFINITY
    };
    verdict(error, tol, || {
        format!(
            "z={} v={} limit=({},{}) transport=({},{})",
            fmt_v(cone, &z),
            fmt_v(cone, &v),
            format_page(g, &image.page),
            image.phi,
            format_page(g, &moved.page),
            moved.phi
        )
    })
}

fn contraction(cone: &Cone, rng: &mut ChaCha8Rng, trial: u64, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let shadow = Shadow::new(g, &z)?;
    let (v, w) = shadow_pair(g, &shadow, rng, trial);
    let c = check_contraction(cone, &v, &w, &z)?;
    verdict(c.excess().max(0.0), tol, || {
        format!(
            "z={} v={} w={} angle={}->{} distance={}->{}",
            fmt_v(cone, &z),
            fmt_v(cone, &v),
            fmt_v(cone, &w),
            c.angle_before,
            c.angle_after,
            c.distance_before,
            c.distance_after
        )
    })
}

fn isometry(cone: &Cone, rng: &mut ChaCha8Rng, trial: u64, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let shadow = Shadow::new(g, &z)?;
    let (v, w) = shadow_pair(g, &shadow, rng, trial);
    let check = check_isometry_with(cone, &shadow, &v, &w)?;
    verdict(check.error(), tol, || {
        format!(
            "z={} v={} w={} contact={} distance_error={} angle_error={} geodesic_error={}",
            fmt_v(cone, &z),
            fmt_v(cone, &v),
            fmt_v(cone, &w),
            check.contact.name(),
            check.distance_error,
            check.angle_error,
            check.geodesic_error
        )
    })
}

fn continuity(cone: &Cone, rng: &mut ChaCha8Rng, trial: u64, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let boundary = Shadow::new(g, &z)?.boundary(g);
    if boundary.is_empty() {
        return skip("shadow has no boundary");
    }
    let (point, germ) = boundary[(trial as usize) % boundary.len()];
    let reach = g.germ_reach(point, germ).expect("germ at boundary point");
    let offsets: Vec<f64> = CONTINUITY_OFFSETS.iter().copied().filter(|&e| e <= reach).collect();
    let check = check_continuity(g, &z, point, germ, &offsets)?;
    let error = if check.monotone() { check.final_gap() } else { f64::INFINITY };
    if error < tol {
        return Ok(TrialOutcome::Pass { error });
    }
    let gaps: Vec<String> = check.gaps.iter().map(|(e, d)| format!("{e}:{d}")).collect();
    Ok(TrialOutcome::Fail {
        error,
        detail: format!("z={} point={} gaps={}", fmt_v(cone, &z), format_graph_point(g, &point), gaps.join(";")),
    })
}

fn hull_subcommute(cone: &Cone, rng: &mut ChaCha8Rng, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    let z = nonzero(g, rng);
    let n = rng.gen_range(2..=5);
    let points: Vec<ConeVector> = (0..n).map(|_| nonzero(g, rng)).collect();
    let check = check_hull_subcommute(cone, &points, &z, DEFAULT_DELTA)?;
    verdict(check.max_gap, tol, || {
        let pts: Vec<String> = points.iter().map(|p| fmt_v(cone, p)).collect();
        format!(
            "z={} points={} worst={} gap={}",
            fmt_v(cone, &z),
            pts.join(";"),
            check.worst.map_or("none".into(), |p| format_graph_point(g, &p)),
            check.max_gap
        )
    })
}

fn random_configuration(graph: &MetricGraph, rng: &mut ChaCha8Rng) -> Result<WeightedConfiguration> {
    let n = rng.gen_range(3..=8);
    let points = (0..n)
        .map(|_| (nonzero(graph, rng), rng.gen_range(0.5..=2.0)))
        .collect();
    WeightedConfiguration::new(points)
}

fn fmt_cfg(cone: &Cone, cfg: &WeightedConfiguration) -> String {
    let pts: Vec<String> = cfg
        .points()
        .iter()
        .map(|(p, w)| format!("{}*{w}", fmt_v(cone, p)))
        .collect();
    pts.join(";")
}

fn frechet(cone: &Cone, rng: &mut ChaCha8Rng, trial: u64, tol: f64) -> Result<TrialOutcome> {
    let cfg = random_configuration(cone.graph(), rng)?;
    let delta = cfg.default_delta(cone);
    let grid = frechet_mean_grid(cone, &cfg, delta)?;
    let sturm = frechet_mean_sturm(cone, &cfg, STURM_ITERATIONS, trial)?;
    let gap = cone.distance(&grid.mean, &sturm.mean);
    verdict(gap / delta, tol, || {
        format!(
            "config={} delta={delta} grid={} sturm={} distance={gap}",
            fmt_cfg(cone, &cfg),
            fmt_v(cone, &grid.mean),
            fmt_v(cone, &sturm.mean)
        )
    })
}

fn drag(cone: &Cone, seed: u64, trial: u64, tol: f64) -> Result<TrialOutcome> {
    let g = cone.graph();
    for attempt in 0..DRAG_ATTEMPTS {
        let mut rng = trial_rng(seed, trial.wrapping_mul(DRAG_ATTEMPTS).wrapping_add(attempt) ^ (1 << 63));
        let cfg = random_configuration(g, &mut rng)?;
        let delta = cfg.default_delta(cone);
        let mean = frechet_mean_grid(cone, &cfg, delta)?.mean;
        if mean.is_apex() {
            continue;
        }
        let shadow = Shadow::new(g, &mean)?;
        let Some(p) = shadow_point(g, &shadow, &mut rng) else {
            continue;
        };
        let added = ConeVector::new(p, rng.gen_range(0.2..=2.0))?;
        let weight = rng.gen_range(0.01..=0.2);
        let report = match shadow_drag_experiment(cone, &cfg, &added, weight, delta) {
            Ok(r) => r,
            Err(Error::Hypothesis(_)) => continue,
            Err(e) => return Err(e),
        };
        let ok = report.deviation <= tol * report.resolution && report.new_mean.norm() < report.old_mean.norm();
        let error = report.deviation / report.resolution;
        let detail = || {
            format!(
                "attempt={attempt} config={} added={}*{weight} old={} new={} deviation={} resolution={}",
                fmt_cfg(cone, &cfg),
                fmt_v(cone, &added),
                fmt_v(cone, &report.old_mean),
                fmt_v(cone, &report.new_mean),
                report.deviation,
                report.resolution
            )
        };
        return Ok(if ok {
            TrialOutcome::Pass { error }
        } else {
            TrialOutcome::Fail { error, detail: detail() }
        });
    }
    skip("no instance meets the drag hypotheses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_replay_identically() {
        let space = bundled::get("cone1.5pi").unwrap();
        let result = run_suite(Suite::Cat0, &space, 500, 0, 1e-9);
        assert!(!result.passes());
        let cone = Cone::new(space.graph.clone());
        for w in &result.failures {
            match run_trial(Suite::Cat0, &cone, 0, w.trial, 1e-9) {
                TrialOutcome::Fail { error, detail } => {
                    assert_eq!(error.to_bits(), w.error.to_bits());
                    assert_eq!(detail, w.detail);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn short_runs_pass_on_the_kale() {
        let space = bundled::get("kale2.5pi").unwrap();
        for suite in [
            Suite::Homogeneity,
            Suite::SumPi,
            Suite::AngleToZ,
            Suite::Norm,
            Suite::Collapse,
            Suite::Consistency,
            Suite::Contraction,
            Suite::Isometry,
        ] {
            let r = run_suite(suite, &space, 200, 3, suite.default_tolerance());
            assert!(r.passes(), "{suite}: {:?}", r.failures.first());
            assert!(r.checked > 0, "{suite}");
        }
    }
}
