// SPDX-License-Identifier: Apache-2.0

//! Reproducible tables for two phenomena: the jump of the angle between
//! parallel rays as the basepoint reaches the apex, and a pair of parallel
//! rays whose distance is not constant.

use std::f64::consts::PI;

use crate::cone::{Cone, ConeVector};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphPoint};
use crate::tangent::{angle_at, parallel_pair_profile, radial_transport_from_apex, DistanceProfile};

/// Basepoint radii used by default, shrinking to the apex.
pub const DEMO_RADII: [f64; 7] = [1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, PartialEq)]
pub struct AngleRow {
    /// `None` for the apex.
    pub radius: Option<f64>,
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleDemo {
    pub basepoint: GraphPoint,
    pub rows: Vec<AngleRow>,
}

impl AngleDemo {
    pub fn apex_angle(&self) -> f64 {
        self.rows.iter().find(|r| r.radius.is_none()).map_or(f64::NAN, |r| r.angle)
    }

    /// Apex angle minus the largest deviation from it along the sequence.
    pub fn jump(&self) -> f64 {
        let apex = self.apex_angle();
        self.rows
            .iter()
            .filter(|r| r.radius.is_some())
            .map(|r| (apex - r.angle).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// The angle at `p = r·base` between the tangents of the rays from `p`
/// parallel to `Ox` and `Oy`, for each radius, followed by `∠(Ox, Oy)`
/// at the apex.
pub fn angle_discontinuity(cone: &Cone, base: GraphPoint, x: GraphPoint, y: GraphPoint, radii: &[f64]) -> Result<AngleDemo> {
    let graph = cone.graph();
    let ox = ConeVector::new(x, 1.0)?;
    let oy = ConeVector::new(y, 1.0)?;
    let mut rows = Vec::with_capacity(radii.len() + 1);
    for &r in radii {
        let p = ConeVector::new(base, r)?;
        let angle = angle_at(
            &radial_transport_from_apex(graph, &p, &ox)?,
            &radial_transport_from_apex(graph, &p, &oy)?,
        )?;
        rows.push(AngleRow { radius: Some(r), angle });
    }
    rows.push(AngleRow {
        radius: None,
        angle: cone.angle_at_apex(&ox, &oy)?,
    });
    Ok(AngleDemo { basepoint: base, rows })
}

/// The demo on the quadrant plane: basepoints on the bisector of the
/// remaining three quadrants, `Ox` and `Oy` the boundary rays.
pub fn quadrant_demo(cone: &Cone) -> Result<AngleDemo> {
    let graph = cone.graph();
    let vertex = |name: &str| {
        graph.vertex_by_name(name).map(|v| graph.vertex_point(v)).ok_or_else(|| Error::Unknown {
            kind: "vertex",
            name: name.to_string(),
        })
    };
    let (x, y) = (vertex("x")?, vertex("y")?);
    let base = graph.point(EdgeId(0), 0.75 * PI)?;
    angle_discontinuity(cone, base, x, y, &DEMO_RADII)
}

/// Distance profile of the two rays from `p = (0, 1)` and `q = (1.2π, 1)`
/// parallel to the ray through `(1.6π, 1)` on a single-edge circle.
pub fn no_ray_profile(cone: &Cone, t_max: f64, n: usize) -> Result<DistanceProfile> {
    let graph = cone.graph();
    let p = ConeVector::new(graph.point(EdgeId(0), 0.0)?, 1.0)?;
    let q = ConeVector::new(graph.point(EdgeId(0), 1.2 * PI)?, 1.0)?;
    let v = ConeVector::new(graph.point(EdgeId(0), 1.6 * PI)?, 1.0)?;
    parallel_pair_profile(cone, &p, &q, &v, t_max, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn quadrant_angles_jump_at_the_apex() {
        let cone = Cone::new(bundled::get("quadrantplane").unwrap().graph);
        let demo = quadrant_demo(&cone).unwrap();
        assert_eq!(demo.rows.len(), DEMO_RADII.len() + 1);
        for row in &demo.rows[..DEMO_RADII.len()] {
            assert!((row.angle - PI / 2.0).abs() < 1e-9);
        }
        assert_eq!(demo.apex_angle(), PI);
        assert!((demo.jump() - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn kale_profile_moves() {
        let cone = Cone::new(bundled::get("kale3pi").unwrap().graph);
        let profile = no_ray_profile(&cone, 4.0, 401).unwrap();
        assert!(!profile.is_constant());
        assert!(profile.max <= 2.0 + 1e-12);
    }
}
