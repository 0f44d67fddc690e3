// SPDX-License-Identifier: Apache-2.0

//! CSV tables and SVG drawings.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io;

use crate::cone::ConeVector;
use crate::demo::AngleDemo;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphPoint, MetricGraph};
use crate::limitlog::{limit_log, LimitTangentCone, LimitVector, Shadow};
use crate::suite::CheckSuiteResult;
use crate::syntax::{format_graph_point, format_page};

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// One sampled unit direction and its image under the limit log.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitLogRow {
    pub point: GraphPoint,
    pub angle_to_z: f64,
    pub in_shadow: bool,
    pub image: LimitVector,
}

/// Samples every edge at `per_edge + 1` evenly spaced offsets; vertices
/// appear once.
pub fn sample_directions(graph: &MetricGraph, per_edge: usize) -> Vec<GraphPoint> {
    let per_edge = per_edge.max(1);
    let mut out: Vec<GraphPoint> = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        for k in 0..=per_edge {
            let s = if k == per_edge { e.length } else { e.length * k as f64 / per_edge as f64 };
            let p = graph.canonicalize(EdgeId(i), s);
            if matches!(p, GraphPoint::Edge { .. }) || !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

pub fn limit_log_table(graph: &MetricGraph, z: &ConeVector, per_edge: usize) -> Result<Vec<LimitLogRow>> {
    let zdir = *z.dir().ok_or(Error::ApexInput("limit log along the zero vector"))?;
    let shadow = Shadow::new(graph, z)?;
    sample_directions(graph, per_edge)
        .into_iter()
        .map(|p| {
            Ok(LimitLogRow {
                point: p,
                angle_to_z: graph.distance(zdir, p),
                in_shadow: shadow.contains(graph, p),
                image: limit_log(graph, z, &ConeVector::new(p, 1.0)?)?,
            })
        })
        .collect()
}

pub fn write_limit_log_csv<W: io::Write>(graph: &MetricGraph, rows: &[LimitLogRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["point", "angle_to_z", "in_shadow", "page", "phi", "magnitude"])
        .map_err(csv_error)?;
    for r in rows {
        w.write_record([
            format_graph_point(graph, &r.point),
            r.angle_to_z.to_string(),
            r.in_shadow.to_string(),
            format_page(graph, &r.image.page),
            r.image.phi.to_string(),
            r.image.magnitude.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn write_angle_demo_csv<W: io::Write>(demo: &AngleDemo, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["radius", "angle"]).map_err(csv_error)?;
    for row in &demo.rows {
        let radius = row.radius.map_or("apex".to_string(), |r| r.to_string());
        w.write_record([radius, row.angle.to_string()]).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn write_witnesses_csv<W: io::Write>(result: &CheckSuiteResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["suite", "space", "seed", "trial", "error", "detail"])
        .map_err(csv_error)?;
    for f in &result.failures {
        w.write_record([
            result.suite.name().to_string(),
            result.space.clone(),
            result.seed.to_string(),
            f.trial.to_string(),
            f.error.to_string(),
            f.detail.clone(),
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

const PANEL: f64 = 400.0;
const CURVE_SAMPLES: usize = 64;

/// Fixed layout of a graph inside one square panel: vertices evenly on a
/// circle, loops as circles through their vertex, parallel edges as
/// quadratic curves with spread-out bulges.
struct Layout {
    origin: (f64, f64),
    vertices: Vec<(f64, f64)>,
    /// Per edge: loop index or parallel index and multiplicity.
    slots: Vec<(usize, usize)>,
}

impl Layout {
    fn new(graph: &MetricGraph, origin: (f64, f64)) -> Self {
        let n = graph.vertex_count();
        let (cx, cy) = (origin.0 + PANEL / 2.0, origin.1 + PANEL / 2.0);
        let vertices = (0..n)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / n as f64 - PI / 2.0;
                (cx + 140.0 * a.cos(), cy + 140.0 * a.sin())
            })
            .collect();
        let key = |i: usize| {
            let e = &graph.edges()[i];
            (e.u.0.min(e.v.0), e.u.0.max(e.v.0))
        };
        let slots = (0..graph.edges().len())
            .map(|i| {
                let same: Vec<usize> = (0..graph.edges().len()).filter(|&j| key(j) == key(i)).collect();
                (same.iter().position(|&j| j == i).unwrap_or(0), same.len())
            })
            .collect();
        Layout { origin, vertices, slots }
    }

    fn center(&self) -> (f64, f64) {
        (self.origin.0 + PANEL / 2.0, self.origin.1 + PANEL / 2.0)
    }

    /// Position of the point at fraction `t` along edge `i`.
    fn at(&self, graph: &MetricGraph, i: usize, t: f64) -> (f64, f64) {
        let e = &graph.edges()[i];
        let (k, m) = self.slots[i];
        let pu = self.vertices[e.u.0];
        if e.u == e.v {
            let (cx, cy) = self.center();
            let shrink = 1.0 - 0.3 * k as f64 / m as f64;
            let c = (pu.0 + (cx - pu.0) * shrink, pu.1 + (cy - pu.1) * shrink);
            let radius = ((pu.0 - c.0).powi(2) + (pu.1 - c.1).powi(2)).sqrt();
            let a0 = (pu.1 - c.1).atan2(pu.0 - c.0);
            let a = a0 + 2.0 * PI * t;
            return (c.0 + radius * a.cos(), c.1 + radius * a.sin());
        }
        let pv = self.vertices[e.v.0];
        let mid = ((pu.0 + pv.0) / 2.0, (pu.1 + pv.1) / 2.0);
        let (dx, dy) = (pv.0 - pu.0, pv.1 - pu.1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let bulge = 90.0 * (k as f64 - (m as f64 - 1.0) / 2.0);
        let ctrl = (mid.0 - dy / len * bulge, mid.1 + dx / len * bulge);
        let s = 1.0 - t;
        (
            s * s * pu.0 + 2.0 * s * t * ctrl.0 + t * t * pv.0,
            s * s * pu.1 + 2.0 * s * t * ctrl.1 + t * t * pv.1,
        )
    }

    fn point(&self, graph: &MetricGraph, p: GraphPoint) -> (f64, f64) {
        match p {
            GraphPoint::Vertex(v) => self.vertices[v.0],
            GraphPoint::Edge { edge, offset } => self.at(graph, edge.0, offset / graph.edge(edge).length),
        }
    }

    fn polyline(&self, graph: &MetricGraph, i: usize, lo: f64, hi: f64) -> String {
        let len = graph.edges()[i].length;
        let pts: Vec<String> = (0..=CURVE_SAMPLES)
            .map(|k| {
                let s = lo + (hi - lo) * k as f64 / CURVE_SAMPLES as f64;
                let (x, y) = self.at(graph, i, s / len);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        pts.join(" ")
    }
}

fn draw_graph(svg: &mut String, graph: &MetricGraph, layout: &Layout) {
    for (i, e) in graph.edges().iter().enumerate() {
        let _ = writeln!(
            svg,
            r##"<polyline class="edge" fill="none" stroke="#555" stroke-width="1.5" points="{}"/>"##,
            layout.polyline(graph, i, 0.0, e.length)
        );
    }
    for (v, name) in graph.vertex_names().iter().enumerate() {
        let (x, y) = layout.vertices[v];
        let _ = writeln!(svg, r##"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="3" fill="#000"/>"##);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"#,
            x + 6.0,
            y - 6.0,
            escape(name)
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Two panels: the directions of the cone with the shadow of `z` and its
/// sampled directions, and the limit tangent cone's theta graph with the
/// images of the same directions.
pub fn render_svg(graph: &MetricGraph, z: &ConeVector, per_edge: usize) -> Result<String> {
    let zdir = *z.dir().ok_or(Error::ApexInput("limit log along the zero vector"))?;
    let shadow = Shadow::new(graph, z)?;
    let target = LimitTangentCone::new(graph, z)?;
    let theta = target.book().theta();
    let left = Layout::new(graph, (0.0, 0.0));
    let right = Layout::new(theta, (PANEL, 0.0));
    let rows = limit_log_table(graph, z, per_edge)?;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = 2.0 * PANEL,
        h = PANEL
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let _ = writeln!(svg, r#"<text x="10" y="20" font-size="14" font-family="sans-serif">directions</text>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" font-size="14" font-family="sans-serif">limit tangent cone</text>"#,
        PANEL + 10.0
    );
    let _ = writeln!(svg, r#"<g id="directions">"#);
    draw_graph(&mut svg, graph, &left);
    for arc in shadow.regions() {
        if arc.hi > arc.lo {
            let _ = writeln!(
                svg,
                r##"<polyline class="shadow" fill="none" stroke="#c00" stroke-width="4" points="{}"/>"##,
                left.polyline(graph, arc.edge.0, arc.lo, arc.hi)
            );
        } else {
            let (x, y) = left.point(graph, graph.canonicalize(arc.edge, arc.lo));
            let _ = writeln!(svg, r##"<circle class="shadow" cx="{x:.2}" cy="{y:.2}" r="5" fill="#c00"/>"##);
        }
    }
    for r in &rows {
        let (x, y) = left.point(graph, r.point);
        let fill = if r.in_shadow { "#c00" } else { "#36c" };
        let _ = writeln!(svg, r#"<circle class="sample" cx="{x:.2}" cy="{y:.2}" r="1.5" fill="{fill}"/>"#);
    }
    let (zx, zy) = left.point(graph, zdir);
    let _ = writeln!(svg, r##"<circle class="z" cx="{zx:.2}" cy="{zy:.2}" r="5" fill="none" stroke="#080" stroke-width="2"/>"##);
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r#"<g id="limit">"#);
    draw_graph(&mut svg, theta, &right);
    for r in &rows {
        let image = target.embed(&r.image);
        let Some(d) = image.dir() else { continue };
        let (x, y) = right.point(theta, *d);
        let fill = if r.in_shadow { "#c00" } else { "#36c" };
        let _ = writeln!(svg, r#"<circle class="image" cx="{x:.2}" cy="{y:.2}" r="1.5" fill="{fill}"/>"#);
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
