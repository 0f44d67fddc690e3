// SPDX-License-Identifier: Apache-2.0

//! Text syntax for lengths, graph points, cone vectors and tangent vectors.
//!
//! ```text
//! length       := <float> | [<float>]pi[/<float>]
//! graphpoint   := <edge-id>:<length> | v:<vertex-name>
//! conevector   := <graphpoint>@<length>
//! tangent      := <conevector>|<edge-id>[+|-]|radial|<length>|<length>
//! ```
//!
//! In the tangent syntax the page names an edge germ at the base direction;
//! the optional `+`/`-` suffix selects the forward or backward germ and is
//! only needed when both germs of the edge are present (interior points and
//! self-loops).

use std::f64::consts::PI;

use crate::cone::ConeVector;
use crate::graph::{GraphPoint, MetricGraph, Orientation};
use crate::tangent::{BookCoord, Page, TangentAtPoint};
use crate::{Error, Result};

/// Parses a length such as `1.25`, `pi`, `5pi/4`, `2.5pi` or `pi/2`.
pub fn parse_length(token: &str) -> std::result::Result<f64, String> {
    let t = token.trim();
    let value = if let Some(idx) = t.find("pi") {
        let (coef, rest) = t.split_at(idx);
        let rest = &rest[2..];
        let coef = match coef.trim_end_matches('*') {
            "" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| format!("bad coefficient in length `{token}`"))?,
        };
        let denom = match rest.strip_prefix('/') {
            Some(d) => d
                .parse::<f64>()
                .map_err(|_| format!("bad denominator in length `{token}`"))?,
            None if rest.is_empty() => 1.0,
            None => return Err(format!("unexpected `{rest}` in length `{token}`")),
        };
        coef * PI / denom
    } else {
        t.parse::<f64>()
            .map_err(|_| format!("cannot parse length `{token}`"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("length `{token}` is not finite"))
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidPoint(msg)
}

pub fn parse_graph_point(graph: &MetricGraph, text: &str) -> Result<GraphPoint> {
    let (head, tail) = text
        .split_once(':')
        .ok_or_else(|| invalid(format!("expected `<edge-id>:<offset>` or `v:<name>`, got `{text}`")))?;
    if head == "v" {
        let v = graph.vertex_by_name(tail).ok_or_else(|| Error::Unknown {
            kind: "vertex",
            name: tail.to_string(),
        })?;
        return Ok(graph.vertex_point(v));
    }
    let edge = graph.edge_by_id(head).ok_or_else(|| Error::Unknown {
        kind: "edge",
        name: head.to_string(),
    })?;
    let offset = parse_length(tail).map_err(invalid)?;
    graph.point(edge, offset)
}

pub fn format_graph_point(graph: &MetricGraph, p: &GraphPoint) -> String {
    match p {
        GraphPoint::Vertex(v) => format!("v:{}", graph.vertex_name(*v)),
        GraphPoint::Edge { edge, offset } => format!("{}:{:?}", graph.edge(*edge).id, offset),
    }
}

pub fn parse_cone_vector(graph: &MetricGraph, text: &str) -> Result<ConeVector> {
    let (point, radius) = text
        .rsplit_once('@')
        .ok_or_else(|| invalid(format!("expected `<graphpoint>@<radius>`, got `{text}`")))?;
    let radius = parse_length(radius).map_err(invalid)?;
    let dir = parse_graph_point(graph, point)?;
    ConeVector::new(dir, radius)
}

pub fn format_cone_vector(graph: &MetricGraph, v: &ConeVector) -> String {
    match v.dir() {
        Some(dir) => format!("{}@{:?}", format_graph_point(graph, dir), v.norm()),
        None => "apex@0".to_string(),
    }
}

pub fn parse_tangent(graph: &MetricGraph, text: &str) -> Result<TangentAtPoint> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != 4 {
        return Err(invalid(format!(
            "expected `<conevector>|<page>|<phi>|<magnitude>`, got `{text}`"
        )));
    }
    let base = parse_cone_vector(graph, parts[0])?;
    let dir = *base
        .dir()
        .ok_or(Error::ApexInput("tangent vectors need a non-apex base"))?;
    let phi = parse_length(parts[2]).map_err(invalid)?;
    let magnitude = parse_length(parts[3]).map_err(invalid)?;
    let page = if parts[1] == "radial" {
        Page::Radial
    } else {
        let (id, wanted) = match parts[1].strip_suffix('+') {
            Some(id) => (id, Some(Orientation::Forward)),
            None => match parts[1].strip_suffix('-') {
                Some(id) => (id, Some(Orientation::Backward)),
                None => (parts[1], None),
            },
        };
        let edge = graph.edge_by_id(id).ok_or_else(|| Error::Unknown {
            kind: "edge",
            name: id.to_string(),
        })?;
        let germs: Vec<_> = graph
            .germs_at(dir)
            .into_iter()
            .filter(|g| g.edge == edge && wanted.is_none_or(|o| g.orientation == o))
            .collect();
        match germs.as_slice() {
            [g] => Page::Germ(*g),
            [] => return Err(invalid(format!("edge `{id}` has no germ at the base direction"))),
            _ => {
                return Err(invalid(format!(
                    "edge `{id}` has two germs at the base direction; write `{id}+` or `{id}-`"
                )))
            }
        }
    };
    TangentAtPoint::new(graph, base, BookCoord::new(page, phi, magnitude)?)
}

pub fn format_page(graph: &MetricGraph, page: &Page) -> String {
    match page {
        Page::Radial => "radial".to_string(),
        Page::Germ(g) => {
            let sign = match g.orientation {
                Orientation::Forward => '+',
                Orientation::Backward => '-',
            };
            format!("{}{}", graph.edge(g.edge).id, sign)
        }
    }
}

pub fn format_tangent(graph: &MetricGraph, u: &TangentAtPoint) -> String {
    format!(
        "{}|{}|{:?}|{:?}",
        format_cone_vector(graph, u.base()),
        format_page(graph, &u.coord().page),
        u.coord().phi,
        u.coord().magnitude
    )
}
