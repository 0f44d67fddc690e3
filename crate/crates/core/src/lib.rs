// SPDX-License-Identifier: Apache-2.0

//! Geometry of Euclidean cones over metric graphs: conical metric, tangent
//! cones at non-apex points, radial transport, shadows and the limit log
//! map, together with Fréchet-mean experiments.

pub mod bundled;
pub mod cone;
pub mod demo;
pub mod error;
pub mod export;
pub mod frechet;
pub mod graph;
pub mod hull;
pub mod limitlog;
pub mod sample;
pub mod suite;
pub mod syntax;
pub mod tangent;

pub use cone::{Cone, ConeVector};
pub use error::{Error, Result};
pub use graph::MetricGraph;
