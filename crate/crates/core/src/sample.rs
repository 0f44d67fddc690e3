// SPDX-License-Identifier: Apache-2.0

//! Seeded sampling of directions and cone vectors.
//!
//! Every randomized check derives one independent stream per trial from a
//! master seed, so results do not depend on how trials are scheduled.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::ConeVector;
use crate::graph::{EdgeId, GraphPoint, MetricGraph};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A direction drawn uniformly with respect to arc length.
pub fn random_direction<R: Rng>(graph: &MetricGraph, rng: &mut R) -> GraphPoint {
    let total = graph.total_length();
    let mut s = rng.gen_range(0.0..total);
    for (i, e) in graph.edges().iter().enumerate() {
        if s < e.length {
            return graph.canonicalize(EdgeId(i), s);
        }
        s -= e.length;
    }
    let last = graph.edges().len() - 1;
    graph.canonicalize(EdgeId(last), graph.edges()[last].length)
}

pub fn random_vector<R: Rng>(graph: &MetricGraph, rng: &mut R, r_min: f64, r_max: f64) -> ConeVector {
    let dir = random_direction(graph, rng);
    let norm = rng.gen_range(r_min..=r_max);
    ConeVector::new(dir, norm).expect("radius range is non-negative")
}

pub fn random_unit<R: Rng>(graph: &MetricGraph, rng: &mut R) -> ConeVector {
    ConeVector::new(random_direction(graph, rng), 1.0).expect("unit radius")
}
