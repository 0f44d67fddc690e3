// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::Rng;
use shadowfold::bundled::{self, SpaceBundle};
use shadowfold::frechet::{objective, WeightedConfiguration};
use shadowfold::limitlog::{limit_log, Shadow};
use shadowfold::sample::{random_vector, trial_rng};
use shadowfold::tangent::{exp_at, exp_validity_radius, log_at, radial_transport_from_apex, BookCoord};
use shadowfold::{Cone, ConeVector, MetricGraph};

fn space(i: usize) -> SpaceBundle {
    bundled::all().swap_remove(i % bundled::names().len())
}

fn cat0_space(i: usize) -> SpaceBundle {
    bundled::cat0().swap_remove(i % bundled::cat0().len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn metric_axioms(i in 0usize..8, seed in any::<u64>()) {
        let b = space(i);
        let cone = Cone::new(b.graph.clone());
        let mut rng = trial_rng(seed, 0);
        let x = random_vector(&b.graph, &mut rng, 0.0, 3.0);
        let y = random_vector(&b.graph, &mut rng, 0.0, 3.0);
        let z = random_vector(&b.graph, &mut rng, 0.0, 3.0);
        prop_assert_eq!(cone.distance(&x, &x), 0.0);
        prop_assert_eq!(cone.distance(&x, &y), cone.distance(&y, &x));
        prop_assert!(cone.distance(&x, &y) >= 0.0);
        prop_assert!(cone.distance(&x, &z) <= cone.distance(&x, &y) + cone.distance(&y, &z) + 1e-12);
    }

    #[test]
    fn angles_are_capped_graph_distances(i in 0usize..8, seed in any::<u64>()) {
        let b = space(i);
        let cone = Cone::new(b.graph.clone());
        let mut rng = trial_rng(seed, 0);
        let v = random_vector(&b.graph, &mut rng, 0.1, 2.0);
        let w = random_vector(&b.graph, &mut rng, 0.1, 2.0);
        let d = b.graph.distance(*v.dir().unwrap(), *w.dir().unwrap());
        prop_assert_eq!(cone.angle_at_apex(&v, &w).unwrap(), d.min(PI));
    }

    #[test]
    fn short_paths_are_unique_when_girth_allows(i in 0usize..7, seed in any::<u64>()) {
        let b = cat0_space(i);
        let mut rng = trial_rng(seed, 0);
        let p = random_vector(&b.graph, &mut rng, 1.0, 1.0);
        let q = random_vector(&b.graph, &mut rng, 1.0, 1.0);
        let path = b.graph.shortest_path(*p.dir().unwrap(), *q.dir().unwrap());
        prop_assume!(path.length < PI - 1e-9);
        prop_assert!(!path.ties);
    }

    #[test]
    fn girth_scales(i in 0usize..8, c in 0.1f64..10.0) {
        let g = space(i).graph;
        let scaled = g.scaled(c).unwrap();
        let (a, b) = (g.girth(), scaled.girth());
        if a.is_finite() {
            prop_assert!((b - c * a).abs() <= 1e-12 * c * a);
        } else {
            prop_assert!(b.is_infinite());
        }
    }

    #[test]
    fn homogeneity(i in 0usize..8, seed in any::<u64>(), t in 0.0f64..5.0) {
        let b = space(i);
        let cone = Cone::new(b.graph.clone());
        let mut rng = trial_rng(seed, 0);
        let v = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        let w = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        let check = cone.scaled_geodesic_check(&v, &w, t, 4);
        prop_assert!(check.passes(1e-12), "{:?}", check);
    }

    #[test]
    fn exp_inverts_log(i in 0usize..7, seed in any::<u64>()) {
        let b = cat0_space(i);
        let cone = Cone::new(b.graph.clone());
        let mut rng = trial_rng(seed, 0);
        let z = random_vector(&b.graph, &mut rng, 0.2, 2.0);
        let w = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        let u = log_at(&cone, &z, &w).unwrap();
        prop_assume!(u.magnitude() > 0.0 && u.magnitude() < exp_validity_radius(&b.graph, &u));
        let back = exp_at(&cone, &u).unwrap();
        prop_assert!(cone.distance(&back, &w) < 1e-9, "{}", cone.distance(&back, &w));
    }

    #[test]
    fn limit_log_preserves_norms(i in 0usize..8, seed in any::<u64>()) {
        let b = space(i);
        let mut rng = trial_rng(seed, 0);
        let z = random_vector(&b.graph, &mut rng, 0.2, 2.0);
        let v = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        prop_assert_eq!(limit_log(&b.graph, &z, &v).unwrap().magnitude, v.norm());
    }

    #[test]
    fn shadow_collapses_to_the_inward_spine(i in 0usize..8, seed in any::<u64>()) {
        let b = space(i);
        let mut rng = trial_rng(seed, 0);
        let z = random_vector(&b.graph, &mut rng, 0.2, 2.0);
        let shadow = Shadow::new(&b.graph, &z).unwrap();
        prop_assume!(!shadow.is_empty());
        let arc = shadow.regions()[rng.gen_range(0..shadow.regions().len())];
        let s = if arc.hi > arc.lo { rng.gen_range(arc.lo..=arc.hi) } else { arc.lo };
        let v = ConeVector::new(b.graph.canonicalize(arc.edge, s), 1.5).unwrap();
        prop_assert_eq!(limit_log(&b.graph, &z, &v).unwrap(), BookCoord::radial_in(1.5));
    }

    #[test]
    fn limit_log_agrees_with_transport_from_apex(i in 0usize..8, seed in any::<u64>()) {
        let b = space(i);
        let mut rng = trial_rng(seed, 0);
        let z = random_vector(&b.graph, &mut rng, 0.2, 2.0);
        let v = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        let image = limit_log(&b.graph, &z, &v).unwrap();
        let moved = *radial_transport_from_apex(&b.graph, &z, &v).unwrap().coord();
        prop_assert_eq!(image.page, moved.page);
        prop_assert!((image.phi - moved.phi).abs() <= 1e-12);
        prop_assert_eq!(image.magnitude, moved.magnitude);
    }

    #[test]
    fn frechet_function_is_midpoint_convex(i in 0usize..7, seed in any::<u64>()) {
        let b = cat0_space(i);
        let cone = Cone::new(b.graph.clone());
        let mut rng = trial_rng(seed, 0);
        let points = (0..4).map(|_| (random_vector(&b.graph, &mut rng, 0.0, 2.0), rng.gen_range(0.5..2.0))).collect();
        let cfg = WeightedConfiguration::new(points).unwrap();
        let x = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        let y = random_vector(&b.graph, &mut rng, 0.0, 2.0);
        let mid = cone.geodesic(&x, &y).eval(&b.graph, 0.5);
        let (fx, fy, fm) = (objective(&cone, &x, &cfg), objective(&cone, &y, &cfg), objective(&cone, &mid, &cfg));
        prop_assert!(fm >= 0.0);
        prop_assert!(fm <= 0.5 * (fx + fy) + 1e-9);
    }

    #[test]
    fn serialization_round_trips(i in 0usize..8, c in 0.5f64..3.0) {
        let g = space(i).graph.scaled(c).unwrap();
        let again = MetricGraph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(again, g);
    }
}
