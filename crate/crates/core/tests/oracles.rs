// SPDX-License-Identifier: Apache-2.0

//! Independent brute-force oracles for the graph and cone computations.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rand::Rng;
use shadowfold::bundled;
use shadowfold::graph::{EdgeId, GraphPoint};
use shadowfold::limitlog::{classify, Shadow, ShadowContact};
use shadowfold::sample::{random_direction, random_vector, trial_rng};
use shadowfold::{Cone, ConeVector, MetricGraph};

#[derive(PartialEq)]
struct State(f64, usize);

impl Eq for State {}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Shortest path length on a polar mesh of the cone over a circle of
/// length `c`: nodes `(θ_i, r_j)` plus the apex, with neighbours joined by
/// their flat distance in the developed sector.
fn mesh_distance(c: f64, from: (f64, f64), to: (f64, f64)) -> f64 {
    const NT: usize = 600;
    const NR: usize = 60;
    const R_MAX: f64 = 4.5;
    const DI: i64 = 24;
    const DJ: i64 = 8;
    let dt = c / NT as f64;
    let dr = R_MAX / NR as f64;
    let apex = NT * NR;
    let node = |i: usize, j: usize| i * NR + j;
    let coords = |n: usize| ((n / NR) as f64 * dt, ((n % NR) + 1) as f64 * dr);
    let nearest = |(t, r): (f64, f64)| node(((t / dt).round() as usize) % NT, ((r / dr).round() as usize).clamp(1, NR) - 1);
    let (src, dst) = (nearest(from), nearest(to));
    let mut dist = vec![f64::INFINITY; apex + 1];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(State(0.0, src));
    while let Some(State(d, n)) = heap.pop() {
        if n == dst {
            return d;
        }
        if d > dist[n] {
            continue;
        }
        let mut relax = |m: usize, w: f64, heap: &mut BinaryHeap<State>| {
            if d + w < dist[m] {
                dist[m] = d + w;
                heap.push(State(d + w, m));
            }
        };
        if n == apex {
            for i in 0..NT {
                relax(node(i, 0), dr, &mut heap);
            }
            continue;
        }
        let (i, j) = (n / NR, n % NR);
        let (_, r1) = coords(n);
        if j == 0 {
            relax(apex, dr, &mut heap);
        }
        for di in -DI..=DI {
            for dj in -DJ..=DJ {
                let jj = j as i64 + dj;
                if (di == 0 && dj == 0) || jj < 0 || jj >= NR as i64 {
                    continue;
                }
                let ii = (i as i64 + di).rem_euclid(NT as i64) as usize;
                let r2 = (jj + 1) as f64 * dr;
                let a = di.unsigned_abs() as f64 * dt;
                let w = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * a.cos()).max(0.0).sqrt();
                relax(node(ii, jj as usize), w, &mut heap);
            }
        }
    }
    f64::INFINITY
}

#[test]
fn cone_metric_matches_the_mesh() {
    let c = 2.5 * PI;
    let cone = Cone::new(bundled::get("kale2.5pi").unwrap().graph);
    let at = |s: f64, r: f64| ConeVector::new(cone.graph().canonicalize(EdgeId(0), s), r).unwrap();
    let cases = [
        ((0.0, 1.5), (0.75 * PI, 1.5)),
        ((0.0, 3.0), (1.25 * PI, 3.0)),
        ((0.3, 2.1), (0.3 + 0.5 * PI, 0.9)),
        ((0.0, 1.2), (2.2 * PI, 2.4)),
    ];
    for ((s1, r1), (s2, r2)) in cases {
        let exact = cone.distance(&at(s1, r1), &at(s2, r2));
        let mesh = mesh_distance(c, (s1, r1), (s2, r2));
        assert!((exact - mesh).abs() < 1e-2 * exact, "{exact} vs {mesh}");
    }
    let v = at(0.0, 1.0);
    let w = at(0.75 * PI, 1.0);
    let formula = (2.0 - 2.0 * (0.75 * PI).cos()).sqrt();
    assert!((cone.distance(&v, &w) - formula).abs() < 1e-3);
    assert!((cone.distance(&at(0.0, 3.0), &at(1.25 * PI, 4.0)) - 7.0).abs() < 1e-12);
}

/// Lengths of all simple cycles, by depth-first search from every vertex.
fn cycle_girth(g: &MetricGraph) -> f64 {
    let n = g.vertex_count();
    let mut best = f64::INFINITY;
    fn dfs(g: &MetricGraph, start: usize, at: usize, used: &mut Vec<bool>, on: &mut Vec<bool>, len: f64, best: &mut f64) {
        for (i, e) in g.edges().iter().enumerate() {
            if used[i] {
                continue;
            }
            let next = if e.u.0 == at {
                e.v.0
            } else if e.v.0 == at {
                e.u.0
            } else {
                continue;
            };
            if next == start {
                *best = best.min(len + e.length);
                continue;
            }
            if on[next] || next < start {
                continue;
            }
            used[i] = true;
            on[next] = true;
            dfs(g, start, next, used, on, len + e.length, best);
            on[next] = false;
            used[i] = false;
        }
    }
    for s in 0..n {
        let mut used = vec![false; g.edges().len()];
        let mut on = vec![false; n];
        on[s] = true;
        dfs(g, s, s, &mut used, &mut on, 0.0, &mut best);
    }
    best
}

fn random_graph(seed: u64) -> MetricGraph {
    let mut rng = trial_rng(seed, 0);
    let n = rng.gen_range(1..=5);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let m = rng.gen_range(n.max(2)..=n + 4);
    let mut edges: Vec<(String, String, String, f64)> = (1..n)
        .map(|i| (format!("t{i}"), names[rng.gen_range(0..i)].clone(), names[i].clone(), rng.gen_range(0.2..3.0)))
        .collect();
    for k in edges.len()..m {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        edges.push((format!("x{k}"), names[a].clone(), names[b].clone(), rng.gen_range(0.2..3.0)));
    }
    MetricGraph::new(names, edges).unwrap()
}

#[test]
fn girth_matches_cycle_enumeration() {
    let petersen = bundled::get("bhv-t4").unwrap().graph;
    assert_eq!(cycle_girth(&petersen), 2.5 * PI);
    assert!((petersen.girth() - 2.5 * PI).abs() < 1e-12);
    for b in bundled::all() {
        let (a, o) = (b.graph.girth(), cycle_girth(&b.graph));
        assert!(a == o || (a - o).abs() < 1e-12, "{}: {a} vs {o}", b.name);
    }
    for seed in 0..300 {
        let g = random_graph(seed);
        let (a, o) = (g.girth(), cycle_girth(&g));
        assert!(a == o || (a - o).abs() < 1e-12 * o, "seed {seed}: {a} vs {o}\n{g}");
    }
}

/// All simple path lengths between two points, on the graph with the
/// points inserted as extra nodes.
fn simple_path_lengths(g: &MetricGraph, p: GraphPoint, q: GraphPoint) -> Vec<f64> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, f64, usize)>> = vec![Vec::new(); n + 2];
    let mut pieces = 0;
    let mut link = |adj: &mut Vec<Vec<(usize, f64, usize)>>, a: usize, b: usize, len: f64| {
        adj[a].push((b, len, pieces));
        if a != b {
            adj[b].push((a, len, pieces));
        }
        pieces += 1;
    };
    let node = |x: GraphPoint, extra: usize| match x {
        GraphPoint::Vertex(v) => v.0,
        GraphPoint::Edge { .. } => extra,
    };
    let (pn, qn) = (node(p, n), node(q, n + 1));
    for (i, e) in g.edges().iter().enumerate() {
        let mut cuts: Vec<(f64, usize)> = Vec::new();
        for (x, id) in [(p, pn), (q, qn)] {
            if let GraphPoint::Edge { edge, offset } = x {
                if edge == EdgeId(i) {
                    cuts.push((offset, id));
                }
            }
        }
        cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut prev = (0.0, e.u.0);
        for c in cuts {
            link(&mut adj, prev.1, c.1, c.0 - prev.0);
            prev = c;
        }
        link(&mut adj, prev.1, e.v.0, e.length - prev.0);
    }
    let mut out = Vec::new();
    fn dfs(adj: &[Vec<(usize, f64, usize)>], at: usize, goal: usize, on: &mut Vec<bool>, len: f64, out: &mut Vec<f64>) {
        if at == goal {
            out.push(len);
            return;
        }
        for &(next, w, _) in &adj[at] {
            if !on[next] {
                on[next] = true;
                dfs(adj, next, goal, on, len + w, out);
                on[next] = false;
            }
        }
    }
    let mut on = vec![false; n + 2];
    on[pn] = true;
    dfs(&adj, pn, qn, &mut on, 0.0, &mut out);
    out
}

#[test]
fn shortest_paths_match_enumeration() {
    let mut unique_checked = 0;
    for b in bundled::all() {
        let g = &b.graph;
        let cat0 = g.validate_cat1().pass;
        for trial in 0..200 {
            let mut rng = trial_rng(11, trial);
            let p = random_direction(g, &mut rng);
            let q = random_direction(g, &mut rng);
            if p == q {
                continue;
            }
            let mut lengths = simple_path_lengths(g, p, q);
            lengths.sort_by(f64::total_cmp);
            let best = lengths[0];
            let path = g.shortest_path(p, q);
            assert!((path.length - best).abs() <= 1e-12 * best.max(1.0), "{}: {} vs {best}", b.name, path.length);
            let second = lengths.get(1).copied().unwrap_or(f64::INFINITY);
            let gap = second - best;
            if gap > 1e-9 {
                assert!(!path.ties, "{}", b.name);
            } else if gap == 0.0 {
                assert!(path.ties, "{}", b.name);
            }
            if cat0 && best < PI - 1e-9 {
                assert!(gap > 1e-9, "{}: nonunique short path", b.name);
                unique_checked += 1;
            }
        }
    }
    assert!(unique_checked > 300);
    let g = bundled::get("cone1.5pi").unwrap().graph;
    let p = g.canonicalize(EdgeId(0), 0.1);
    let q = g.canonicalize(EdgeId(0), 0.1 + 0.75 * PI);
    assert!(g.shortest_path(p, q).ties);
}

/// Classification from the angular-distance profile along the path,
/// sampled densely and refined near its peaks; `None` when a contact sits
/// within rounding of the shadow boundary.
fn sampled_classification(cone: &Cone, z: &ConeVector, v: &ConeVector, w: &ConeVector) -> Option<ShadowContact> {
    let g = cone.graph();
    let zd = *z.dir().unwrap();
    let path = g.shortest_path(*v.dir().unwrap(), *w.dir().unwrap());
    let theta = path.length;
    let f = |s: f64| g.distance(zd, path.point_at(g, s));
    let in_shadow = |s: f64| f(s) >= PI;
    if theta >= PI {
        return Some(if in_shadow(0.0) || in_shadow(theta) {
            ShadowContact::Segment
        } else {
            ShadowContact::ApexPassingMiss
        });
    }
    const N: usize = 4000;
    let h = theta / N as f64;
    let samples: Vec<f64> = (0..=N).map(|k| if k == N { theta } else { k as f64 * h }).collect();
    let values: Vec<f64> = samples.iter().map(|&s| f(s)).collect();
    let mut components: Vec<(usize, usize)> = Vec::new();
    for (k, &value) in values.iter().enumerate() {
        if value >= PI - h {
            match components.last_mut() {
                Some(c) if c.1 + 1 == k => c.1 = k,
                _ => components.push((k, k)),
            }
        }
    }
    let mut contacts: Vec<(f64, f64)> = Vec::new();
    for (a, b) in components {
        let lo = if a == 0 { 0.0 } else { samples[a - 1] };
        let hi = if b == N { theta } else { samples[b + 1] };
        const M: usize = 20_000;
        let fine: Vec<f64> = (0..=M).map(|k| if k == M { hi } else { lo + (hi - lo) * k as f64 / M as f64 }).collect();
        let hits: Vec<f64> = fine.iter().copied().filter(|&s| in_shadow(s)).collect();
        if hits.is_empty() {
            let peak = fine.iter().map(|&s| f(s)).fold(f64::NEG_INFINITY, f64::max);
            let step = (hi - lo) / M as f64;
            if peak >= PI - 2.0 * step {
                return None;
            }
            continue;
        }
        let (first, last) = (hits[0], *hits.last().unwrap());
        let span = last - first;
        let step = (hi - lo) / M as f64;
        if span > 0.0 && span < 10.0 * step {
            return None;
        }
        contacts.push((first, last));
    }
    let touches = |s: f64| s == 0.0 || s == theta;
    Some(match contacts.as_slice() {
        [] => ShadowContact::Disjoint,
        [(a, b)] if a == b && touches(*a) => ShadowContact::EndpointTouch,
        [(a, b)] if a == b => ShadowContact::OneInteriorPoint,
        _ => ShadowContact::Segment,
    })
}

#[test]
fn classification_matches_dense_sampling() {
    let mut seen = std::collections::HashSet::new();
    let mut compared = 0;
    for name in ["plane", "kale2.5pi", "kale3pi", "quadrantplane", "openbook3", "bhv-t4"] {
        let cone = Cone::new(bundled::get(name).unwrap().graph);
        let g = cone.graph();
        for trial in 0..300 {
            let mut rng = trial_rng(5, trial);
            let z = random_vector(g, &mut rng, 1.0, 1.0);
            let shadow = Shadow::new(g, &z).unwrap();
            let mut v = random_vector(g, &mut rng, 1.0, 1.0);
            let mut w = random_vector(g, &mut rng, 1.0, 1.0);
            if trial % 2 == 1 && !shadow.is_empty() {
                // Straddle a shadow direction to reach the isolated-point regimes.
                let arc = shadow.regions()[rng.gen_range(0..shadow.regions().len())];
                let p = g.canonicalize(arc.edge, if arc.hi > arc.lo { rng.gen_range(arc.lo..=arc.hi) } else { arc.lo });
                let germs = g.germs_at(p);
                let mut step = |d: f64| {
                    let germ = germs[rng.gen_range(0..germs.len())];
                    let reach = g.germ_reach(p, germ).unwrap();
                    ConeVector::new(g.advance(p, germ, d.min(reach)).unwrap(), 1.0).unwrap()
                };
                v = step(0.7);
                w = step(0.9);
            }
            let Some(expected) = sampled_classification(&cone, &z, &v, &w) else {
                continue;
            };
            let got = classify(&cone, &shadow, &v, &w).unwrap();
            assert_eq!(got, expected, "{name} trial {trial}");
            seen.insert(got);
            compared += 1;
        }
    }
    assert!(compared > 1000);
    for c in [
        ShadowContact::Disjoint,
        ShadowContact::EndpointTouch,
        ShadowContact::OneInteriorPoint,
        ShadowContact::Segment,
        ShadowContact::ApexPassingMiss,
    ] {
        assert!(seen.contains(&c), "{c:?} never reached");
    }
}

#[test]
fn limit_tangent_cones_are_cat0() {
    for b in bundled::cat0() {
        let mut rng = trial_rng(2, 0);
        for _ in 0..5 {
            let z = random_vector(&b.graph, &mut rng, 1.0, 1.0);
            let target = shadowfold::limitlog::LimitTangentCone::new(&b.graph, &z).unwrap();
            assert!(target.book().theta().validate_cat1().pass, "{}", b.name);
            let report = target.carrier().cat0_comparison_check(500, 1, 1e-9);
            assert!(report.passes(), "{}", b.name);
        }
    }
}

