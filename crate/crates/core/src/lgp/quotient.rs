//! Fiber quotient of a discrete space and its path-length metric.
//!
//! Two vertices are identified when they are joined by a path whose every
//! edge stays inside one fiber bucket (value change at most eps). The
//! quotient metric weighs a quotient edge by the Euclidean distance of the
//! class values and takes shortest paths; it therefore dominates the
//! straight-line distance between values, with equality exactly when the
//! discrete geodesic is straight.

use std::collections::BinaryHeap;

use serde::Serialize;

use crate::geometry::point::{self, Point};
use crate::{Error, Result};

use super::space::DiscreteSpace;

#[derive(Clone, Debug, Serialize)]
pub struct FiberQuotient {
    /// Class id per vertex; ids are ordered by smallest member vertex.
    pub class_of: Vec<usize>,
    /// Representative f value per class (the smallest member's value).
    pub class_values: Vec<Point>,
    /// Members per class, sorted.
    pub class_members: Vec<Vec<usize>>,
    /// Induced adjacency between classes.
    pub adjacency: Vec<Vec<usize>>,
}

pub fn build_quotient(s: &DiscreteSpace) -> FiberQuotient {
    let n = s.vertices;
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for &(u, v) in &s.edges {
        if u == v {
            continue;
        }
        if s.f[u].dist(&s.f[v]) <= s.eps {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                // Root at the smaller id so representatives are canonical.
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }

    // Number classes by smallest member.
    let mut class_of = vec![usize::MAX; n];
    let mut class_values = Vec::new();
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        if class_of[root] == usize::MAX {
            class_of[root] = class_values.len();
            class_values.push(s.f[root].clone());
            class_members.push(Vec::new());
        }
        class_of[v] = class_of[root];
        class_members[class_of[v]].push(v);
    }

    let k = class_values.len();
    let mut adjacency = vec![Vec::new(); k];
    for &(u, v) in &s.edges {
        let (cu, cv) = (class_of[u], class_of[v]);
        if cu != cv {
            adjacency[cu].push(cv);
            adjacency[cv].push(cu);
        }
    }
    for l in adjacency.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }

    FiberQuotient {
        class_of,
        class_values,
        class_members,
        adjacency,
    }
}

#[derive(Clone, Copy, PartialEq)]
struct MinF(f64);
impl Eq for MinF {}
impl PartialOrd for MinF {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MinF {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Reversed for a min-heap on BinaryHeap.
        other.0.total_cmp(&self.0)
    }
}

impl FiberQuotient {
    pub fn class_count(&self) -> usize {
        self.class_values.len()
    }

    fn edge_weight(&self, a: usize, b: usize) -> f64 {
        point::dist(&self.class_values[a].0, &self.class_values[b].0)
    }

    /// Dijkstra distances from a class; `None` marks unreachable classes.
    pub fn distances_from(&self, from: usize) -> Vec<Option<f64>> {
        let k = self.class_count();
        let mut dist: Vec<Option<f64>> = vec![None; k];
        let mut heap = BinaryHeap::new();
        heap.push((MinF(0.0), from));
        while let Some((MinF(d), c)) = heap.pop() {
            match dist[c] {
                Some(existing) if existing <= d => continue,
                _ => {}
            }
            dist[c] = Some(d);
            for &nb in &self.adjacency[c] {
                let nd = d + self.edge_weight(c, nb);
                if dist[nb].map_or(true, |e| nd < e) {
                    heap.push((MinF(nd), nb));
                }
            }
        }
        dist
    }

    /// Quotient distance between two classes.
    pub fn distance(&self, a: usize, b: usize) -> Option<f64> {
        self.distances_from(a)[b]
    }

    /// Shortest class path with deterministic tie-breaking (smaller
    /// predecessor id wins at equal distance).
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<(Vec<usize>, f64)> {
        let dist = self.distances_from(a);
        let total = dist[b]?;
        // Walk backwards along tight edges.
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            let dc = dist[cur]?;
            let mut best: Option<usize> = None;
            for &p in &self.adjacency[cur] {
                if let Some(dp) = dist[p] {
                    if (dp + self.edge_weight(p, cur) - dc).abs() <= 1e-12 * (1.0 + dc) {
                        best = match best {
                            None => Some(p),
                            Some(q) => Some(q.min(p)),
                        };
                    }
                }
            }
            cur = best?;
            path.push(cur);
        }
        path.reverse();
        Some((path, total))
    }

    /// Straightness of the discrete geodesic between `a` and `b`: every
    /// intermediate class value lies within `tol` of the straight segment
    /// and the path length equals the endpoint distance within `tol`.
    /// Returns the flag plus the maximum deviation observed.
    pub fn geodesic_straightness(&self, a: usize, b: usize, tol: f64) -> Result<(bool, f64)> {
        if a == b {
            return Ok((true, 0.0));
        }
        let Some((path, total)) = self.shortest_path(a, b) else {
            return Err(Error::InfiniteDistance);
        };
        let va = &self.class_values[a].0;
        let vb = &self.class_values[b].0;
        let chord = point::dist(va, vb);
        let mut max_dev = (total - chord).abs();
        for &c in &path[1..path.len() - 1] {
            let dev = point::dist_to_segment(&self.class_values[c].0, va, vb);
            max_dev = max_dev.max(dev);
        }
        Ok((max_dev <= tol, max_dev))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_space() -> DiscreteSpace {
        DiscreteSpace {
            vertices: 3,
            edges: vec![(0, 1), (1, 2)],
            f: vec![Point(vec![0.0]), Point(vec![1.0]), Point(vec![2.0])],
            cones: None,
            closed: true,
            eps: 0.1,
        }
    }

    #[test]
    fn distinct_values_stay_separate() {
        let q = build_quotient(&path_space());
        assert_eq!(q.class_count(), 3);
    }

    #[test]
    fn constant_map_collapses() {
        let s = DiscreteSpace {
            vertices: 4,
            edges: vec![(0, 1), (1, 2), (2, 3)],
            f: vec![Point(vec![5.0]); 4],
            cones: None,
            closed: true,
            eps: 0.1,
        };
        let q = build_quotient(&s);
        assert_eq!(q.class_count(), 1);
    }

    #[test]
    fn circle_generic_levels_have_two_classes() {
        let n = 64;
        let s = crate::scenes::circle_height_space(n);
        let q = build_quotient(&s);
        assert_eq!(q.class_count(), n); // all values distinct along each side
        // Vertices k and n-k share the value but not the class.
        assert_eq!(q.class_values[q.class_of[10]].0, q.class_values[q.class_of[54]].0);
        assert_ne!(q.class_of[10], q.class_of[54]);
    }

    #[test]
    fn path_metric_sums_weights() {
        let q = build_quotient(&path_space());
        let d = q.distance(q.class_of[0], q.class_of[2]).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
        assert_eq!(q.distance(q.class_of[1], q.class_of[1]), Some(0.0));
    }

    #[test]
    fn circle_metric_takes_shorter_route_over_the_top() {
        let n = 64;
        let s = crate::scenes::circle_height_space(n);
        let q = build_quotient(&s);
        // Level of vertex 10 (value cos(2*pi*10/64) ~ 0.556): over-the-top
        // route telescopes to 2*(1 - v); the bottom route costs 2*(v + 1).
        let k = 10usize;
        let v = s.f[k][0];
        let d = q.distance(q.class_of[k], q.class_of[n - k]).unwrap();
        assert!((d - 2.0 * (1.0 - v)).abs() < 1e-9, "d={d}");
    }

    #[test]
    fn circle_level_pair_geodesic_is_not_straight() {
        let s = crate::scenes::circle_height_space(64);
        let q = build_quotient(&s);
        let (straight, dev) = q
            .geodesic_straightness(q.class_of[10], q.class_of[54], 1e-6)
            .unwrap();
        assert!(!straight);
        assert!(dev > 0.5);
    }

    #[test]
    fn straightness_on_monotone_path() {
        let q = build_quotient(&path_space());
        let (straight, dev) = q
            .geodesic_straightness(q.class_of[0], q.class_of[2], 1e-9)
            .unwrap();
        assert!(straight, "deviation {dev}");
    }

    #[test]
    fn disconnected_quotient_distance_is_none() {
        let s = DiscreteSpace {
            vertices: 2,
            edges: vec![],
            f: vec![Point(vec![0.0]), Point(vec![1.0])],
            cones: None,
            closed: true,
            eps: 0.01,
        };
        let q = build_quotient(&s);
        assert_eq!(q.distance(0, 1), None);
        assert!(matches!(
            q.geodesic_straightness(0, 1, 1e-9),
            Err(Error::InfiniteDistance)
        ));
    }

    #[test]
    fn metric_axioms_on_circle() {
        let s = crate::scenes::circle_height_space(32);
        let q = build_quotient(&s);
        let k = q.class_count();
        let all: Vec<Vec<Option<f64>>> = (0..k).map(|i| q.distances_from(i)).collect();
        for a in 0..k {
            for b in 0..k {
                let dab = all[a][b].unwrap();
                let dba = all[b][a].unwrap();
                assert!((dab - dba).abs() <= 1e-12);
                if a != b {
                    assert!(dab > 0.0);
                }
                // Lower bound by the value distance.
                let chord = point::dist(&q.class_values[a].0, &q.class_values[b].0);
                assert!(chord <= dab + 1e-12);
                for c in 0..k {
                    assert!(dab <= all[a][c].unwrap() + all[c][b].unwrap() + 1e-12);
                }
            }
        }
    }
}
