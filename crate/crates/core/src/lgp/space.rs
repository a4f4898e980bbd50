//! Finite discrete spaces: an undirected graph with a map value per vertex,
//! optional declared cones, and closedness metadata.
//!
//! Finite graphs make all the point-set hypotheses of the local-to-global
//! machinery (local connectedness, normality, first countability) automatic;
//! what remains to check is fiber structure, cones, and closedness metadata.

use serde::{Deserialize, Serialize};

use crate::geometry::cone::ConvexCone;
use crate::geometry::point::Point;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscreteSpace {
    /// Number of vertices; vertex ids are 0..vertices.
    pub vertices: usize,
    /// Undirected edges.
    pub edges: Vec<(usize, usize)>,
    /// Map value per vertex.
    pub f: Vec<Point>,
    /// Declared cone per vertex (vertex of the cone must equal the f value).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<ConvexCone>>,
    /// Metadata: whether the represented map is closed. Never inferred;
    /// closedness is not decidable from a finite sample.
    pub closed: bool,
    /// Fiber bucket width: values within eps along a path are one fiber
    /// level.
    pub eps: f64,
}

impl DiscreteSpace {
    pub fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(Error::EmptyInput("space needs at least one vertex"));
        }
        if self.f.len() != self.vertices {
            return Err(Error::DimensionMismatch {
                expected: self.vertices,
                got: self.f.len(),
            });
        }
        if !(self.eps > 0.0) {
            return Err(Error::NonFiniteValue(self.eps));
        }
        let dim = self.f[0].dim();
        for v in &self.f {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        for &(u, v) in &self.edges {
            if u >= self.vertices || v >= self.vertices {
                return Err(Error::InvalidArgument("edge endpoint out of range"));
            }
        }
        if let Some(cones) = &self.cones {
            if cones.len() != self.vertices {
                return Err(Error::MissingCones(self.vertices - cones.len()));
            }
            for (i, c) in cones.iter().enumerate() {
                c.validate()?;
                if c.vertex.0 != self.f[i].0 {
                    return Err(Error::InvalidArgument(
                        "declared cone vertex differs from the vertex f value",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn target_dim(&self) -> usize {
        self.f[0].dim()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    /// Vertices within `hops` edges of `start` (start included), sorted.
    pub fn hop_ball(&self, adj: &[Vec<usize>], start: usize, hops: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices];
        let mut queue = std::collections::VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        let mut out = vec![start];
        while let Some(u) = queue.pop_front() {
            if dist[u] == hops {
                continue;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Median image step over edges; the natural raster resolution.
    pub fn median_edge_step(&self) -> f64 {
        let mut steps: Vec<f64> = self
            .edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| self.f[u].dist(&self.f[v]))
            .filter(|d| *d > 0.0)
            .collect();
        if steps.is_empty() {
            return 1.0;
        }
        steps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        steps[steps.len() / 2]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let space: DiscreteSpace = serde_json::from_str(s)?;
        space.validate()?;
        Ok(space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = DiscreteSpace {
            vertices: 3,
            edges: vec![(0, 1), (1, 2)],
            f: vec![Point(vec![0.0]), Point(vec![1.0]), Point(vec![2.0])],
            cones: None,
            closed: true,
            eps: 0.1,
        };
        let j = s.to_json().unwrap();
        let back = DiscreteSpace::from_json(&j).unwrap();
        assert_eq!(back.vertices, 3);
        assert_eq!(back.edges.len(), 2);
    }

    #[test]
    fn cone_vertex_mismatch_rejected() {
        let s = DiscreteSpace {
            vertices: 1,
            edges: vec![],
            f: vec![Point(vec![0.0])],
            cones: Some(vec![ConvexCone {
                vertex: Point(vec![1.0]),
                subspace: vec![],
                generators: vec![],
            }]),
            closed: true,
            eps: 0.1,
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn hop_ball_radii() {
        let s = DiscreteSpace {
            vertices: 5,
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 4)],
            f: (0..5).map(|i| Point(vec![i as f64])).collect(),
            cones: None,
            closed: true,
            eps: 0.1,
        };
        let adj = s.adjacency();
        assert_eq!(s.hop_ball(&adj, 2, 1), vec![1, 2, 3]);
        assert_eq!(s.hop_ball(&adj, 0, 2), vec![0, 1, 2]);
    }
}
