//! Finite simple graphs with an acyclic orientation.
//!
//! The orientation induces a partial order on the vertices which is total on
//! every clique. It is realised here through a topological rank: for two
//! adjacent vertices `u -> v` we always have `rank(u) < rank(v)`.

mod complex;
mod forest;
pub mod perm;

pub use complex::{CliqueComplex, Located};
pub use forest::SpanningForest;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// How the direction of each edge is chosen when reading an edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `u v` means `u -> v`.
    #[default]
    FileOrder,
    /// Every edge points from the lower to the higher vertex id.
    Natural,
}

#[derive(Debug, Clone)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adjacency: Vec<bool>,
    rank: Vec<usize>,
}

impl Graph {
    /// Builds a graph from directed edges `u -> v`.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = num_vertices;
        let mut adjacency = vec![false; n * n];
        let mut neighbors = vec![Vec::new(); n];
        let mut out = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if adjacency[u * n + v] {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
            adjacency[u * n + v] = true;
            adjacency[v * n + u] = true;
            neighbors[u].push(v);
            neighbors[v].push(u);
            out[u].push(v);
            indeg[v] += 1;
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        // Kahn's algorithm, smallest id first so the rank is deterministic.
        let mut rank = vec![usize::MAX; n];
        let mut remaining = indeg.clone();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| remaining[v] == 0).map(Reverse).collect();
        let mut next = 0;
        while let Some(Reverse(v)) = heap.pop() {
            rank[v] = next;
            next += 1;
            for &w in &out[v] {
                remaining[w] -= 1;
                if remaining[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if next < n {
            return Err(Error::Orientation {
                cycle: find_cycle(n, &edges, &rank),
            });
        }

        Ok(Graph {
            num_vertices: n,
            edges,
            neighbors,
            adjacency,
            rank,
        })
    }

    /// Orients every pair from the lower to the higher value of `key`.
    /// `key` must be injective.
    pub fn oriented_by_key(num_vertices: usize, pairs: &[(usize, usize)], key: &[usize]) -> Result<Self> {
        if key.len() != num_vertices {
            return Err(Error::DimensionMismatch {
                expected: num_vertices,
                found: key.len(),
            });
        }
        let edges = pairs
            .iter()
            .map(|&(a, b)| {
                if a < num_vertices && b < num_vertices && key[b] < key[a] {
                    (b, a)
                } else {
                    (a, b)
                }
            })
            .collect();
        Graph::new(num_vertices, edges)
    }

    /// Orients every edge from the lower to the higher vertex id.
    pub fn natural(num_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let key: Vec<usize> = (0..num_vertices).collect();
        Graph::oriented_by_key(num_vertices, pairs, &key)
    }

    pub fn with_orientation(num_vertices: usize, pairs: Vec<(usize, usize)>, orientation: Orientation) -> Result<Self> {
        match orientation {
            Orientation::FileOrder => Graph::new(num_vertices, pairs),
            Orientation::Natural => Graph::natural(num_vertices, &pairs),
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::natural(n, &pairs).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::natural(n, &pairs).expect("path graph is valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            pairs.push((0, n - 1));
        }
        Graph::natural(n, &pairs).expect("cycle graph is valid")
    }

    /// Disjoint union, the vertices of `other` shifted after those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.num_vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(off + other.num_vertices, edges).expect("union of acyclic graphs is acyclic")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Directed edges in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.num_vertices && v < self.num_vertices && self.adjacency[u * self.num_vertices + v]
    }

    /// Neighbors in ascending id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Position of `v` in the deterministic topological order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// `u < v` in the orientation order. Meaningful for adjacent vertices,
    /// where it coincides with the edge direction `u -> v`.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }

    /// True when every pair of distinct entries is an edge.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        for (a, &u) in vertices.iter().enumerate() {
            if u >= self.num_vertices {
                return false;
            }
            for &v in &vertices[a + 1..] {
                if !self.is_adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components as lists of vertices, each ascending, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let forest = SpanningForest::bfs(self);
        let mut comps: Vec<Vec<usize>> = vec![Vec::new(); forest.roots().len()];
        for v in 0..self.num_vertices {
            comps[forest.component(v)].push(v);
        }
        comps
    }
}

fn find_cycle(n: usize, edges: &[(usize, usize)], rank: &[usize]) -> Vec<usize> {
    // Every vertex left unranked by Kahn's algorithm has an unranked
    // predecessor, so walking predecessors must revisit a vertex.
    let mut pred = vec![usize::MAX; n];
    for &(u, v) in edges {
        if rank[u] == usize::MAX && rank[v] == usize::MAX && pred[v] == usize::MAX {
            pred[v] = u;
        }
    }
    let start = (0..n).find(|&v| rank[v] == usize::MAX).unwrap_or(0);
    let mut seen = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = walk.len();
        walk.push(v);
        v = pred[v];
    }
    let mut cycle = walk[seen[v]..].to_vec();
    cycle.reverse();
    // Start the reported cycle at its smallest vertex.
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &x)| x)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(min_pos);
    cycle
}
