use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// Breadth-first spanning forest. Each component is rooted at its smallest
/// vertex and neighbours are visited in ascending id order.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    component: Vec<usize>,
    roots: Vec<usize>,
    /// Tree edges in the graph's own direction, in discovery order.
    tree_edges: Vec<(usize, usize)>,
    /// BFS discovery order; parents precede children.
    order: Vec<usize>,
}

impl SpanningForest {
    pub fn bfs(graph: &Graph) -> Self {
        let n = graph.num_vertices();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut component = vec![usize::MAX; n];
        let mut roots = Vec::new();
        let mut tree_edges = Vec::new();
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(root);
            component[root] = c;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in graph.neighbors(v) {
                    if component[w] == usize::MAX {
                        component[w] = c;
                        parent[w] = Some(v);
                        depth[w] = depth[v] + 1;
                        tree_edges.push(if graph.precedes(v, w) { (v, w) } else { (w, v) });
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            depth,
            component,
            roots,
            tree_edges,
            order,
        }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Index of the component containing `v`.
    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Vertices in discovery order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }

    /// Number of edges on the forest path from `i` to `j`.
    pub fn distance(&self, i: usize, j: usize) -> Result<usize> {
        if self.component[i] != self.component[j] {
            return Err(Error::DifferentComponents(i, j));
        }
        let (mut a, mut b) = (i, j);
        let mut steps = 0;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("non-root has a parent");
            steps += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("non-root has a parent");
            steps += 1;
        }
        while a != b {
            a = self.parent[a].expect("non-root has a parent");
            b = self.parent[b].expect("non-root has a parent");
            steps += 2;
        }
        Ok(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_tree_on_complete_graph() {
        let f = SpanningForest::bfs(&Graph::complete(4));
        assert_eq!(f.tree_edges(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(f.distance(1, 2).unwrap(), 2);
        assert_eq!(f.distance(0, 1).unwrap(), 1);
        assert_eq!(f.distance(3, 3).unwrap(), 0);
    }

    #[test]
    fn forest_of_disconnected_graph() {
        let g = Graph::complete(2).disjoint_union(&Graph::complete(2));
        let f = SpanningForest::bfs(&g);
        assert_eq!(f.tree_edges().len(), 2);
        assert_eq!(f.roots(), &[0, 2]);
        assert!(matches!(f.distance(0, 3), Err(Error::DifferentComponents(0, 3))));
    }

    #[test]
    fn triangle_tree_has_two_edges() {
        let f = SpanningForest::bfs(&Graph::complete(3));
        assert_eq!(f.tree_edges().len(), 2);
        assert!(!f.is_tree_edge(1, 2));
    }
}
