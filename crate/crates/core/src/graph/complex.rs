use std::collections::HashMap;

use super::{perm, Graph};
use crate::error::{Error, Result};

/// Position of an arbitrary vertex tuple relative to the canonical store.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Located {
    /// Simplex dimension, one less than the tuple length.
    pub degree: usize,
    /// Index of the sorted representative among the `degree`-simplices.
    pub index: usize,
    /// Rank of the permutation taking the sorted representative to the tuple.
    pub perm_rank: usize,
    /// Sign of that permutation.
    pub sign: f64,
}

/// The clique complex of an oriented graph.
///
/// A `k`-simplex is a `(k+1)`-clique stored as its vertex tuple sorted by the
/// orientation order. Simplices of each degree are listed lexicographically.
#[derive(Debug, Clone)]
pub struct CliqueComplex {
    graph: Graph,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    cofaces: Vec<Vec<Vec<(usize, usize)>>>,
    cap: Option<usize>,
    truncated: bool,
}

impl CliqueComplex {
    /// Enumerates every clique, or every clique with at most `max_size`
    /// vertices when a cap is given.
    pub fn build(graph: Graph, max_size: Option<usize>) -> Self {
        let n = graph.num_vertices();
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by_key(|&v| graph.rank(v));

        let mut levels: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut truncated = false;
        let mut clique = Vec::new();
        extend(&graph, &mut clique, &by_rank, max_size, &mut levels, &mut truncated);
        for level in &mut levels {
            level.sort_unstable();
        }

        let index: Vec<HashMap<Vec<usize>, usize>> = levels
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();

        let mut faces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(levels.len());
        let mut cofaces: Vec<Vec<Vec<(usize, usize)>>> =
            levels.iter().map(|level| vec![Vec::new(); level.len()]).collect();
        for (k, level) in levels.iter().enumerate() {
            let mut level_faces = Vec::with_capacity(level.len());
            for (i, s) in level.iter().enumerate() {
                if k == 0 {
                    level_faces.push(Vec::new());
                    continue;
                }
                let fs: Vec<usize> = (0..=k)
                    .map(|j| {
                        let mut f = s.clone();
                        f.remove(j);
                        index[k - 1][&f]
                    })
                    .collect();
                for (j, &f) in fs.iter().enumerate() {
                    cofaces[k - 1][f].push((i, j));
                }
                level_faces.push(fs);
            }
            faces.push(level_faces);
        }

        CliqueComplex {
            graph,
            simplices: levels,
            index,
            faces,
            cofaces,
            cap: max_size,
            truncated,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    /// Number of stored simplex degrees.
    pub fn num_degrees(&self) -> usize {
        self.simplices.len()
    }

    /// Clique number, or the cap when enumeration was truncated.
    pub fn clique_number(&self) -> usize {
        self.simplices.len()
    }

    /// True when larger cliques exist than were enumerated.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Ensures `k`-simplices were enumerated exhaustively.
    pub fn require_degree(&self, k: usize) -> Result<()> {
        match self.cap {
            Some(cap) if self.truncated && k + 1 > cap => Err(Error::Truncated { needed: k + 1, cap }),
            _ => Ok(()),
        }
    }

    /// Clique counts by size, starting with vertices.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Number of `k`-simplices, zero beyond the clique number.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[usize] {
        &self.simplices[k][i]
    }

    /// Index of an already sorted tuple.
    pub fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        if sorted.is_empty() {
            return None;
        }
        self.index.get(sorted.len() - 1)?.get(sorted).copied()
    }

    /// Indices of the faces, the `j`-th omitting vertex `j`.
    pub fn faces(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    /// Cofaces as `(index, position of the added vertex)`.
    pub fn cofaces(&self, k: usize, i: usize) -> &[(usize, usize)] {
        self.cofaces.get(k).map_or(&[], |c| c[i].as_slice())
    }

    /// Sorts vertices into the orientation order and returns the sign of the
    /// sorting permutation.
    pub fn sort_tuple(&self, tuple: &mut [usize]) -> f64 {
        let m = tuple.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&a| self.graph.rank(tuple[a]));
        let s = perm::sign(&order);
        let sorted: Vec<usize> = order.iter().map(|&a| tuple[a]).collect();
        tuple.copy_from_slice(&sorted);
        s
    }

    /// Finds the stored simplex carrying `tuple`, or `None` off cliques.
    pub fn locate(&self, tuple: &[usize]) -> Option<Located> {
        let m = tuple.len();
        if m == 0 || m > self.simplices.len() {
            return None;
        }
        if m == 1 {
            return (tuple[0] < self.num_vertices()).then_some(Located {
                degree: 0,
                index: tuple[0],
                perm_rank: 0,
                sign: 1.0,
            });
        }
        if !self.graph.is_clique(tuple) {
            return None;
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&a| self.graph.rank(tuple[a]));
        let sorted: Vec<usize> = order.iter().map(|&a| tuple[a]).collect();
        let index = *self.index[m - 1].get(&sorted)?;
        // tuple[a] = sorted[p[a]]
        let mut p = vec![0; m];
        for (b, &a) in order.iter().enumerate() {
            p[a] = b;
        }
        Some(Located {
            degree: m - 1,
            index,
            perm_rank: perm::rank(&p),
            sign: perm::sign(&p),
        })
    }

    /// Every ordering of simplex `(k, i)`, listed by permutation rank.
    pub fn ordered_tuples(&self, k: usize, i: usize) -> Vec<Vec<usize>> {
        let s = &self.simplices[k][i];
        perm::all(k + 1)
            .into_iter()
            .map(|p| p.iter().map(|&b| s[b]).collect())
            .collect()
    }

    /// Index of the edge `{u, v}` and whether `u -> v` is its direction.
    pub fn edge(&self, u: usize, v: usize) -> Option<(usize, bool)> {
        if !self.graph.is_adjacent(u, v) {
            return None;
        }
        let forward = self.graph.precedes(u, v);
        let key = if forward { [u, v] } else { [v, u] };
        self.index.get(1)?.get(&key[..]).map(|&i| (i, forward))
    }

    /// Vertices adjacent to every entry of `vertices`, ascending.
    pub fn common_neighbors(&self, vertices: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = vertices.split_first() else {
            return (0..self.num_vertices()).collect();
        };
        self.graph
            .neighbors(first)
            .iter()
            .copied()
            .filter(|&l| rest.iter().all(|&v| self.graph.is_adjacent(l, v)))
            .collect()
    }

    /// Number of cliques one larger that contain simplex `(k, i)`.
    pub fn degree(&self, k: usize, i: usize) -> usize {
        self.common_neighbors(&self.simplices[k][i]).len()
    }

    /// Degree of a clique given in any vertex order.
    pub fn clique_degree(&self, vertices: &[usize]) -> Result<usize> {
        let loc = self
            .locate(vertices)
            .ok_or_else(|| Error::NotAClique(vertices.to_vec()))?;
        Ok(self.degree(loc.degree, loc.index))
    }

    /// Parallel neighbours of simplex `(k, i)` with their signs, ordered by index.
    ///
    /// Two `k`-simplices are parallel when they share a `(k-1)`-face but do not
    /// span a common `(k+1)`-simplex. The sign is `e(g,a) e(g,b)` with the
    /// incidence `e(g,s) = (-1)^j` when `s` minus its `j`-th vertex is `g`. For
    /// vertices the shared face is empty and every neighbour has sign `-1`.
    pub fn parallel_neighbors(&self, k: usize, i: usize) -> Vec<(usize, f64)> {
        let alpha = &self.simplices[k][i];
        if k == 0 {
            return self.graph.neighbors(alpha[0]).iter().map(|&l| (l, -1.0)).collect();
        }
        let mut out = Vec::new();
        for j in 0..=k {
            let removed = alpha[j];
            let mut gamma = alpha.clone();
            gamma.remove(j);
            let eps_alpha = if j % 2 == 0 { 1.0 } else { -1.0 };
            for l in self.common_neighbors(&gamma) {
                if l == removed || self.graph.is_adjacent(l, removed) {
                    continue;
                }
                let pos = gamma
                    .iter()
                    .position(|&v| self.graph.precedes(l, v))
                    .unwrap_or(gamma.len());
                let mut beta = gamma.clone();
                beta.insert(pos, l);
                let eps_beta = if pos % 2 == 0 { 1.0 } else { -1.0 };
                let b = self.index[k][&beta];
                out.push((b, eps_alpha * eps_beta));
            }
        }
        out.sort_by_key(|&(b, _)| b);
        out
    }

    /// Parallel neighbours of a clique given in any vertex order, as sorted tuples.
    pub fn parallel_neighbors_of(&self, vertices: &[usize]) -> Result<Vec<(Vec<usize>, f64)>> {
        let loc = self
            .locate(vertices)
            .ok_or_else(|| Error::NotAClique(vertices.to_vec()))?;
        Ok(self
            .parallel_neighbors(loc.degree, loc.index)
            .into_iter()
            .map(|(b, s)| (self.simplices[loc.degree][b].clone(), s))
            .collect())
    }
}

fn extend(
    graph: &Graph,
    clique: &mut Vec<usize>,
    candidates: &[usize],
    max_size: Option<usize>,
    levels: &mut Vec<Vec<Vec<usize>>>,
    truncated: &mut bool,
) {
    if max_size == Some(clique.len()) {
        if !candidates.is_empty() {
            *truncated = true;
        }
        return;
    }
    for (a, &c) in candidates.iter().enumerate() {
        clique.push(c);
        let size = clique.len();
        if levels.len() < size {
            levels.push(Vec::new());
        }
        levels[size - 1].push(clique.clone());
        let next: Vec<usize> = candidates[a + 1..]
            .iter()
            .copied()
            .filter(|&w| graph.is_adjacent(c, w))
            .collect();
        extend(graph, clique, &next, max_size, levels, truncated);
        clique.pop();
    }
}
