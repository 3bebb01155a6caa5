//! Brute-force U(1) solution scans and the known solution families of the
//! triangle and the complete graph on four vertices.

use std::f64::consts::{PI, TAU};

use super::functional::TriangleIndex;
use crate::error::{Error, Result};
use crate::gauge::Connection;
use crate::graph::{CliqueComplex, Graph, SpanningForest};

/// Largest number of non-tree edges the grid scan accepts.
pub const MAX_FREE_EDGES: usize = 4;

/// Family membership tolerance, in grid steps.
pub const GRID_MEMBERSHIP_STEPS: f64 = 2.0;

/// Edges outside the BFS spanning forest, as canonical edge indices.
pub fn free_edges(cx: &CliqueComplex) -> Vec<usize> {
    let forest = SpanningForest::bfs(cx.graph());
    cx.simplices(1)
        .iter()
        .enumerate()
        .filter(|(_, s)| !forest.is_tree_edge(s[0], s[1]))
        .map(|(e, _)| e)
        .collect()
}

/// Connection that is the identity on the spanning forest and `e^{i θ}` on
/// the free edges.
pub fn tree_gauge_connection(cx: &CliqueComplex, free: &[usize], angles: &[f64]) -> Result<Connection> {
    let mut all = vec![0.0; cx.count(1)];
    for (&e, &t) in free.iter().zip(angles) {
        all[e] = t;
    }
    Connection::from_angles(cx, &all)
}

#[derive(Debug, Clone)]
pub struct GridPoint {
    /// Grid index per free edge; the angle is `2π index / resolution`.
    pub indices: Vec<usize>,
    pub angles: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct GridOracleReport {
    pub resolution: usize,
    pub tolerance: f64,
    /// Free edges as vertex pairs in their canonical direction.
    pub free_edges: Vec<(usize, usize)>,
    pub scanned: usize,
    pub passes: Vec<GridPoint>,
}

impl GridOracleReport {
    pub fn step(&self) -> f64 {
        TAU / self.resolution as f64
    }

    pub fn contains_indices(&self, indices: &[usize]) -> bool {
        self.passes.iter().any(|p| p.indices == indices)
    }
}

/// Scans every grid assignment of angles to the free edges, tree edges fixed
/// to the identity, and keeps the points whose residual infinity norm is
/// below `tolerance` (default `10 / resolution`).
pub fn u1_grid_oracle(cx: &CliqueComplex, resolution: usize, tolerance: Option<f64>) -> Result<GridOracleReport> {
    if resolution == 0 {
        return Err(Error::Validation("grid resolution must be positive".into()));
    }
    let free = free_edges(cx);
    if free.len() > MAX_FREE_EDGES {
        return Err(Error::TooManyFreeEdges {
            count: free.len(),
            max: MAX_FREE_EDGES,
        });
    }
    let tolerance = tolerance.unwrap_or(10.0 / resolution as f64);
    let index = TriangleIndex::new(cx)?;
    let m = free.len();
    let total = resolution.pow(m as u32);
    let step = TAU / resolution as f64;
    let mut all = vec![0.0; cx.count(1)];
    let mut indices = vec![0usize; m];
    let mut passes = Vec::new();
    for flat in 0..total {
        let mut rest = flat;
        for slot in (0..m).rev() {
            indices[slot] = rest % resolution;
            rest /= resolution;
        }
        for (slot, &e) in free.iter().enumerate() {
            all[e] = indices[slot] as f64 * step;
        }
        let residual = index.u1_residual_norms(&all).into_iter().fold(0.0, f64::max);
        if residual < tolerance {
            passes.push(GridPoint {
                indices: indices.clone(),
                angles: free.iter().map(|&e| all[e]).collect(),
                residual,
            });
        }
    }
    Ok(GridOracleReport {
        resolution,
        tolerance,
        free_edges: free.iter().map(|&e| (cx.simplex(1, e)[0], cx.simplex(1, e)[1])).collect(),
        scanned: total,
        passes,
    })
}

/// Distance between two angles on the circle.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// A set of U(1) solutions in tree gauge, listed as angles on the free edges.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    pub name: String,
    /// Isolated points for 0-parameter families.
    pub points: Vec<Vec<f64>>,
    /// Curve `θ_m = slope_m α + offset_m` for 1-parameter families.
    pub curve: Option<(Vec<f64>, Vec<f64>)>,
}

impl SolutionFamily {
    fn points(name: &str, points: Vec<Vec<f64>>) -> Self {
        SolutionFamily {
            name: name.into(),
            points,
            curve: None,
        }
    }

    fn curve(name: &str, slopes: Vec<f64>, offsets: Vec<f64>) -> Self {
        SolutionFamily {
            name: name.into(),
            points: Vec::new(),
            curve: Some((slopes, offsets)),
        }
    }

    pub fn parameter_count(&self) -> usize {
        usize::from(self.curve.is_some())
    }

    /// Member at parameter `alpha`; 0-parameter families ignore it and
    /// return their first point.
    pub fn member(&self, alpha: f64) -> Vec<f64> {
        match &self.curve {
            Some((s, o)) => s.iter().zip(o).map(|(s, o)| s * alpha + o).collect(),
            None => self.points[0].clone(),
        }
    }

    /// `count` members at evenly spaced parameters, or every isolated point.
    pub fn sample(&self, count: usize) -> Vec<Vec<f64>> {
        match self.curve {
            Some(_) => (0..count).map(|i| self.member(TAU * i as f64 / count as f64)).collect(),
            None => self.points.clone(),
        }
    }

    /// Largest per-edge circle distance from `angles` to the nearest member.
    pub fn distance(&self, angles: &[f64]) -> f64 {
        let max_dist = |member: &[f64]| {
            member
                .iter()
                .zip(angles)
                .map(|(a, b)| circle_distance(*a, *b))
                .fold(0.0, f64::max)
        };
        match &self.curve {
            None => self.points.iter().map(|p| max_dist(p)).fold(f64::INFINITY, f64::min),
            Some((slopes, offsets)) => {
                // The optimum parameter matches one coordinate exactly or sits
                // halfway between two of them.
                let targets: Vec<f64> = slopes
                    .iter()
                    .zip(offsets)
                    .zip(angles)
                    .map(|((s, o), t)| (t - o) * s)
                    .collect();
                let mut candidates = targets.clone();
                for (i, a) in targets.iter().enumerate() {
                    for b in &targets[i + 1..] {
                        let mid = 0.5 * (a + b);
                        candidates.push(mid);
                        candidates.push(mid + PI);
                    }
                }
                candidates
                    .iter()
                    .map(|&alpha| max_dist(&self.member(alpha)))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// The U(1) solutions of the triangle (`"K3"`) or of the complete graph on
/// four vertices (`"K4"`), in the star tree gauge at vertex 0. Free edges are
/// `(1,2)` for the triangle and `(1,2), (1,3), (2,3)` for K4.
pub fn known_families(name: &str) -> Result<Vec<SolutionFamily>> {
    match name.to_ascii_uppercase().as_str() {
        "K3" => Ok(vec![
            SolutionFamily::points("plus-one", vec![vec![0.0]]),
            SolutionFamily::points("minus-one", vec![vec![PI]]),
        ]),
        "K4" => Ok(vec![
            SolutionFamily::points("trivial", vec![vec![0.0; 3], vec![PI; 3]]),
            SolutionFamily::curve("inverse-pair", vec![1.0, -1.0, -1.0], vec![0.0, 0.0, PI]),
            SolutionFamily::curve("alternating", vec![1.0, 1.0, 1.0], vec![0.0, PI, 0.0]),
            SolutionFamily::curve("mixed", vec![1.0, 1.0, -1.0], vec![0.0, PI, PI]),
        ]),
        other => Err(Error::UnknownFamily(other.into())),
    }
}

/// Named small graph with natural orientation.
pub fn named_graph(name: &str) -> Result<Graph> {
    match name.to_ascii_uppercase().as_str() {
        "K3" => Ok(Graph::complete(3)),
        "K4" => Ok(Graph::complete(4)),
        other => Err(Error::UnknownFamily(other.into())),
    }
}

/// `γ₁`, then a path of `path_len` edges from the last vertex of `γ₁` to the
/// first vertex of `γ₂`, then `γ₂`; all shifted so ids stay increasing.
pub fn path_join(g1: &Graph, g2: &Graph, path_len: usize) -> Result<Graph> {
    if path_len == 0 {
        return Err(Error::Validation("the joining path needs at least one edge".into()));
    }
    let n1 = g1.num_vertices();
    let inner = path_len - 1;
    let off2 = n1 + inner;
    let mut pairs: Vec<(usize, usize)> = g1.edges().to_vec();
    let mut prev = n1 - 1;
    for k in 0..path_len {
        let next = if k + 1 == path_len { off2 } else { n1 + k };
        pairs.push((prev, next));
        prev = next;
    }
    pairs.extend(g2.edges().iter().map(|&(u, v)| (u + off2, v + off2)));
    Graph::natural(off2 + g2.num_vertices(), &pairs)
}

#[derive(Debug, Clone)]
pub struct PathJoinReport {
    pub first: String,
    pub second: String,
    pub path_len: usize,
    pub combinations: usize,
    pub max_residual: f64,
    pub all_pass: bool,
}

/// Solutions of a named piece, with curve families sampled at four parameters.
fn piece_solutions(name: &str) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    for fam in known_families(name)? {
        match fam.curve {
            Some(_) => out.extend([0.3, 1.9, 3.5, 5.1].iter().map(|&a| fam.member(a))),
            None => out.extend(fam.points.iter().cloned()),
        }
    }
    Ok(out)
}

/// Joins two named pieces by a path and checks that every pair of piece
/// solutions, with the path in tree gauge, solves the joined graph.
pub fn path_join_product_check(first: &str, second: &str, path_len: usize, tol: f64) -> Result<PathJoinReport> {
    let g1 = named_graph(first)?;
    let g2 = named_graph(second)?;
    let joined = path_join(&g1, &g2, path_len)?;
    let off2 = g1.num_vertices() + path_len - 1;
    let cx = CliqueComplex::build(joined, None);
    let index = TriangleIndex::new(&cx)?;

    let free_of = |g: &Graph, offset: usize| -> Result<Vec<usize>> {
        let piece = CliqueComplex::build(g.clone(), None);
        free_edges(&piece)
            .into_iter()
            .map(|e| {
                let s = piece.simplex(1, e);
                cx.edge(s[0] + offset, s[1] + offset)
                    .map(|(idx, _)| idx)
                    .ok_or_else(|| Error::Contract("joined graph lost a piece edge".into()))
            })
            .collect()
    };
    let free1 = free_of(&g1, 0)?;
    let free2 = free_of(&g2, off2)?;
    let mut free = free1.clone();
    free.extend(&free2);
    if free_edges(&cx) != {
        let mut f = free.clone();
        f.sort_unstable();
        f
    } {
        return Err(Error::Contract("joined spanning tree does not restrict to the piece trees".into()));
    }

    let sols1 = piece_solutions(first)?;
    let sols2 = piece_solutions(second)?;
    let mut max_residual: f64 = 0.0;
    let mut combinations = 0;
    for s1 in &sols1 {
        for s2 in &sols2 {
            let mut angles = s1.clone();
            angles.extend(s2);
            let a = tree_gauge_connection(&cx, &free, &angles)?;
            let r = index.residuals(&a).iter().map(crate::linalg::op_norm).fold(0.0, f64::max);
            max_residual = max_residual.max(r);
            combinations += 1;
        }
    }
    Ok(PathJoinReport {
        first: first.to_ascii_uppercase(),
        second: second.to_ascii_uppercase(),
        path_len,
        combinations,
        max_residual,
        all_pass: max_residual < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_solve_the_equations() {
        for name in ["K3", "K4"] {
            let cx = CliqueComplex::build(named_graph(name).unwrap(), None);
            let index = TriangleIndex::new(&cx).unwrap();
            let free = free_edges(&cx);
            for fam in known_families(name).unwrap() {
                for angles in fam.sample(16) {
                    let a = tree_gauge_connection(&cx, &free, &angles).unwrap();
                    let r = index.residuals(&a).iter().map(crate::linalg::op_norm).fold(0.0, f64::max);
                    assert!(r < 1e-10, "{} {angles:?}: {r}", fam.name);
                    assert!(fam.distance(&angles) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn free_edges_of_k4_are_the_outer_triangle() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let pairs: Vec<_> = free_edges(&cx).iter().map(|&e| cx.simplex(1, e).to_vec()).collect();
        assert_eq!(pairs, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn grid_refuses_large_graphs() {
        let cx = CliqueComplex::build(Graph::complete(5), None);
        assert!(matches!(
            u1_grid_oracle(&cx, 4, None),
            Err(Error::TooManyFreeEdges { count: 6, max: 4 })
        ));
    }

    #[test]
    fn triangle_grid() {
        let cx = CliqueComplex::build(Graph::complete(3), None);
        let rep = u1_grid_oracle(&cx, 360, Some(1e-3)).unwrap();
        let idx: Vec<usize> = rep.passes.iter().map(|p| p.indices[0]).collect();
        assert_eq!(idx, vec![0, 180]);
    }

    #[test]
    fn path_join_layout_and_products() {
        let g = path_join(&Graph::complete(3), &Graph::complete(3), 2).unwrap();
        assert_eq!(g.num_vertices(), 7);
        assert!(g.is_adjacent(2, 3) && g.is_adjacent(3, 4));
        let rep = path_join_product_check("K3", "K3", 2, 1e-8).unwrap();
        assert_eq!(rep.combinations, 4);
        assert!(rep.all_pass);
        let rep = path_join_product_check("K3", "K4", 1, 1e-8).unwrap();
        assert!(rep.all_pass, "{}", rep.max_residual);
    }

    #[test]
    fn unknown_family_name() {
        assert!(matches!(known_families("K5"), Err(Error::UnknownFamily(_))));
    }
}
