use num_complex::Complex64;

use crate::error::Result;
use crate::gauge::{Connection, GaugeTransformation, Group};
use crate::graph::{CliqueComplex, SpanningForest};
use crate::linalg;

/// Gauge transformation making the connection trivial on the BFS spanning
/// forest: `g(root) = 1` and `g(child) = g(parent) A(parent, child)`.
/// Returns the transformed connection, with tree edges set to the identity
/// exactly, and the transformation used.
pub fn spanning_tree_gauge_fix(cx: &CliqueComplex, a: &Connection) -> Result<(Connection, GaugeTransformation)> {
    let forest = SpanningForest::bfs(cx.graph());
    let group = a.group();
    let mut g = vec![group.identity(); cx.num_vertices()];
    for &v in forest.order() {
        if let Some(p) = forest.parent(v) {
            g[v] = linalg::reorthonormalize(&(&g[p] * a.at(cx, p, v)), group.is_real());
        }
    }
    let g = GaugeTransformation::from_raw(group, g);
    let mut fixed = g.act_connection(cx, a)?;
    for &(u, v) in forest.tree_edges() {
        let (e, _) = cx.edge(u, v).expect("tree edge is an edge");
        fixed.set_raw(e, group.identity());
    }
    Ok((fixed, g))
}

/// `A(i, j) = (-1)^{d_ij - 1}` times the identity, with `d_ij` the forest
/// distance. Every triangle then has holonomy `-1`.
pub fn max_connection(cx: &CliqueComplex, forest: &SpanningForest, group: Group) -> Result<Connection> {
    let mut a = Connection::trivial(cx, group);
    for (e, s) in cx.simplices(1).iter().enumerate() {
        let d = forest.distance(s[0], s[1])?;
        if d % 2 == 0 {
            a.set_raw(e, group.identity() * Complex64::new(-1.0, 0.0));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::wilson_curvature;
    use crate::graph::Graph;
    use crate::yangmills::ym_value;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_edges_become_identity() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let group = Group::unitary(2);
        let a = Connection::random(&cx, group, &mut rng);
        let (fixed, g) = spanning_tree_gauge_fix(&cx, &a).unwrap();
        for v in 1..4 {
            assert_eq!(fixed.at(&cx, 0, v), group.identity());
        }
        assert!(g.act_connection(&cx, &a).unwrap().distance(&fixed) < 1e-12);
        assert!((ym_value(&cx, &a).unwrap() - ym_value(&cx, &fixed).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn forests_are_fully_trivialised() {
        let g = Graph::path(4).disjoint_union(&Graph::path(3));
        let cx = CliqueComplex::build(g, None);
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let a = Connection::random(&cx, Group::orthogonal(3), &mut rng);
        let (fixed, _) = spanning_tree_gauge_fix(&cx, &a).unwrap();
        assert_eq!(fixed, Connection::trivial(&cx, Group::orthogonal(3)));
    }

    #[test]
    fn max_connection_on_k4() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let forest = SpanningForest::bfs(cx.graph());
        let a = max_connection(&cx, &forest, Group::u1()).unwrap();
        assert_eq!(a.angles().iter().filter(|t| t.abs() > 1.0).count(), 3);
        let w = wilson_curvature(&cx, &a);
        for per in w.values() {
            for m in per {
                assert_eq!(m[(0, 0)], Complex64::new(-1.0, 0.0));
            }
        }
        assert!((ym_value(&cx, &a).unwrap() - 8.0).abs() < 1e-12);
    }
}
