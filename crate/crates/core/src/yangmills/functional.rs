use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauge::{curvature, d_a_star_end, Connection};
use crate::graph::CliqueComplex;
use crate::linalg::{self, CMat};

/// Agreement required between the two evaluations of the functional,
/// relative to `max(1, value)`.
pub const VALUE_AGREEMENT_TOL: f64 = 1e-10;

/// Triangle incidence of a complex, precomputed for repeated evaluation.
#[derive(Debug, Clone)]
pub struct TriangleIndex {
    /// Canonical edge indices `(e01, e12, e02)` of each sorted triangle.
    triangles: Vec<[usize; 3]>,
    /// For each canonical edge `u -> v` and each third vertex `l`:
    /// `(e_ul, u -> l is canonical, e_lv, l -> v is canonical)`.
    around: Vec<Vec<(usize, bool, usize, bool)>>,
}

impl TriangleIndex {
    pub fn new(cx: &CliqueComplex) -> Result<Self> {
        cx.require_degree(2)?;
        let triangles = cx
            .simplices(2)
            .iter()
            .map(|s| {
                let e = |a: usize, b: usize| cx.edge(a, b).expect("triangle edge").0;
                [e(s[0], s[1]), e(s[1], s[2]), e(s[0], s[2])]
            })
            .collect();
        let around = cx
            .simplices(1)
            .iter()
            .map(|e| {
                let (u, v) = (e[0], e[1]);
                cx.common_neighbors(e)
                    .into_iter()
                    .map(|l| {
                        let (ul, ful) = cx.edge(u, l).expect("triangle edge");
                        let (lv, flv) = cx.edge(l, v).expect("triangle edge");
                        (ul, ful, lv, flv)
                    })
                    .collect()
            })
            .collect();
        Ok(TriangleIndex { triangles, around })
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_edges(&self) -> usize {
        self.around.len()
    }

    /// Holonomy `A(s0,s1) A(s1,s2) A(s2,s0)` of each sorted triangle.
    pub fn holonomies(&self, a: &Connection) -> Vec<CMat> {
        let v = a.values();
        self.triangles
            .iter()
            .map(|&[e01, e12, e02]| &v[e01] * &v[e12] * v[e02].adjoint())
            .collect()
    }

    /// Wilson form `1/2 sum Tr(2 - F̃ - F̃†)` over sorted triangles, evaluated
    /// as `1/2 sum |F̃ - 1|²` to avoid cancellation near flat connections.
    pub fn wilson_action(&self, a: &Connection) -> f64 {
        self.shifted_holonomy_norms(a, -1.0)
    }

    /// `1/2 sum |F̃ + 1|² = 2 n ω₃ - wilson_action`, accurate near the maximum.
    pub fn wilson_deficit(&self, a: &Connection) -> f64 {
        self.shifted_holonomy_norms(a, 1.0)
    }

    fn shifted_holonomy_norms(&self, a: &Connection, shift: f64) -> f64 {
        let id = a.group().identity() * Complex64::new(shift, 0.0);
        0.5 * self
            .holonomies(a)
            .iter()
            .map(|h| (h + &id).norm_squared())
            .sum::<f64>()
    }

    /// `F̃(u, l, v)` for each third vertex `l` of canonical edge `e = (u, v)`.
    fn loops<'a>(&'a self, a: &'a Connection, e: usize) -> impl Iterator<Item = CMat> + 'a {
        let v = a.values();
        let back = v[e].adjoint();
        self.around[e].iter().map(move |&(ul, ful, lv, flv)| {
            let a_ul = if ful { v[ul].clone() } else { v[ul].adjoint() };
            let a_lv = if flv { v[lv].clone() } else { v[lv].adjoint() };
            a_ul * a_lv * &back
        })
    }

    /// `sum_l F̃(u, l, v) - sum_l F̃(u, v, l)` on each canonical edge `u -> v`.
    pub fn residuals(&self, a: &Connection) -> Vec<CMat> {
        (0..self.around.len())
            .map(|e| {
                let mut r = linalg::zeros(a.dim());
                for x in self.loops(a, e) {
                    r += &x - x.adjoint();
                }
                r
            })
            .collect()
    }

    /// Riemannian gradient for right perturbations `A(u,v) exp(t X)`:
    /// `skew(sum_l F̃(v, l, u)) = -1/2 A(v,u) R(u,v) A(u,v)`.
    pub fn gradient(&self, a: &Connection) -> Vec<CMat> {
        let group = a.group();
        let v = a.values();
        self.residuals(a)
            .iter()
            .enumerate()
            .map(|(e, r)| {
                let g = v[e].adjoint() * r * &v[e] * Complex64::new(-0.5, 0.0);
                group.project_tangent(&g)
            })
            .collect()
    }

    /// Residual norms `|2 sum_l sin Φ_l|` for a U(1) connection given by
    /// edge angles, without forming matrices.
    pub fn u1_residual_norms(&self, angles: &[f64]) -> Vec<f64> {
        self.around
            .iter()
            .enumerate()
            .map(|(e, tri)| {
                let s: f64 = tri
                    .iter()
                    .map(|&(ul, ful, lv, flv)| {
                        let t_ul = if ful { angles[ul] } else { -angles[ul] };
                        let t_lv = if flv { angles[lv] } else { -angles[lv] };
                        (t_ul + t_lv - angles[e]).sin()
                    })
                    .sum();
                2.0 * s.abs()
            })
            .collect()
    }
}

/// `1/2 <F, F>` with the tuple-averaged inner product.
pub fn ym_value_curvature(cx: &CliqueComplex, a: &Connection) -> f64 {
    let f = curvature(cx, a);
    0.5 * f.inner(&f).re
}

/// `1/2 sum_{i<j<k} Tr(2 - F̃ - F̃†)`.
pub fn ym_value_wilson(cx: &CliqueComplex, a: &Connection) -> Result<f64> {
    Ok(TriangleIndex::new(cx)?.wilson_action(a))
}

/// The Yang-Mills functional. Both evaluations are computed; a disagreement
/// beyond [`VALUE_AGREEMENT_TOL`] is a contract violation.
pub fn ym_value(cx: &CliqueComplex, a: &Connection) -> Result<f64> {
    let value = ym_value_curvature(cx, a);
    let wilson = ym_value_wilson(cx, a)?;
    if (value - wilson).abs() > VALUE_AGREEMENT_TOL * value.abs().max(1.0) {
        return Err(Error::Contract(format!(
            "curvature form gives {value}, Wilson form gives {wilson}"
        )));
    }
    Ok(value)
}

/// Upper bound `2 n ω₃`.
pub fn ym_upper_bound(cx: &CliqueComplex, a: &Connection) -> f64 {
    2.0 * a.dim() as f64 * cx.count(2) as f64
}

/// Residuals of the Yang-Mills equations on canonical edges.
#[derive(Debug, Clone)]
pub struct YmResidual {
    /// `sum_l F̃(u,l,v) - sum_l F̃(u,v,l)` per canonical edge.
    pub matrices: Vec<CMat>,
    /// Operator norms of `matrices`.
    pub norms: Vec<f64>,
    /// Operator norms of `d_A*F(u,v) - A(u,v) d_A*F(v,u) A(u,v)`.
    pub raw_norms: Vec<f64>,
}

impl YmResidual {
    pub fn inf_norm(&self) -> f64 {
        self.norms.iter().copied().fold(0.0, f64::max)
    }
}

/// Computes the residual in holonomy form and in the raw form built from
/// `d_A* F`. The two differ by a unitary factor, so their norms must match.
pub fn ym_residual(cx: &CliqueComplex, a: &Connection) -> Result<YmResidual> {
    let index = TriangleIndex::new(cx)?;
    let matrices = index.residuals(a);
    let norms: Vec<f64> = matrices.iter().map(linalg::op_norm).collect();
    let dsf = d_a_star_end(cx, a, &curvature(cx, a))?;
    let mut raw_norms = Vec::with_capacity(norms.len());
    for (e, s) in cx.simplices(1).iter().enumerate() {
        let (u, v) = (s[0], s[1]);
        let m = &a.values()[e];
        let raw = dsf.eval(cx, &[u, v]) - m * dsf.eval(cx, &[v, u]) * m;
        let rn = linalg::op_norm(&raw);
        if (rn - norms[e]).abs() > 1e-9 * norms[e].max(1.0) {
            return Err(Error::Contract(format!(
                "edge ({u}, {v}): holonomy residual {} but raw residual {rn}",
                norms[e]
            )));
        }
        raw_norms.push(rn);
    }
    Ok(YmResidual {
        matrices,
        norms,
        raw_norms,
    })
}

/// Riemannian gradient of the functional for right perturbations.
pub fn ym_gradient(cx: &CliqueComplex, a: &Connection) -> Result<Vec<CMat>> {
    Ok(TriangleIndex::new(cx)?.gradient(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::Group;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn minus_one_on_triangle_reaches_the_bound() {
        let cx = CliqueComplex::build(Graph::complete(3), None);
        let a = Connection::from_angles(&cx, &[PI; 3]).unwrap();
        let v = ym_value(&cx, &a).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        assert_eq!(ym_upper_bound(&cx, &a), 2.0);
        let flat = Connection::trivial(&cx, Group::u1());
        assert_eq!(ym_value(&cx, &flat).unwrap(), 0.0);
    }

    #[test]
    fn two_evaluations_agree_for_matrix_groups() {
        let cx = CliqueComplex::build(Graph::complete(5), None);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for group in [Group::unitary(3), Group::orthogonal(2)] {
            let a = Connection::random(&cx, group, &mut rng);
            let c = ym_value_curvature(&cx, &a);
            let w = ym_value_wilson(&cx, &a).unwrap();
            assert!((c - w).abs() < 1e-10);
            assert!(ym_residual(&cx, &a).is_ok());
        }
    }

    #[test]
    fn u1_fast_residual_matches_matrix_residual() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let index = TriangleIndex::new(&cx).unwrap();
        let angles = [0.3, -1.2, 2.0, 0.7, 1.1, -0.4];
        let a = Connection::from_angles(&cx, &angles).unwrap();
        let fast = index.u1_residual_norms(&angles);
        let slow = ym_residual(&cx, &a).unwrap();
        for (x, y) in fast.iter().zip(&slow.norms) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let group = Group::unitary(2);
        let a = Connection::random(&cx, group, &mut rng);
        let grad = ym_gradient(&cx, &a).unwrap();
        let xi: Vec<CMat> = (0..cx.count(1)).map(|_| group.random_tangent(&mut rng)).collect();
        let moved = |t: f64| {
            let vals = a
                .values()
                .iter()
                .zip(&xi)
                .map(|(m, x)| m * linalg::exp_skew(&(x * Complex64::new(t, 0.0))))
                .collect();
            Connection::from_values(&cx, group, vals).unwrap()
        };
        let eps = 1e-6;
        let fd = (ym_value_wilson(&cx, &moved(eps)).unwrap() - ym_value_wilson(&cx, &moved(-eps)).unwrap()) / (2.0 * eps);
        let analytic: f64 = grad.iter().zip(&xi).map(|(g, x)| linalg::real_inner(g, x)).sum();
        assert!((fd - analytic).abs() < 1e-5 * analytic.abs().max(1e-3));
    }
}
