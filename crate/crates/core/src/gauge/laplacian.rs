//! Connection Laplacian, its gauged Hodge part and the generalized
//! Weitzenböck decomposition `Δ_A = B + Ric + F`.

use num_complex::Complex64;

use super::connection::cscale;
use super::covariant::{curvature, d_a_star_vector, d_a_vector};
use super::{Connection, VectorForm};
use crate::calculus::{weitzenboeck_split, AlgebraMatrix};
use crate::error::{Error, Result};
use crate::graph::CliqueComplex;
use crate::linalg::{self, CMat, CVec};

/// `Δ_A f = d_A d_A* f + d_A* d_A f`.
pub fn connection_laplacian(cx: &CliqueComplex, a: &Connection, f: &VectorForm) -> Result<VectorForm> {
    cx.require_degree(f.degree() + 1)?;
    let mut out = d_a_star_vector(cx, a, &d_a_vector(cx, a, f))?;
    if f.degree() > 0 {
        out = out.add(&d_a_vector(cx, a, &d_a_star_vector(cx, a, f)?));
    }
    Ok(out)
}

/// `Δ_A f(i) = deg(i) f(i) - sum_l A(i, l) f(l)` on 0-forms.
pub fn connection_laplacian_vertex(cx: &CliqueComplex, a: &Connection, f: &VectorForm) -> Result<VectorForm> {
    if f.degree() != 0 {
        return Err(Error::Validation("the vertex formula applies to 0-forms".into()));
    }
    let g = cx.graph();
    let values = (0..cx.num_vertices())
        .map(|i| {
            let mut out = &f.values()[i] * Complex64::new(g.degree(i) as f64, 0.0);
            for &l in g.neighbors(i) {
                out -= a.at(cx, i, l) * &f.values()[l];
            }
            out
        })
        .collect();
    VectorForm::from_values(cx, 0, f.dim(), values)
}

/// Matrix of `Δ_A` on `k`-forms, simplex-major with fiber blocks.
pub fn connection_laplacian_matrix(cx: &CliqueComplex, a: &Connection, k: usize) -> Result<CMat> {
    let n = a.dim();
    let size = cx.count(k) * n;
    let mut m = CMat::zeros(size, size);
    for i in 0..cx.count(k) {
        for c in 0..n {
            let col = connection_laplacian(cx, a, &VectorForm::basis(cx, k, n, i, c))?.to_vector();
            m.set_column(i * n + c, &col);
        }
    }
    Ok(m)
}

fn zero_blocks(count: usize, n: usize) -> AlgebraMatrix<CMat> {
    AlgebraMatrix::from_fn(count, |_, _| linalg::zeros(n))
}

fn add_block(m: &mut AlgebraMatrix<CMat>, i: usize, j: usize, block: CMat) {
    let sum = m.get(i, j) + block;
    m.set(i, j, sum);
}

/// The gauged Hodge Laplacian `Δ^g` as a block matrix over `End(W)`.
///
/// For `α = (i_0..i_k)` sorted the diagonal block is `(deg α + k + 1) 1`.
/// Off-diagonal blocks come from parallel neighbours `β`, obtained from `α`
/// by swapping one vertex `i_j` for a vertex `l` adjacent to the rest of `α`
/// but not to `i_j`:
/// * `j = 0`: `A(i_0, i_1) A(i_1, l)` when `l < i_1`, else `A(i_0, i_1)`;
/// * `j >= 1`: `(-1)^j A(i_0, l)` when `l < i_0`, else `(-1)^j 1`;
///
/// each times the sign of `(l, α minus i_j)` against sorted `β`.
/// At `k = 0` this is `Δ_A` itself.
pub fn gauged_laplacian_matrix(cx: &CliqueComplex, a: &Connection, k: usize) -> Result<AlgebraMatrix<CMat>> {
    cx.require_degree(k)?;
    let g = cx.graph();
    let n = a.dim();
    let id = linalg::identity(n);
    let count = cx.count(k);
    let mut m = zero_blocks(count, n);
    for i in 0..count {
        let alpha = cx.simplex(k, i);
        if k == 0 {
            let v = alpha[0];
            m.set(i, i, cscale(&id, g.degree(v) as f64));
            for &l in g.neighbors(v) {
                m.set(i, l, -a.at(cx, v, l));
            }
            continue;
        }
        m.set(i, i, cscale(&id, (cx.degree(k, i) + k + 1) as f64));
        for j in 0..=k {
            let removed = alpha[j];
            let mut rest = alpha.to_vec();
            rest.remove(j);
            for l in cx.common_neighbors(&rest) {
                if l == removed || g.is_adjacent(l, removed) {
                    continue;
                }
                let mut tuple = vec![l];
                tuple.extend_from_slice(&rest);
                let loc = cx.locate(&tuple).expect("parallel neighbour is a clique");
                let coeff = if j == 0 {
                    let a01 = a.at(cx, alpha[0], alpha[1]);
                    if g.precedes(l, alpha[1]) {
                        a01 * a.at(cx, alpha[1], l)
                    } else {
                        a01
                    }
                } else {
                    let base = if g.precedes(l, alpha[0]) { a.at(cx, alpha[0], l) } else { id.clone() };
                    cscale(&base, if j % 2 == 0 { 1.0 } else { -1.0 })
                };
                add_block(&mut m, i, loc.index, cscale(&coeff, loc.sign));
            }
        }
    }
    Ok(m)
}

/// The curvature action `(Ff)(i_0..i_k) = sum_{l < i_1} F(i_0, i_1, l) f(l, i_1..i_k)`
/// as a block matrix. Zero on 0-forms.
pub fn curvature_term_matrix(cx: &CliqueComplex, a: &Connection, k: usize) -> Result<AlgebraMatrix<CMat>> {
    cx.require_degree(k)?;
    let n = a.dim();
    let count = cx.count(k);
    let mut m = zero_blocks(count, n);
    if k == 0 {
        return Ok(m);
    }
    let f = curvature(cx, a);
    let g = cx.graph();
    for i in 0..count {
        let alpha = cx.simplex(k, i);
        for l in cx.common_neighbors(alpha) {
            if !g.precedes(l, alpha[1]) {
                continue;
            }
            let mut tuple = vec![l];
            tuple.extend_from_slice(&alpha[1..]);
            let loc = cx.locate(&tuple).expect("coface face is a clique");
            let block = f.eval(cx, &[alpha[0], alpha[1], l]);
            add_block(&mut m, i, loc.index, cscale(&block, loc.sign));
        }
    }
    Ok(m)
}

/// Applies a block matrix to a vector form.
pub fn apply_blocks(cx: &CliqueComplex, m: &AlgebraMatrix<CMat>, f: &VectorForm) -> VectorForm {
    let values = (0..m.dim())
        .map(|i| {
            let mut out = CVec::zeros(f.dim());
            for j in 0..m.dim() {
                out += m.get(i, j) * &f.values()[j];
            }
            out
        })
        .collect();
    VectorForm::from_values(cx, f.degree(), f.dim(), values).expect("shapes agree")
}

/// `Δ_A = B + Ric + F` on `k`-forms with `B` and `Ric` from the Weitzenböck
/// split of `Δ^g` over `End(W)`.
#[derive(Debug, Clone)]
pub struct GeneralizedWeitzenboeck {
    pub bochner: AlgebraMatrix<CMat>,
    pub ric: Vec<CMat>,
    pub curvature: AlgebraMatrix<CMat>,
    /// `Δ_A` composed from `d_A` and `d_A*`.
    pub laplacian: CMat,
}

impl GeneralizedWeitzenboeck {
    /// `B + Ric + F` as one matrix.
    pub fn sum(&self) -> CMat {
        let mut total = self.bochner.to_block_matrix() + self.curvature.to_block_matrix();
        let n = self.ric.first().map_or(0, |r| r.nrows());
        for (i, r) in self.ric.iter().enumerate() {
            let mut view = total.view_mut((i * n, i * n), (n, n));
            view += r;
        }
        total
    }

    /// Largest entry of `Δ_A - (B + Ric + F)`.
    pub fn error(&self) -> f64 {
        linalg::max_abs_diff(&self.laplacian, &self.sum())
    }
}

pub fn generalized_weitzenboeck(cx: &CliqueComplex, a: &Connection, k: usize) -> Result<GeneralizedWeitzenboeck> {
    for (e, m) in a.values().iter().enumerate() {
        let norm = linalg::op_norm(m);
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Contract(format!("edge {e} has operator norm {norm}, expected 1")));
        }
    }
    let gauged = gauged_laplacian_matrix(cx, a, k)?;
    let split = weitzenboeck_split(&gauged)?;
    Ok(GeneralizedWeitzenboeck {
        bochner: split.bochner,
        ric: split.ric,
        curvature: curvature_term_matrix(cx, a, k)?,
        laplacian: connection_laplacian_matrix(cx, a, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{forman_ricci, hodge_laplacian_matrix};
    use crate::gauge::{GaugeTransformation, Group};
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vertex_formula_matches_composition() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = Connection::random(&cx, Group::unitary(2), &mut rng);
        let f = VectorForm::random(&cx, 0, 2, false, &mut rng);
        let lhs = connection_laplacian(&cx, &a, &f).unwrap();
        let rhs = connection_laplacian_vertex(&cx, &a, &f).unwrap();
        assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn gauged_laplacian_plus_curvature_is_connection_laplacian() {
        let g = Graph::natural(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4), (4, 5), (0, 5), (1, 4)])
            .unwrap();
        let cx = CliqueComplex::build(g, None);
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for group in [Group::u1(), Group::unitary(2), Group::orthogonal(3)] {
            let a = Connection::random(&cx, group, &mut rng);
            for k in 0..cx.num_degrees() {
                let w = generalized_weitzenboeck(&cx, &a, k).unwrap();
                assert!(w.error() < 1e-10, "{group} k={k}: {}", w.error());
                let gauged = gauged_laplacian_matrix(&cx, &a, k).unwrap();
                assert!(gauged.symmetry_defect() < 1e-12);
                for (i, r) in w.ric.iter().enumerate() {
                    let expected = linalg::identity(group.dim()) * Complex64::new(forman_ricci(&cx, k, i), 0.0);
                    assert!(linalg::max_abs_diff(r, &expected) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn trivial_connection_gives_hodge_laplacian() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let a = Connection::trivial(&cx, Group::u1());
        for k in 0..4 {
            let m = connection_laplacian_matrix(&cx, &a, k).unwrap();
            let h = hodge_laplacian_matrix(&cx, k).unwrap();
            assert!(m.iter().zip(h.iter()).all(|(x, y)| (x.re - y).abs() < 1e-12 && x.im == 0.0));
        }
    }

    #[test]
    fn spectrum_is_gauge_invariant() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let group = Group::unitary(2);
        let a = Connection::random(&cx, group, &mut rng);
        let g = GaugeTransformation::random(4, group, &mut rng);
        let ga = g.act_connection(&cx, &a).unwrap();
        for k in 0..3 {
            let e1 = linalg::hermitian_eigenvalues(&connection_laplacian_matrix(&cx, &a, k).unwrap());
            let e2 = linalg::hermitian_eigenvalues(&connection_laplacian_matrix(&cx, &ga, k).unwrap());
            for (x, y) in e1.iter().zip(&e2) {
                assert!((x - y).abs() < 1e-8);
            }
            assert!(e1[0] > -1e-10);
        }
    }
}
