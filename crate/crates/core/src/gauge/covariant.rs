//! Covariant exterior calculus for a connection: `∇_A`, `d_A`, `d_A*`,
//! curvature and holonomy.
//!
//! Vector forms are evaluated on sorted tuples and extended by sign. End
//! forms are evaluated on every ordered tuple with that tuple's own order.

use num_complex::Complex64;

use super::connection::{cscale, shifted};
use super::{Connection, EndForm, VectorForm};
use crate::error::{Error, Result};
use crate::graph::CliqueComplex;
use crate::linalg::{self, CMat, CVec};

fn sign(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(∇_A s)(i, j) = A(i, j) s(j) - s(i)` for `i < j`.
pub fn covariant_derivative_section(cx: &CliqueComplex, a: &Connection, s: &VectorForm) -> Result<VectorForm> {
    if s.degree() != 0 {
        return Err(Error::Validation("∇_A acts on 0-forms".into()));
    }
    let values = cx
        .simplices(1)
        .iter()
        .zip(a.values())
        .map(|(e, m)| m * &s.values()[e[1]] - &s.values()[e[0]])
        .collect();
    VectorForm::from_values(cx, 1, s.dim(), values)
}

/// `(∇_A φ)(i, j) = A(i, j) φ(j) - φ(i) A(i, j)` on both orderings.
pub fn covariant_derivative_end(cx: &CliqueComplex, a: &Connection, phi: &EndForm) -> Result<EndForm> {
    if phi.degree() != 0 {
        return Err(Error::Validation("∇_A acts on 0-forms".into()));
    }
    Ok(EndForm::from_fn(cx, 1, phi.dim(), |t| {
        let m = a.at(cx, t[0], t[1]);
        &m * &phi.values()[t[1]][0] - &phi.values()[t[0]][0] * &m
    }))
}

/// `(d_A f)(i_0..i_{k+1}) = A(i_0, i_1) f(i_1..) + sum_{j>=1} (-1)^j f(.., i_j omitted, ..)`.
pub fn d_a_vector(cx: &CliqueComplex, a: &Connection, f: &VectorForm) -> VectorForm {
    let k = f.degree();
    let values = cx
        .simplices(k + 1)
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let faces = cx.faces(k + 1, i);
            let mut out = a.at(cx, s[0], s[1]) * &f.values()[faces[0]];
            for (j, &face) in faces.iter().enumerate().skip(1) {
                out += &f.values()[face] * Complex64::new(sign(j), 0.0);
            }
            out
        })
        .collect();
    VectorForm::from_values(cx, k + 1, f.dim(), values).expect("shapes agree")
}

/// `(d_A* f)(i_0..i_{k-1}) = sum_{l<i_0} A(i_0, l) f(l, i_0..) + sum_{l>i_0} f(l, i_0..)`.
pub fn d_a_star_vector(cx: &CliqueComplex, a: &Connection, f: &VectorForm) -> Result<VectorForm> {
    let k = f.degree();
    if k == 0 {
        return Err(Error::Validation("d_A* is defined on forms of degree at least 1".into()));
    }
    let values = cx
        .simplices(k - 1)
        .iter()
        .enumerate()
        .map(|(i, tau)| {
            let mut out = CVec::zeros(f.dim());
            for &(b, pos) in cx.cofaces(k - 1, i) {
                let val = &f.values()[b] * Complex64::new(sign(pos), 0.0);
                if pos == 0 {
                    let l = cx.simplex(k, b)[0];
                    out += a.at(cx, tau[0], l) * val;
                } else {
                    out += val;
                }
            }
            out
        })
        .collect();
    VectorForm::from_values(cx, k - 1, f.dim(), values)
}

/// Plain alternating sum `(dφ)(t) = sum_j (-1)^j φ(t with t_j omitted)`.
pub fn d_end(cx: &CliqueComplex, phi: &EndForm) -> EndForm {
    let k = phi.degree();
    EndForm::from_fn(cx, k + 1, phi.dim(), |t| {
        let mut out = linalg::zeros(phi.dim());
        for j in 0..=k + 1 {
            out += cscale(&phi.eval(cx, &omit(t, j)), sign(j));
        }
        out
    })
}

/// `(d_A φ)(t) = A(t_0, t_1) φ(t_1..) + sum_{j=1..k} (-1)^j φ(t_j omitted)
/// + (-1)^{k+1} φ(t_0..t_k) A(t_k, t_{k+1})`.
pub fn d_a_end(cx: &CliqueComplex, a: &Connection, phi: &EndForm) -> EndForm {
    let k = phi.degree();
    EndForm::from_fn(cx, k + 1, phi.dim(), |t| {
        let mut out = a.at(cx, t[0], t[1]) * phi.eval(cx, &t[1..]);
        for j in 1..=k {
            out += cscale(&phi.eval(cx, &omit(t, j)), sign(j));
        }
        out += cscale(&(phi.eval(cx, &t[..=k]) * a.at(cx, t[k], t[k + 1])), sign(k + 1));
        out
    })
}

/// Adjoint of [`d_a_end`] for the tuple-averaged inner product:
/// `1/(k+1) sum_l [A(i_0, l) φ(l, τ) + sum_{j=1}^{k-1} (-1)^j φ(τ with l at j)
/// + (-1)^k φ(τ, l) A(l, i_{k-1})]`.
pub fn d_a_star_end(cx: &CliqueComplex, a: &Connection, phi: &EndForm) -> Result<EndForm> {
    let k = phi.degree();
    if k == 0 {
        return Err(Error::Validation("d_A* is defined on forms of degree at least 1".into()));
    }
    let norm = 1.0 / (k + 1) as f64;
    Ok(EndForm::from_fn(cx, k - 1, phi.dim(), |tau| {
        let mut out = linalg::zeros(phi.dim());
        let last = tau[k - 1];
        for l in cx.common_neighbors(tau) {
            let mut term = a.at(cx, tau[0], l) * phi.eval(cx, &insert(tau, 0, l));
            for j in 1..k {
                term += cscale(&phi.eval(cx, &insert(tau, j, l)), sign(j));
            }
            term += cscale(&(phi.eval(cx, &insert(tau, k, l)) * a.at(cx, l, last)), sign(k));
            out += term;
        }
        cscale(&out, norm)
    }))
}

/// `Ā = A - 1` as an End-valued 1-form.
pub fn shifted_connection(cx: &CliqueComplex, a: &Connection) -> EndForm {
    EndForm::from_fn(cx, 1, a.dim(), |t| shifted(&a.at(cx, t[0], t[1])))
}

/// `F(i, j, k) = A(i, j) A(j, k) - A(i, k)` on every ordered triple.
pub fn curvature(cx: &CliqueComplex, a: &Connection) -> EndForm {
    EndForm::from_fn(cx, 2, a.dim(), |t| {
        a.at(cx, t[0], t[1]) * a.at(cx, t[1], t[2]) - a.at(cx, t[0], t[2])
    })
}

/// `F̃(i, j, k) = A(i, j) A(j, k) A(k, i)`, the holonomy around each triangle.
pub fn wilson_curvature(cx: &CliqueComplex, a: &Connection) -> EndForm {
    EndForm::from_fn(cx, 2, a.dim(), |t| {
        a.at(cx, t[0], t[1]) * a.at(cx, t[1], t[2]) * a.at(cx, t[2], t[0])
    })
}

/// Ordered product of the connection along a vertex path.
pub fn holonomy(cx: &CliqueComplex, a: &Connection, path: &[usize]) -> Result<CMat> {
    let mut out = a.group().identity();
    for w in path.windows(2) {
        out *= a.try_at(cx, w[0], w[1])?;
    }
    Ok(out)
}

/// True when every triangle holonomy is the identity within `tol`.
pub fn is_flat(cx: &CliqueComplex, a: &Connection, tol: f64) -> bool {
    let id = a.group().identity();
    cx.simplices(2).iter().all(|s| {
        let h = a.at(cx, s[0], s[1]) * a.at(cx, s[1], s[2]) * a.at(cx, s[2], s[0]);
        linalg::max_abs_diff(&h, &id) <= tol
    })
}

fn omit(t: &[usize], j: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out.remove(j);
    out
}

fn insert(t: &[usize], j: usize, l: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out.insert(j, l);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::Group;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k4() -> CliqueComplex {
        CliqueComplex::build(Graph::complete(4), None)
    }

    #[test]
    fn section_derivative_of_u1_edge() {
        let cx = CliqueComplex::build(Graph::path(2), None);
        let a = Connection::from_angles(&cx, &[0.4]).unwrap();
        let s = VectorForm::from_values(&cx, 0, 1, vec![CVec::from_element(1, linalg::ONE); 2]).unwrap();
        let ds = covariant_derivative_section(&cx, &a, &s).unwrap();
        assert!((ds.values()[0][0] - (linalg::phase(0.4) - 1.0)).norm() < 1e-15);
        assert_eq!(ds, d_a_vector(&cx, &a, &s));
    }

    #[test]
    fn d_a_squared_is_curvature() {
        let cx = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = Connection::random(&cx, Group::unitary(2), &mut rng);
        let f = curvature(&cx, &a);
        for k in 0..2 {
            let v = VectorForm::random(&cx, k, 2, false, &mut rng);
            let lhs = d_a_vector(&cx, &a, &d_a_vector(&cx, &a, &v));
            assert!(lhs.distance(&f.act(&cx, &v)) < 1e-10);
        }
    }

    #[test]
    fn bianchi_and_structure_equation() {
        let cx = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let a = Connection::random(&cx, Group::unitary(2), &mut rng);
        let f = curvature(&cx, &a);
        assert!(d_a_end(&cx, &a, &f).max_abs() < 1e-10);
        let abar = shifted_connection(&cx, &a);
        let rhs = d_end(&cx, &abar).add(&abar.product(&cx, &abar));
        assert!(f.distance(&rhs) < 1e-12);
    }

    #[test]
    fn adjoints() {
        let cx = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = Connection::random(&cx, Group::unitary(2), &mut rng);
        for k in 0..3 {
            let f = VectorForm::random(&cx, k, 2, false, &mut rng);
            let h = VectorForm::random(&cx, k + 1, 2, false, &mut rng);
            let lhs = d_a_vector(&cx, &a, &f).inner(&h);
            let rhs = f.inner(&d_a_star_vector(&cx, &a, &h).unwrap());
            assert!((lhs - rhs).norm() < 1e-10, "vector k={k}");
            let p = EndForm::random(&cx, k, 2, false, &mut rng);
            let q = EndForm::random(&cx, k + 1, 2, false, &mut rng);
            let lhs = d_a_end(&cx, &a, &p).inner(&q);
            let rhs = p.inner(&d_a_star_end(&cx, &a, &q).unwrap());
            assert!((lhs - rhs).norm() < 1e-10, "end k={k}");
        }
    }

    #[test]
    fn d_a_star_of_curvature() {
        let cx = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let a = Connection::random(&cx, Group::unitary(2), &mut rng);
        let f = curvature(&cx, &a);
        let dsf = d_a_star_end(&cx, &a, &f).unwrap();
        for (u, v) in [(0, 1), (2, 1), (3, 0)] {
            let mut expected = linalg::zeros(2);
            for l in cx.common_neighbors(&[u, v]) {
                expected -= f.eval(&cx, &[u, l, v]);
            }
            assert!(linalg::max_abs_diff(&dsf.eval(&cx, &[u, v]), &expected) < 1e-12);
        }
    }

    #[test]
    fn curvature_of_u1_triangle() {
        let cx = CliqueComplex::build(Graph::complete(3), None);
        let alpha = 0.9;
        let a = Connection::from_angles(&cx, &[0.0, alpha, 0.0]).unwrap();
        let f = curvature(&cx, &a);
        assert!((f.eval(&cx, &[0, 1, 2])[(0, 0)] - (1.0 - linalg::phase(alpha))).norm() < 1e-15);
        let minus = Connection::from_angles(&cx, &[std::f64::consts::PI; 3]).unwrap();
        let w = wilson_curvature(&cx, &minus);
        assert!((w.eval(&cx, &[0, 1, 2])[(0, 0)] + 1.0).norm() < 1e-12);
        let h = holonomy(&cx, &minus, &[0, 1, 2, 0]).unwrap();
        assert!(linalg::max_abs_diff(&h, &w.eval(&cx, &[0, 1, 2])) < 1e-15);
        assert!(linalg::max_abs_diff(&holonomy(&cx, &a, &[0, 2, 0]).unwrap(), &linalg::identity(1)) < 1e-15);
    }
}
