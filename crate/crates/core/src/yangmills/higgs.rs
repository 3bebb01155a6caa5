//! Yang-Mills-Higgs functional `1/2 <F,F> + 1/2 <d_A φ, d_A φ> + V(φ)` and
//! its Euler-Lagrange residuals for `V = 0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::functional::{ym_value, TriangleIndex};
use crate::error::{Error, Result};
use crate::gauge::{connection_laplacian_vertex, d_a_vector, Connection, VectorForm};
use crate::graph::CliqueComplex;
use crate::linalg::{self, CMat, CVec};

/// Potential term of the functional. Only the zero potential is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Potential {
    #[default]
    Zero,
}

impl FromStr for Potential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Potential::Zero),
            other => Err(Error::UnsupportedPotential(other.into())),
        }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("zero")
    }
}

impl Potential {
    pub fn value(&self, _phi: &VectorForm) -> f64 {
        match self {
            Potential::Zero => 0.0,
        }
    }
}

fn check_higgs(a: &Connection, phi: &VectorForm) -> Result<()> {
    if phi.degree() != 0 {
        return Err(Error::Validation("the Higgs field is a 0-form".into()));
    }
    if phi.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: phi.dim(),
        });
    }
    Ok(())
}

pub fn ymh_value(cx: &CliqueComplex, a: &Connection, phi: &VectorForm, potential: Potential) -> Result<f64> {
    check_higgs(a, phi)?;
    let dphi = d_a_vector(cx, a, phi);
    Ok(ym_value(cx, a)? + 0.5 * dphi.norm_sq() + potential.value(phi))
}

#[derive(Debug, Clone)]
pub struct YmhResidual {
    /// Per canonical edge `u -> v`: `R_YM(u,v) - (P - P†)` with
    /// `P = A(u,v) φ(v) φ(v)† A(v,u) - φ(u) φ(v)† A(v,u)`.
    pub edges: Vec<CMat>,
    /// Per vertex: `deg(i) φ(i) - sum_l A(i,l) φ(l)`.
    pub vertices: Vec<CVec>,
}

impl YmhResidual {
    pub fn edge_norms(&self) -> Vec<f64> {
        self.edges.iter().map(linalg::op_norm).collect()
    }

    pub fn vertex_norms(&self) -> Vec<f64> {
        self.vertices.iter().map(|v| v.norm()).collect()
    }

    pub fn inf_norm(&self) -> f64 {
        self.edge_norms()
            .into_iter()
            .chain(self.vertex_norms())
            .fold(0.0, f64::max)
    }
}

/// Euler-Lagrange residuals of the functional with `V = 0`.
///
/// The edge equation is the skew-Hermitian projection of the variation, so
/// the Higgs source enters as `P - P†`.
pub fn ymh_residuals(cx: &CliqueComplex, a: &Connection, phi: &VectorForm, potential: Potential) -> Result<YmhResidual> {
    check_higgs(a, phi)?;
    if potential != Potential::Zero {
        return Err(Error::UnsupportedPotential(potential.to_string()));
    }
    let index = TriangleIndex::new(cx)?;
    let mut edges = index.residuals(a);
    for (e, s) in cx.simplices(1).iter().enumerate() {
        let (u, v) = (s[0], s[1]);
        let a_uv = &a.values()[e];
        let a_vu = a_uv.adjoint();
        let pu = &phi.values()[u];
        let pv = &phi.values()[v];
        let p = a_uv * pv * pv.adjoint() * &a_vu - pu * pv.adjoint() * &a_vu;
        edges[e] -= &p - p.adjoint();
    }
    let vertices = connection_laplacian_vertex(cx, a, phi)?.values().to_vec();
    Ok(YmhResidual { edges, vertices })
}

/// Directional derivative predicted by the residuals for the variation
/// `A(u,v) -> exp(t η(u,v)) A(u,v)`, `φ -> φ + t δφ`:
/// `sum_e -1/2 Re Tr(η_e† R_e) + sum_i Re(δφ_i† r_i)`.
pub fn ymh_pairing(residual: &YmhResidual, eta: &[CMat], dphi: &VectorForm) -> f64 {
    let edge: f64 = residual
        .edges
        .iter()
        .zip(eta)
        .map(|(r, x)| -0.5 * linalg::real_inner(x, r))
        .sum();
    let vertex: f64 = residual
        .vertices
        .iter()
        .zip(dphi.values())
        .map(|(r, d)| d.dotc(r).re)
        .sum();
    edge + vertex
}

/// `exp(t η) A` on every edge.
pub fn left_perturb(cx: &CliqueComplex, a: &Connection, eta: &[CMat], t: f64) -> Result<Connection> {
    let values = a
        .values()
        .iter()
        .zip(eta)
        .map(|(m, x)| linalg::exp_skew(&(x * Complex64::new(t, 0.0))) * m)
        .collect();
    Connection::from_values(cx, a.group(), values)
}
