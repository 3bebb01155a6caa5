//! Real-valued forms on the clique complex, the exterior derivative and its
//! adjoint, the Hodge Laplacian, Betti numbers and Forman-Ricci curvature.

mod weitzenboeck;

pub use weitzenboeck::{weitzenboeck_split, AlgebraMatrix, NormedAlgebra, WeitzenboeckSplit, SYMMETRY_TOL};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::CliqueComplex;
use crate::linalg::numerical_rank;

/// A real `k`-form: one value per stored `k`-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct RealForm {
    degree: usize,
    values: Vec<f64>,
}

impl RealForm {
    pub fn zeros(cx: &CliqueComplex, k: usize) -> Self {
        RealForm {
            degree: k,
            values: vec![0.0; cx.count(k)],
        }
    }

    pub fn from_values(cx: &CliqueComplex, k: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != cx.count(k) {
            return Err(Error::DimensionMismatch {
                expected: cx.count(k),
                found: values.len(),
            });
        }
        Ok(RealForm { degree: k, values })
    }

    /// The form equal to the sign of the ordering on `tuple` and zero elsewhere.
    pub fn indicator(cx: &CliqueComplex, tuple: &[usize]) -> Result<Self> {
        let loc = cx.locate(tuple).ok_or_else(|| Error::NotAClique(tuple.to_vec()))?;
        let mut f = RealForm::zeros(cx, loc.degree);
        f.values[loc.index] = loc.sign;
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Value at an arbitrary ordered tuple: alternating, and zero off cliques.
    pub fn eval(&self, cx: &CliqueComplex, tuple: &[usize]) -> f64 {
        match cx.locate(tuple) {
            Some(loc) if loc.degree == self.degree => loc.sign * self.values[loc.index],
            _ => 0.0,
        }
    }

    /// `sum over simplices of f * g`.
    pub fn inner(&self, other: &RealForm) -> f64 {
        debug_assert_eq!(self.degree, other.degree);
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `(df)(i_0..i_{k+1}) = sum_j (-1)^j f(.., i_j omitted, ..)`.
pub fn d(cx: &CliqueComplex, f: &RealForm) -> RealForm {
    let k = f.degree;
    let mut out = RealForm::zeros(cx, k + 1);
    for (i, v) in out.values.iter_mut().enumerate() {
        *v = cx
            .faces(k + 1, i)
            .iter()
            .enumerate()
            .map(|(j, &face)| if j % 2 == 0 { f.values[face] } else { -f.values[face] })
            .sum();
    }
    out
}

/// `(d*f)(i_0..i_{k-1}) = sum_l f(l, i_0, .., i_{k-1})`, the adjoint of `d`.
pub fn d_star(cx: &CliqueComplex, f: &RealForm) -> Result<RealForm> {
    let k = f.degree;
    if k == 0 {
        return Err(Error::Validation("d* is defined on forms of degree at least 1".into()));
    }
    let mut out = RealForm::zeros(cx, k - 1);
    for (i, v) in out.values.iter_mut().enumerate() {
        // Moving l from position `pos` to the front costs (-1)^pos.
        *v = cx
            .cofaces(k - 1, i)
            .iter()
            .map(|&(b, pos)| if pos % 2 == 0 { f.values[b] } else { -f.values[b] })
            .sum();
    }
    Ok(out)
}

/// Matrix of `d` from degree `k` to degree `k+1` in the canonical bases.
pub fn d_matrix(cx: &CliqueComplex, k: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(cx.count(k + 1), cx.count(k));
    for i in 0..cx.count(k + 1) {
        for (j, &face) in cx.faces(k + 1, i).iter().enumerate() {
            m[(i, face)] = if j % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    m
}

/// `Δf = d d* f + d* d f`.
pub fn hodge_laplacian_apply(cx: &CliqueComplex, f: &RealForm) -> Result<RealForm> {
    cx.require_degree(f.degree + 1)?;
    let mut out = d_star(cx, &d(cx, f))?;
    if f.degree > 0 {
        let down = d(cx, &d_star(cx, f)?);
        for (o, v) in out.values.iter_mut().zip(&down.values) {
            *o += v;
        }
    }
    Ok(out)
}

/// Hodge Laplacian on `k`-forms assembled from degrees and parallel
/// neighbours: diagonal `deg + (k+1)` (`deg` at `k = 0`), off-diagonal the
/// parallel-neighbour signs.
pub fn hodge_laplacian_matrix(cx: &CliqueComplex, k: usize) -> Result<DMatrix<f64>> {
    cx.require_degree(k)?;
    let n = cx.count(k);
    let lower = if k == 0 { 0 } else { k + 1 };
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = (cx.degree(k, i) + lower) as f64;
        for (b, s) in cx.parallel_neighbors(k, i) {
            m[(i, b)] = s;
        }
    }
    Ok(m)
}

/// Hodge Laplacian obtained by applying `d d* + d* d` to every basis form.
pub fn hodge_laplacian_composed(cx: &CliqueComplex, k: usize) -> Result<DMatrix<f64>> {
    let n = cx.count(k);
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = RealForm::zeros(cx, k);
        e.values[j] = 1.0;
        let col = hodge_laplacian_apply(cx, &e)?;
        for (i, v) in col.values.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    Ok(m)
}

/// `dim ker Δ_k` by numerical rank.
pub fn betti(cx: &CliqueComplex, k: usize) -> Result<usize> {
    let lap = hodge_laplacian_matrix(cx, k)?;
    Ok(cx.count(k) - numerical_rank(&lap))
}

/// `dim ker d_k - rank d_{k-1}`, computed from boundary ranks only.
pub fn betti_by_rank(cx: &CliqueComplex, k: usize) -> Result<usize> {
    cx.require_degree(k + 1)?;
    let rank_out = numerical_rank(&d_matrix(cx, k));
    let rank_in = if k == 0 { 0 } else { numerical_rank(&d_matrix(cx, k - 1)) };
    Ok(cx.count(k) - rank_out - rank_in)
}

/// Betti numbers for every enumerated degree.
pub fn betti_numbers(cx: &CliqueComplex) -> Result<Vec<usize>> {
    (0..cx.num_degrees()).map(|k| betti(cx, k)).collect()
}

/// Alternating sum of simplex counts.
pub fn euler_characteristic(cx: &CliqueComplex) -> i64 {
    cx.counts()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Forman-Ricci curvature of simplex `(k, i)`: cofaces plus faces minus
/// parallel neighbours. Vertices have no faces, so a vertex scores
/// `deg - deg = 0`, matching the diagonal of the Ricci part of `Δ_0`.
pub fn forman_ricci(cx: &CliqueComplex, k: usize, i: usize) -> f64 {
    let faces = if k == 0 { 0 } else { k + 1 };
    (cx.degree(k, i) + faces) as f64 - cx.parallel_neighbors(k, i).len() as f64
}

/// Forman-Ricci curvature of a clique given in any vertex order.
pub fn forman_ricci_of(cx: &CliqueComplex, tuple: &[usize]) -> Result<f64> {
    let loc = cx.locate(tuple).ok_or_else(|| Error::NotAClique(tuple.to_vec()))?;
    Ok(forman_ricci(cx, loc.degree, loc.index))
}
