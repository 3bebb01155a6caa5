use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

/// Maximum entry deviation tolerated by the symmetry check.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A unital algebra with a norm and an involution.
pub trait NormedAlgebra: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn norm(&self) -> f64;
    /// Conjugate transpose for matrices, identity for reals.
    fn involution(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
    /// Largest entrywise deviation.
    fn distance(&self, other: &Self) -> f64;
}

impl NormedAlgebra for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn involution(&self) -> Self {
        *self
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

/// Square complex matrices under the operator norm.
impl NormedAlgebra for CMat {
    fn zero_like(&self) -> Self {
        CMat::zeros(self.nrows(), self.ncols())
    }
    fn one_like(&self) -> Self {
        CMat::identity(self.nrows(), self.ncols())
    }
    fn norm(&self) -> f64 {
        linalg::op_norm(self)
    }
    fn involution(&self) -> Self {
        self.adjoint()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, s: f64) -> Self {
        self * num_complex::Complex64::new(s, 0.0)
    }
    fn distance(&self, other: &Self) -> f64 {
        linalg::max_abs_diff(self, other)
    }
}

/// Square matrix with entries in a normed algebra, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: NormedAlgebra> AlgebraMatrix<T> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        AlgebraMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.dim + j] = value;
    }

    /// Largest deviation of `A_ji` from the involution of `A_ij`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max(self.get(j, i).distance(&self.get(i, j).involution()));
            }
        }
        worst
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraMatrix::from_fn(self.dim, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    /// Largest entrywise deviation.
    pub fn distance(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }
}

impl AlgebraMatrix<f64> {
    pub fn from_real(m: &DMatrix<f64>) -> Self {
        AlgebraMatrix::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    pub fn to_real(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| *self.get(i, j))
    }
}

impl AlgebraMatrix<CMat> {
    /// Flattens an `N x N` matrix of `n x n` blocks into an `Nn x Nn` matrix.
    pub fn to_block_matrix(&self) -> CMat {
        let n = self.entries.first().map_or(0, |b| b.nrows());
        let mut out = CMat::zeros(self.dim * n, self.dim * n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.view_mut((i * n, j * n), (n, n)).copy_from(self.get(i, j));
            }
        }
        out
    }
}

/// `A = B + Ric` where `B` keeps the off-diagonal entries and has
/// `sum_{j != i} |A_ij|` on the diagonal, and `Ric` is diagonal.
#[derive(Debug, Clone)]
pub struct WeitzenboeckSplit<T> {
    pub bochner: AlgebraMatrix<T>,
    /// Diagonal entries of the Ricci part.
    pub ric: Vec<T>,
}

impl<T: NormedAlgebra> WeitzenboeckSplit<T> {
    pub fn ric_matrix(&self) -> AlgebraMatrix<T> {
        let dim = self.ric.len();
        AlgebraMatrix::from_fn(dim, |i, j| {
            if i == j {
                self.ric[i].clone()
            } else {
                self.bochner.get(i, j).zero_like()
            }
        })
    }

    /// `B + Ric`, which reproduces the input.
    pub fn recombine(&self) -> AlgebraMatrix<T> {
        self.bochner.add(&self.ric_matrix())
    }
}

pub fn weitzenboeck_split<T: NormedAlgebra>(m: &AlgebraMatrix<T>) -> Result<WeitzenboeckSplit<T>> {
    let defect = m.symmetry_defect();
    if defect > SYMMETRY_TOL {
        return Err(Error::Contract(format!(
            "Weitzenboeck split needs a symmetric matrix; symmetry defect {defect:e}"
        )));
    }
    let dim = m.dim();
    let mut bochner = m.clone();
    let mut ric = Vec::with_capacity(dim);
    for i in 0..dim {
        let off: f64 = (0..dim).filter(|&j| j != i).map(|j| m.get(i, j).norm()).sum();
        let diag = m.get(i, i).one_like().scale(off);
        ric.push(m.get(i, i).sub(&diag));
        bochner.set(i, i, diag);
    }
    Ok(WeitzenboeckSplit { bochner, ric })
}
