//! Small dense complex matrix helpers shared by the gauge and solver modules.
//!
//! Every group element, endomorphism and fiber vector is stored over the
//! complex numbers. Orthogonal groups simply keep a zero imaginary part.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

pub fn scalar(z: Complex64) -> CMat {
    CMat::from_element(1, 1, z)
}

pub fn phase(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].norm();
    }
    if m.iter().all(|z| *z == ZERO) {
        return 0.0;
    }
    m.clone().singular_values().max()
}

pub fn vec_op_norm(v: &CVec) -> f64 {
    v.norm()
}

/// Max absolute entry difference.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn vec_max_abs_diff(a: &CVec, b: &CVec) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Skew-Hermitian part `(X - X†) / 2`.
pub fn skew(m: &CMat) -> CMat {
    (m - m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Real inner product `Re Tr(X† Y)` on matrices.
pub fn real_inner(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

pub fn trace(m: &CMat) -> Complex64 {
    m.trace()
}

/// Distance of `m` from the unitary group, measured as `max |(m m† - 1)_{ij}|`.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    max_abs_diff(&(m * m.adjoint()), &identity(n))
}

pub fn is_real(m: &CMat, tol: f64) -> bool {
    m.iter().all(|z| z.im.abs() <= tol)
}

/// Nearest unitary matrix in the polar sense: `U (U†U)^{-1/2}`.
pub fn polar_project(m: &CMat) -> CMat {
    if m.nrows() == 1 {
        let z = m[(0, 0)];
        let r = z.norm();
        return scalar(if r > 0.0 { z / r } else { ONE });
    }
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    u * v_t
}

/// Re-project onto the group when the drift exceeds `1e-12`.
pub fn reorthonormalize(m: &CMat, real: bool) -> CMat {
    if unitarity_defect(m) <= 1e-12 {
        return m.clone();
    }
    let mut p = polar_project(m);
    if real {
        p.iter_mut().for_each(|z| z.im = 0.0);
    }
    p
}

/// Matrix exponential of a skew-Hermitian matrix, followed by a projection
/// back onto the group to remove rounding drift.
pub fn exp_skew(x: &CMat) -> CMat {
    let real = is_real(x, 0.0);
    let e = if x.nrows() == 1 {
        scalar(x[(0, 0)].exp())
    } else {
        x.exp()
    };
    reorthonormalize(&e, real)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigenvalues of a real symmetric matrix in ascending order.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Relative cut-off for numerical rank: singular values below
/// `1e-9 * max(sigma_max, 1)` are treated as zero.
pub const RANK_RTOL: f64 = 1e-9;

pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let cutoff = RANK_RTOL * sv.max().max(1.0);
    sv.iter().filter(|s| **s >= cutoff).count()
}

pub fn random_complex_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

pub fn random_real_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        Complex64::new(re, 0.0)
    })
}

/// Haar-distributed unitary (or orthogonal when `real`) matrix: QR of a
/// Gaussian matrix with the phases of `diag(R)` moved into `Q`.
pub fn haar_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, real: bool) -> CMat {
    let z = if real {
        random_real_gaussian(rng, n, n)
    } else {
        random_complex_gaussian(rng, n, n)
    };
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    reorthonormalize(&q, real)
}

/// Random skew-Hermitian (skew-symmetric when `real`) matrix with Gaussian entries.
pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize, real: bool) -> CMat {
    let z = if real {
        random_real_gaussian(rng, n, n)
    } else {
        random_complex_gaussian(rng, n, n)
    };
    skew(&z)
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, real: bool) -> CVec {
    let m = if real {
        random_real_gaussian(rng, n, 1)
    } else {
        random_complex_gaussian(rng, n, 1)
    };
    CVec::from_iterator(n, m.iter().copied())
}
