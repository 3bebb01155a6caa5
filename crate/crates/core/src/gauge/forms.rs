use num_complex::Complex64;
use rand::Rng;

use super::GaugeTransformation;
use crate::error::{Error, Result};
use crate::graph::{perm, CliqueComplex};
use crate::linalg::{self, CMat, CVec};

/// A fiber-valued `k`-form: one vector per stored `k`-simplex, extended to
/// other orderings by the permutation sign.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorForm {
    degree: usize,
    dim: usize,
    values: Vec<CVec>,
}

impl VectorForm {
    pub fn zeros(cx: &CliqueComplex, k: usize, dim: usize) -> Self {
        VectorForm {
            degree: k,
            dim,
            values: vec![CVec::zeros(dim); cx.count(k)],
        }
    }

    pub fn from_values(cx: &CliqueComplex, k: usize, dim: usize, values: Vec<CVec>) -> Result<Self> {
        if values.len() != cx.count(k) {
            return Err(Error::DimensionMismatch {
                expected: cx.count(k),
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(VectorForm { degree: k, dim, values })
    }

    /// Gaussian entries; real when `real`.
    pub fn random<R: Rng + ?Sized>(cx: &CliqueComplex, k: usize, dim: usize, real: bool, rng: &mut R) -> Self {
        VectorForm {
            degree: k,
            dim,
            values: (0..cx.count(k)).map(|_| linalg::random_vector(rng, dim, real)).collect(),
        }
    }

    /// Unit vector `e_c` on simplex `i`, zero elsewhere.
    pub fn basis(cx: &CliqueComplex, k: usize, dim: usize, i: usize, c: usize) -> Self {
        let mut f = VectorForm::zeros(cx, k, dim);
        f.values[i][c] = linalg::ONE;
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[CVec] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [CVec] {
        &mut self.values
    }

    /// Value at an arbitrary ordered tuple.
    pub fn eval(&self, cx: &CliqueComplex, tuple: &[usize]) -> CVec {
        match cx.locate(tuple) {
            Some(loc) if loc.degree == self.degree => &self.values[loc.index] * Complex64::new(loc.sign, 0.0),
            _ => CVec::zeros(self.dim),
        }
    }

    /// `sum over simplices of (f, g)`, conjugate-linear in `self`.
    pub fn inner(&self, other: &VectorForm) -> Complex64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.dotc(b)).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_squared()).sum()
    }

    pub fn add(&self, other: &VectorForm) -> VectorForm {
        VectorForm {
            degree: self.degree,
            dim: self.dim,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &VectorForm) -> VectorForm {
        VectorForm {
            degree: self.degree,
            dim: self.dim,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> VectorForm {
        VectorForm {
            degree: self.degree,
            dim: self.dim,
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    /// Largest entry deviation.
    pub fn distance(&self, other: &VectorForm) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| linalg::vec_max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| v.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Flattens into one column, simplex-major.
    pub fn to_vector(&self) -> CVec {
        CVec::from_iterator(self.values.len() * self.dim, self.values.iter().flat_map(|v| v.iter().copied()))
    }

    pub fn from_vector(cx: &CliqueComplex, k: usize, dim: usize, v: &CVec) -> Self {
        let values = (0..cx.count(k)).map(|i| v.rows(i * dim, dim).into_owned()).collect();
        VectorForm { degree: k, dim, values }
    }

    /// `(gf)(i_0..i_k) = g(i_0) f(i_0..i_k)` on sorted tuples.
    pub fn gauge(&self, cx: &CliqueComplex, g: &GaugeTransformation) -> Result<VectorForm> {
        if g.group().dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.group().dim(),
            });
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| g.at(cx.simplex(self.degree, i)[0]) * v)
            .collect();
        Ok(VectorForm {
            degree: self.degree,
            dim: self.dim,
            values,
        })
    }
}

/// An endomorphism-valued `k`-form: one matrix for every ordering of every
/// stored `k`-simplex, indexed by permutation rank. No symmetry is assumed.
#[derive(Debug, Clone, PartialEq)]
pub struct EndForm {
    degree: usize,
    dim: usize,
    values: Vec<Vec<CMat>>,
}

impl EndForm {
    pub fn zeros(cx: &CliqueComplex, k: usize, dim: usize) -> Self {
        EndForm {
            degree: k,
            dim,
            values: vec![vec![linalg::zeros(dim); perm::factorial(k + 1)]; cx.count(k)],
        }
    }

    /// Builds a form by evaluating `f` on every ordered tuple.
    pub fn from_fn(cx: &CliqueComplex, k: usize, dim: usize, mut f: impl FnMut(&[usize]) -> CMat) -> Self {
        let values = (0..cx.count(k))
            .map(|i| cx.ordered_tuples(k, i).iter().map(|t| f(t)).collect())
            .collect();
        EndForm { degree: k, dim, values }
    }

    pub fn random<R: Rng + ?Sized>(cx: &CliqueComplex, k: usize, dim: usize, real: bool, rng: &mut R) -> Self {
        EndForm::from_fn(cx, k, dim, |_| {
            if real {
                linalg::random_real_gaussian(rng, dim, dim)
            } else {
                linalg::random_complex_gaussian(rng, dim, dim)
            }
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrices per simplex, indexed by permutation rank.
    pub fn values(&self) -> &[Vec<CMat>] {
        &self.values
    }

    /// Value at an arbitrary ordered tuple; zero off cliques.
    pub fn eval(&self, cx: &CliqueComplex, tuple: &[usize]) -> CMat {
        match cx.locate(tuple) {
            Some(loc) if loc.degree == self.degree => self.values[loc.index][loc.perm_rank].clone(),
            _ => linalg::zeros(self.dim),
        }
    }

    /// `1/(k+1)! sum over ordered tuples of Tr(self other†)`.
    pub fn inner(&self, other: &EndForm) -> Complex64 {
        let total: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| a.iter().zip(b))
            .map(|(x, y)| (x * y.adjoint()).trace())
            .sum();
        total / perm::factorial(self.degree + 1) as f64
    }

    pub fn add(&self, other: &EndForm) -> EndForm {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &EndForm) -> EndForm {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &EndForm, f: impl Fn(&CMat, &CMat) -> CMat) -> EndForm {
        EndForm {
            degree: self.degree,
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: f64) -> EndForm {
        EndForm {
            degree: self.degree,
            dim: self.dim,
            values: self
                .values
                .iter()
                .map(|a| a.iter().map(|x| x * Complex64::new(c, 0.0)).collect())
                .collect(),
        }
    }

    pub fn distance(&self, other: &EndForm) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| a.iter().zip(b))
            .map(|(x, y)| linalg::max_abs_diff(x, y))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().map(linalg::max_abs).fold(0.0, f64::max)
    }

    /// `(φ₁φ₂)(i_0..i_{p+q}) = φ₁(i_0..i_p) φ₂(i_p..i_{p+q})`.
    pub fn product(&self, cx: &CliqueComplex, other: &EndForm) -> EndForm {
        let p = self.degree;
        EndForm::from_fn(cx, p + other.degree, self.dim, |t| {
            self.eval(cx, &t[..=p]) * other.eval(cx, &t[p..])
        })
    }

    /// `(φf)(i_0..i_{p+q}) = φ(i_0..i_p) f(i_p..i_{p+q})` on sorted tuples.
    pub fn act(&self, cx: &CliqueComplex, f: &VectorForm) -> VectorForm {
        let p = self.degree;
        let k = p + f.degree();
        let values = cx
            .simplices(k)
            .iter()
            .map(|s| self.eval(cx, &s[..=p]) * f.eval(cx, &s[p..]))
            .collect();
        VectorForm {
            degree: k,
            dim: self.dim,
            values,
        }
    }

    /// Graded commutator with a 1-form: `[a, φ] = aφ - (-1)^k φa`.
    pub fn commutator_with_one_form(&self, cx: &CliqueComplex, a: &EndForm) -> EndForm {
        let left = a.product(cx, self);
        let right = self.product(cx, a);
        let s = if self.degree.is_multiple_of(2) { 1.0 } else { -1.0 };
        left.sub(&right.scale(s))
    }

    /// `(gφ)(t) = g(t_0) φ(t) g(t_k)^{-1}` on every ordered tuple.
    pub fn gauge(&self, cx: &CliqueComplex, g: &GaugeTransformation) -> Result<EndForm> {
        if g.group().dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.group().dim(),
            });
        }
        let k = self.degree;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, per)| {
                cx.ordered_tuples(k, i)
                    .iter()
                    .zip(per)
                    .map(|(t, m)| g.at(t[0]) * m * g.at(t[k]).adjoint())
                    .collect()
            })
            .collect();
        Ok(EndForm {
            degree: k,
            dim: self.dim,
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::Group;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vector_form_is_alternating_and_zero_off_cliques() {
        let cx = CliqueComplex::build(Graph::path(3), None);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = VectorForm::random(&cx, 1, 2, false, &mut rng);
        assert!(linalg::vec_max_abs_diff(&f.eval(&cx, &[1, 0]), &(-f.eval(&cx, &[0, 1]))) == 0.0);
        assert_eq!(f.eval(&cx, &[0, 2]), CVec::zeros(2));
    }

    #[test]
    fn gauge_preserves_vector_norms() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let group = Group::unitary(3);
        let g = GaugeTransformation::random(4, group, &mut rng);
        for k in 0..4 {
            let f = VectorForm::random(&cx, k, 3, false, &mut rng);
            let gf = f.gauge(&cx, &g).unwrap();
            assert!((gf.norm_sq() - f.norm_sq()).abs() < 1e-10);
        }
    }

    #[test]
    fn end_product_is_gauge_compatible() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let group = Group::unitary(2);
        let g = GaugeTransformation::random(4, group, &mut rng);
        let a = EndForm::random(&cx, 1, 2, false, &mut rng);
        let b = EndForm::random(&cx, 1, 2, false, &mut rng);
        let lhs = a.product(&cx, &b).gauge(&cx, &g).unwrap();
        let rhs = a.gauge(&cx, &g).unwrap().product(&cx, &b.gauge(&cx, &g).unwrap());
        assert!(lhs.distance(&rhs) < 1e-10);
    }
}
