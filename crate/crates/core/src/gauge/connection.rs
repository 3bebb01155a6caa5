use num_complex::Complex64;
use rand::Rng;

use super::Group;
use crate::error::{Error, Result};
use crate::graph::CliqueComplex;
use crate::linalg::{self, CMat};

/// One group element per edge, stored on the edge's own direction `u -> v`
/// in the complex's edge order. The reverse direction is the inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    group: Group,
    values: Vec<CMat>,
}

impl Connection {
    pub fn trivial(cx: &CliqueComplex, group: Group) -> Self {
        Connection {
            group,
            values: vec![group.identity(); cx.count(1)],
        }
    }

    /// Validates every entry as a group element.
    pub fn from_values(cx: &CliqueComplex, group: Group, values: Vec<CMat>) -> Result<Self> {
        if values.len() != cx.count(1) {
            return Err(Error::DimensionMismatch {
                expected: cx.count(1),
                found: values.len(),
            });
        }
        let values = values.into_iter().map(|m| group.element(m)).collect::<Result<_>>()?;
        Ok(Connection { group, values })
    }

    /// U(1) connection `e^{i theta_e}` per edge.
    pub fn from_angles(cx: &CliqueComplex, angles: &[f64]) -> Result<Self> {
        let group = Group::u1();
        Connection::from_values(cx, group, angles.iter().map(|&t| group.phase(t)).collect())
    }

    pub fn random<R: Rng + ?Sized>(cx: &CliqueComplex, group: Group, rng: &mut R) -> Self {
        Connection {
            group,
            values: (0..cx.count(1)).map(|_| group.random_element(rng)).collect(),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Elements on canonical edges, indexed like `cx.simplices(1)`.
    pub fn values(&self) -> &[CMat] {
        &self.values
    }

    /// Replaces the element on canonical edge `e` without validation.
    pub(crate) fn set_raw(&mut self, e: usize, m: CMat) {
        self.values[e] = m;
    }

    pub fn set(&mut self, e: usize, m: CMat) -> Result<()> {
        self.values[e] = self.group.element(m)?;
        Ok(())
    }

    /// `A(u, v)`; panics when `u` and `v` are not adjacent.
    pub fn at(&self, cx: &CliqueComplex, u: usize, v: usize) -> CMat {
        self.try_at(cx, u, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_at(&self, cx: &CliqueComplex, u: usize, v: usize) -> Result<CMat> {
        let (e, forward) = cx.edge(u, v).ok_or(Error::NonAdjacent(u, v))?;
        Ok(if forward {
            self.values[e].clone()
        } else {
            self.values[e].adjoint()
        })
    }

    /// Angle of each U(1) edge element.
    pub fn angles(&self) -> Vec<f64> {
        self.values.iter().map(|m| m[(0, 0)].arg()).collect()
    }

    /// Largest entry deviation between two connections.
    pub fn distance(&self, other: &Connection) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| linalg::max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    fn check_compatible(&self, cx: &CliqueComplex, group: Group) -> Result<()> {
        if self.group != group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, group)));
        }
        if self.values.len() != cx.count(1) {
            return Err(Error::DimensionMismatch {
                expected: cx.count(1),
                found: self.values.len(),
            });
        }
        Ok(())
    }
}

/// One group element per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeTransformation {
    group: Group,
    values: Vec<CMat>,
}

impl GaugeTransformation {
    pub fn identity(num_vertices: usize, group: Group) -> Self {
        GaugeTransformation {
            group,
            values: vec![group.identity(); num_vertices],
        }
    }

    pub fn from_values(group: Group, values: Vec<CMat>) -> Result<Self> {
        let values = values.into_iter().map(|m| group.element(m)).collect::<Result<_>>()?;
        Ok(GaugeTransformation { group, values })
    }

    pub fn random<R: Rng + ?Sized>(num_vertices: usize, group: Group, rng: &mut R) -> Self {
        GaugeTransformation {
            group,
            values: (0..num_vertices).map(|_| group.random_element(rng)).collect(),
        }
    }

    pub(crate) fn from_raw(group: Group, values: Vec<CMat>) -> Self {
        GaugeTransformation { group, values }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn values(&self) -> &[CMat] {
        &self.values
    }

    pub fn at(&self, v: usize) -> &CMat {
        &self.values[v]
    }

    /// Pointwise product `(self * other)(i) = self(i) other(i)`, which acts as
    /// `other` followed by `self`.
    pub fn compose(&self, other: &GaugeTransformation) -> GaugeTransformation {
        GaugeTransformation {
            group: self.group,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn inverse(&self) -> GaugeTransformation {
        GaugeTransformation {
            group: self.group,
            values: self.values.iter().map(|g| g.adjoint()).collect(),
        }
    }

    /// `(gA)(i, j) = g(i) A(i, j) g(j)^{-1}`.
    pub fn act_connection(&self, cx: &CliqueComplex, a: &Connection) -> Result<Connection> {
        a.check_compatible(cx, self.group)?;
        if self.values.len() != cx.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: cx.num_vertices(),
                found: self.values.len(),
            });
        }
        let values = cx
            .simplices(1)
            .iter()
            .zip(&a.values)
            .map(|(e, m)| {
                let out = &self.values[e[0]] * m * self.values[e[1]].adjoint();
                linalg::reorthonormalize(&out, self.group.is_real())
            })
            .collect();
        Ok(Connection {
            group: self.group,
            values,
        })
    }
}

/// `Ā = A - 1` on a single element.
pub fn shifted(m: &CMat) -> CMat {
    m - CMat::identity(m.nrows(), m.ncols())
}

/// `c` times a matrix.
pub(crate) fn cscale(m: &CMat, c: f64) -> CMat {
    m * Complex64::new(c, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reverse_direction_is_the_inverse() {
        let cx = CliqueComplex::build(Graph::complete(3), None);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Connection::random(&cx, Group::unitary(2), &mut rng);
        let prod = a.at(&cx, 0, 2) * a.at(&cx, 2, 0);
        assert!(linalg::max_abs_diff(&prod, &linalg::identity(2)) < 1e-12);
        assert!(matches!(
            Connection::trivial(&CliqueComplex::build(Graph::path(3), None), Group::u1()).try_at(
                &CliqueComplex::build(Graph::path(3), None),
                0,
                2
            ),
            Err(Error::NonAdjacent(0, 2))
        ));
    }

    #[test]
    fn gauge_action_is_a_group_action() {
        let cx = CliqueComplex::build(Graph::complete(4), None);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let group = Group::unitary(2);
        let a = Connection::random(&cx, group, &mut rng);
        let g = GaugeTransformation::random(4, group, &mut rng);
        let h = GaugeTransformation::random(4, group, &mut rng);
        let lhs = g.act_connection(&cx, &h.act_connection(&cx, &a).unwrap()).unwrap();
        let rhs = g.compose(&h).act_connection(&cx, &a).unwrap();
        assert!(lhs.distance(&rhs) < 1e-10);
        let id = GaugeTransformation::identity(4, group);
        assert!(id.act_connection(&cx, &a).unwrap().distance(&a) < 1e-15);
    }

    #[test]
    fn constant_abelian_gauge_is_trivial() {
        let cx = CliqueComplex::build(Graph::complete(3), None);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Connection::random(&cx, Group::u1(), &mut rng);
        let c = Group::u1().phase(0.7);
        let g = GaugeTransformation::from_values(Group::u1(), vec![c; 3]).unwrap();
        assert!(g.act_connection(&cx, &a).unwrap().distance(&a) < 1e-15);
    }
}
