use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

/// Tolerance for accepting a matrix as a group element.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    U1,
    On,
    Un,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::U1 => "U1",
            GroupKind::On => "On",
            GroupKind::Un => "Un",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u1" => Ok(GroupKind::U1),
            "on" => Ok(GroupKind::On),
            "un" => Ok(GroupKind::Un),
            _ => Err(Error::Validation(format!("unknown group {s:?}; expected U1, On or Un"))),
        }
    }
}

/// A structure group acting on its defining representation of dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Group {
    kind: GroupKind,
    dim: usize,
}

impl Group {
    pub fn new(kind: GroupKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Validation("fiber dimension must be positive".into()));
        }
        if kind == GroupKind::U1 && dim != 1 {
            return Err(Error::Validation(format!("U1 acts on a 1-dimensional fiber, got n = {dim}")));
        }
        Ok(Group { kind, dim })
    }

    pub fn u1() -> Self {
        Group {
            kind: GroupKind::U1,
            dim: 1,
        }
    }

    pub fn orthogonal(n: usize) -> Self {
        Group::new(GroupKind::On, n).expect("positive dimension")
    }

    pub fn unitary(n: usize) -> Self {
        Group::new(GroupKind::Un, n).expect("positive dimension")
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True for groups acting on a real fiber.
    pub fn is_real(&self) -> bool {
        self.kind == GroupKind::On
    }

    pub fn identity(&self) -> CMat {
        linalg::identity(self.dim)
    }

    /// Checks shape, unitarity and reality, and removes rounding drift.
    pub fn element(&self, m: CMat) -> Result<CMat> {
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.nrows().max(m.ncols()),
            });
        }
        if self.is_real() && !linalg::is_real(&m, UNITARITY_TOL) {
            return Err(Error::NotUnitary("orthogonal group element has an imaginary part".into()));
        }
        let defect = linalg::unitarity_defect(&m);
        if defect > UNITARITY_TOL {
            return Err(Error::NotUnitary(format!("|g g* - 1| = {defect:e} exceeds {UNITARITY_TOL:e}")));
        }
        let mut m = linalg::reorthonormalize(&m, self.is_real());
        if self.is_real() {
            m.iter_mut().for_each(|z| z.im = 0.0);
        }
        Ok(m)
    }

    /// `e^{i theta}`; U1 only.
    pub fn phase(&self, theta: f64) -> CMat {
        debug_assert_eq!(self.kind, GroupKind::U1);
        linalg::scalar(linalg::phase(theta))
    }

    /// Haar-distributed element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> CMat {
        match self.kind {
            GroupKind::U1 => self.phase(rng.random_range(0.0..std::f64::consts::TAU)),
            _ => linalg::haar_matrix(rng, self.dim, self.is_real()),
        }
    }

    /// Random element of the Lie algebra.
    pub fn random_tangent<R: Rng + ?Sized>(&self, rng: &mut R) -> CMat {
        linalg::random_skew(rng, self.dim, self.is_real())
    }

    /// Projects a matrix onto the Lie algebra.
    pub fn project_tangent(&self, m: &CMat) -> CMat {
        let mut x = linalg::skew(m);
        if self.is_real() {
            x.iter_mut().for_each(|z| z.im = 0.0);
        }
        x
    }

    /// Dimension of the Lie algebra as a real vector space.
    pub fn algebra_dim(&self) -> usize {
        match self.kind {
            GroupKind::U1 => 1,
            GroupKind::On => self.dim * (self.dim - 1) / 2,
            GroupKind::Un => self.dim * self.dim,
        }
    }

    /// `-1` scaled identity, a central element of every group here.
    pub fn minus_identity(&self) -> CMat {
        self.identity() * Complex64::new(-1.0, 0.0)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::U1 => write!(f, "U(1)"),
            GroupKind::On => write!(f, "O({})", self.dim),
            GroupKind::Un => write!(f, "U({})", self.dim),
        }
    }
}
