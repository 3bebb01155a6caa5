//! Identity battery for one connection: every algebraic identity the
//! calculus must satisfy, evaluated on random forms, with its worst error.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::calculus::{d, d_star, forman_ricci, hodge_laplacian_matrix, weitzenboeck_split, AlgebraMatrix, RealForm};
use crate::error::Result;
use crate::gauge::{
    curvature, d_a_end, d_a_star_end, d_a_star_vector, d_a_vector, d_end, generalized_weitzenboeck,
    shifted_connection, Connection, EndForm, VectorForm,
};
use crate::graph::CliqueComplex;
use crate::yangmills::{ym_residual, ym_value_curvature, ym_value_wilson};

/// Absolute tolerance applied to every identity.
pub const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    /// Largest entry of the curvature 2-form.
    pub curvature_max_abs: f64,
    pub all_pass: bool,
}

struct Worst(Vec<(&'static str, f64)>);

impl Worst {
    fn record(&mut self, name: &'static str, error: f64) {
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(entry) => entry.1 = entry.1.max(error),
            None => self.0.push((name, error)),
        }
    }
}

fn random_real(cx: &CliqueComplex, k: usize, rng: &mut ChaCha8Rng) -> RealForm {
    let values = (0..cx.count(k)).map(|_| StandardNormal.sample(rng)).collect();
    RealForm::from_values(cx, k, values).expect("length matches")
}

/// Runs the battery with random test forms drawn from `seed`.
pub fn identity_suite(cx: &CliqueComplex, a: &Connection, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = cx.num_degrees();
    let n = a.dim();
    let real = a.group().is_real();
    let mut w = Worst(Vec::new());

    for k in 0..top {
        let f = random_real(cx, k, &mut rng);
        w.record("d_squared", d(cx, &d(cx, &f)).max_abs());
        if k + 1 < top {
            let g = random_real(cx, k + 1, &mut rng);
            w.record("d_adjoint", (d(cx, &f).inner(&g) - f.inner(&d_star(cx, &g)?)).abs());
        }
        let lap = hodge_laplacian_matrix(cx, k)?;
        let split = weitzenboeck_split(&AlgebraMatrix::from_real(&lap))?;
        let recombined = split.recombine().to_real();
        w.record("hodge_weitzenboeck", (recombined - &lap).abs().max());
        let ric_err = split
            .ric
            .iter()
            .enumerate()
            .map(|(i, r)| (r - forman_ricci(cx, k, i)).abs())
            .fold(0.0, f64::max);
        w.record("ricci_is_forman", ric_err);
    }

    let f2 = curvature(cx, a);
    for k in 0..top {
        let v = VectorForm::random(cx, k, n, real, &mut rng);
        let lhs = d_a_vector(cx, a, &d_a_vector(cx, a, &v));
        w.record("d_a_squared_is_curvature", lhs.distance(&f2.act(cx, &v)));
        w.record("connection_weitzenboeck", generalized_weitzenboeck(cx, a, k)?.error());
    }
    w.record("bianchi", d_a_end(cx, a, &f2).max_abs());
    let abar = shifted_connection(cx, a);
    w.record("structure_equation", f2.distance(&d_end(cx, &abar).add(&abar.product(cx, &abar))));
    for p in 0..top {
        for q in 0..top.saturating_sub(p + 1) {
            let phi = EndForm::random(cx, p, n, real, &mut rng);
            let f = VectorForm::random(cx, q, n, real, &mut rng);
            let sign = Complex64::new(if p % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
            let lhs = d_a_vector(cx, a, &phi.act(cx, &f));
            let rhs = d_a_end(cx, a, &phi)
                .act(cx, &f)
                .add(&phi.act(cx, &d_a_vector(cx, a, &f)).scale(sign));
            w.record("leibniz", lhs.distance(&rhs));
        }
    }
    for k in 0..top.saturating_sub(1) {
        let f = VectorForm::random(cx, k, n, real, &mut rng);
        let h = VectorForm::random(cx, k + 1, n, real, &mut rng);
        let err = (d_a_vector(cx, a, &f).inner(&h) - f.inner(&d_a_star_vector(cx, a, &h)?)).norm();
        w.record("d_a_adjoint_vector", err);
        let p = EndForm::random(cx, k, n, real, &mut rng);
        let q = EndForm::random(cx, k + 1, n, real, &mut rng);
        let err = (d_a_end(cx, a, &p).inner(&q) - p.inner(&d_a_star_end(cx, a, &q)?)).norm();
        w.record("d_a_adjoint_end", err);
    }
    if top > 2 {
        w.record(
            "functional_formulas_agree",
            (ym_value_curvature(cx, a) - ym_value_wilson(cx, a)?).abs(),
        );
        let r = ym_residual(cx, a)?;
        let gap = r.norms.iter().zip(&r.raw_norms).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        w.record("residual_forms_agree", gap);
    }

    let checks: Vec<IdentityCheck> = w
        .0
        .into_iter()
        .map(|(name, error)| IdentityCheck {
            name,
            error,
            tolerance: IDENTITY_TOL,
            pass: error < IDENTITY_TOL,
        })
        .collect();
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(IdentityReport {
        checks,
        curvature_max_abs: f2.max_abs(),
        all_pass,
    })
}
