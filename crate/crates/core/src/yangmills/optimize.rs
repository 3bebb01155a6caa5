use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::functional::TriangleIndex;
use super::gauge_fix::spanning_tree_gauge_fix;
use crate::error::Result;
use crate::gauge::{Connection, Group};
use crate::graph::CliqueComplex;
use crate::linalg::{self, CMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    /// Stop once the residual infinity norm drops below this.
    pub tol: f64,
    pub max_iter: usize,
    pub starts: usize,
    pub seed: u64,
    pub initial_step: f64,
    pub armijo: f64,
    pub backtrack: f64,
    /// Upper limit for the step carried over between iterations.
    pub max_step: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            tol: 1e-8,
            max_iter: 10_000,
            starts: 16,
            seed: 0,
            initial_step: 0.1,
            armijo: 1e-4,
            backtrack: 0.5,
            max_step: 1.0,
        }
    }
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone)]
pub struct YmReport {
    pub value: f64,
    /// Residual matrix per canonical edge.
    pub residuals: Vec<CMat>,
    pub residual_norms: Vec<f64>,
    pub residual_inf_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Functional value after every accepted step, starting value first.
    pub trace: Vec<f64>,
    pub connection: Connection,
    pub gauge_fixed: bool,
}

impl YmReport {
    /// Evaluates a connection without optimizing.
    pub fn evaluate(index: &TriangleIndex, a: &Connection, tol: f64, gauge_fixed: bool) -> Self {
        let value = index.wilson_action(a);
        let residuals = index.residuals(a);
        let residual_norms: Vec<f64> = residuals.iter().map(linalg::op_norm).collect();
        let residual_inf_norm = residual_norms.iter().copied().fold(0.0, f64::max);
        YmReport {
            value,
            residuals,
            residual_norms,
            residual_inf_norm,
            iterations: 0,
            converged: residual_inf_norm < tol,
            trace: vec![value],
            connection: a.clone(),
            gauge_fixed,
        }
    }
}

fn retract(a: &Connection, grad: &[CMat], t: f64) -> Connection {
    let mut out = a.clone();
    for (e, g) in grad.iter().enumerate() {
        let step = linalg::exp_skew(&(g * Complex64::new(t, 0.0)));
        let m = linalg::reorthonormalize(&(&a.values()[e] * step), a.group().is_real());
        out.set_raw(e, m);
    }
    out
}

/// Gradient descent (or ascent) with Armijo backtracking and the retraction
/// `A <- A exp(-t grad)`, starting from the tree-gauge-fixed `start`.
pub fn optimize_from(
    cx: &CliqueComplex,
    start: &Connection,
    direction: Direction,
    opts: &OptimizeOptions,
) -> Result<YmReport> {
    let index = TriangleIndex::new(cx)?;
    let (mut a, _) = spanning_tree_gauge_fix(cx, start)?;
    // Maximizing is minimizing the deficit `2 n ω₃ - f`, whose gradient is
    // the negated gradient of `f`. Each objective is free of cancellation
    // near its own optimum.
    let (sgn, objective): (f64, fn(&TriangleIndex, &Connection) -> f64) = match direction {
        Direction::Minimize => (1.0, TriangleIndex::wilson_action),
        Direction::Maximize => (-1.0, TriangleIndex::wilson_deficit),
    };
    let mut value = objective(&index, &a);
    let mut trace = vec![index.wilson_action(&a)];
    let mut step = opts.initial_step;
    let mut iterations = 0;
    let mut residual = inf_norm(&index, &a);
    while residual >= opts.tol && iterations < opts.max_iter {
        let grad = index.gradient(&a);
        let gnorm2: f64 = grad.iter().map(|g| linalg::real_inner(g, g)).sum();
        let mut t = step;
        let mut accepted = None;
        while t > 1e-18 {
            let cand = retract(&a, &grad, -sgn * t);
            let v = objective(&index, &cand);
            if v - value <= -opts.armijo * t * gnorm2 {
                accepted = Some((cand, v));
                break;
            }
            t *= opts.backtrack;
        }
        let Some((cand, v)) = accepted else {
            break;
        };
        a = cand;
        value = v;
        trace.push(index.wilson_action(&a));
        iterations += 1;
        step = (2.0 * t).min(opts.max_step);
        residual = inf_norm(&index, &a);
    }
    let (fixed, _) = spanning_tree_gauge_fix(cx, &a)?;
    let mut report = YmReport::evaluate(&index, &fixed, opts.tol, true);
    report.iterations = iterations;
    report.trace = trace;
    Ok(report)
}

fn inf_norm(index: &TriangleIndex, a: &Connection) -> f64 {
    index
        .residuals(a)
        .iter()
        .map(linalg::op_norm)
        .fold(0.0, f64::max)
}

/// Distinct endpoint of a multi-start run.
#[derive(Debug, Clone)]
pub struct Endpoint {
    pub value: f64,
    /// Sorted triangle holonomy traces, a gauge-invariant fingerprint.
    pub signature: Vec<(f64, f64)>,
    /// Runs that ended here.
    pub runs: Vec<usize>,
    /// Every holonomy trace equals `n`, or every one equals `-n`.
    pub trivial: bool,
}

#[derive(Debug, Clone)]
pub struct MultiStartReport {
    pub runs: Vec<YmReport>,
    pub endpoints: Vec<Endpoint>,
    /// Run with the lowest (minimize) or highest (maximize) final value.
    pub best: usize,
}

/// Clustering tolerance for endpoint values and signatures.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Sorted holonomy traces of all triangles.
pub fn holonomy_signature(index: &TriangleIndex, a: &Connection) -> Vec<(f64, f64)> {
    let mut sig: Vec<(f64, f64)> = index
        .holonomies(a)
        .iter()
        .map(|h| {
            let t = h.trace();
            (t.re, t.im)
        })
        .collect();
    sig.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    sig
}

fn is_trivial_signature(sig: &[(f64, f64)], n: f64) -> bool {
    let all = |target: f64| sig.iter().all(|&(re, im)| (re - target).abs() <= CLUSTER_TOL && im.abs() <= CLUSTER_TOL);
    all(n) || all(-n)
}

/// Runs `opts.starts` optimizations from Haar-random connections seeded by
/// `opts.seed + s` and clusters the endpoints.
pub fn ym_optimize(
    cx: &CliqueComplex,
    group: Group,
    direction: Direction,
    opts: &OptimizeOptions,
) -> Result<MultiStartReport> {
    let index = TriangleIndex::new(cx)?;
    let mut runs = Vec::with_capacity(opts.starts);
    for s in 0..opts.starts {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(s as u64));
        let start = Connection::random(cx, group, &mut rng);
        runs.push(optimize_from(cx, &start, direction, opts)?);
    }

    let n = group.dim() as f64;
    let mut endpoints: Vec<Endpoint> = Vec::new();
    for (r, run) in runs.iter().enumerate() {
        let sig = holonomy_signature(&index, &run.connection);
        let found = endpoints.iter_mut().find(|ep| {
            (ep.value - run.value).abs() <= CLUSTER_TOL
                && ep
                    .signature
                    .iter()
                    .zip(&sig)
                    .all(|(x, y)| (x.0 - y.0).abs() <= CLUSTER_TOL && (x.1 - y.1).abs() <= CLUSTER_TOL)
        });
        match found {
            Some(ep) => ep.runs.push(r),
            None => endpoints.push(Endpoint {
                value: run.value,
                trivial: is_trivial_signature(&sig, n),
                signature: sig,
                runs: vec![r],
            }),
        }
    }

    let better = |x: f64, y: f64| match direction {
        Direction::Minimize => x < y,
        Direction::Maximize => x > y,
    };
    let mut best = 0;
    for (r, run) in runs.iter().enumerate() {
        if better(run.value, runs[best].value) {
            best = r;
        }
    }
    Ok(MultiStartReport { runs, endpoints, best })
}
