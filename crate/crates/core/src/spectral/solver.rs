//! Smallest eigenpair of a symmetric positive definite matrix.

use log::debug;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::dense::jacobi_eigen;
use crate::spectral::matrix::{dot, norm, SymmetricMatrix};
use crate::spectral::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    DenseJacobi,
    InverseIteration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit vector with nonnegative entry sum.
    pub vector: Vec<f64>,
    /// `||M v - value v||`.
    pub residual: f64,
    /// Outer iterations (inverse iteration) or sweeps (Jacobi).
    pub iterations: usize,
    /// Total conjugate-gradient steps across all solves.
    pub inner_iterations: usize,
    pub method: SolveMethod,
}

/// Dispatches on `cfg.dense_threshold`: small matrices by Jacobi rotations,
/// the rest by inverse iteration.
pub fn smallest_eigenpair(m: &SymmetricMatrix, cfg: &SolverConfig) -> Result<Eigenpair> {
    cfg.validate()?;
    if m.dim() == 0 {
        return Err(Error::InvalidParameter(
            "empty matrix has no eigenpair".into(),
        ));
    }
    if m.dim() <= cfg.dense_threshold {
        Ok(dense_smallest_eigenpair(m))
    } else {
        inverse_iteration(m, cfg)
    }
}

/// Reference eigenpair from a full Jacobi decomposition.
pub fn dense_smallest_eigenpair(m: &SymmetricMatrix) -> Eigenpair {
    let eig = jacobi_eigen(&m.to_dense());
    let mut vector = eig.vectors[0].clone();
    orient(&mut vector);
    let value = eig.values[0];
    Eigenpair {
        residual: residual(m, value, &vector),
        value,
        vector,
        iterations: eig.sweeps,
        inner_iterations: 0,
        method: SolveMethod::DenseJacobi,
    }
}

/// Inverse power iteration from the normalized all-ones vector.
///
/// Each step solves `(M - sigma I) y = x` by Jacobi-preconditioned
/// conjugate gradients. While the iterate is strictly positive, `sigma` is
/// `cfg.shift_fraction` times the Collatz–Wielandt bound
/// `min_v (M x)_v / x_v`, which never exceeds the smallest eigenvalue of an
/// irreducible M-matrix, so the shifted system stays positive definite.
pub fn inverse_iteration(m: &SymmetricMatrix, cfg: &SolverConfig) -> Result<Eigenpair> {
    cfg.validate()?;
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "empty matrix has no eigenpair".into(),
        ));
    }
    let diag = m.diagonal();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut mx = m.mul(&x);
    let mut mu = dot(&x, &mx);
    let mut inner_total = 0;
    let mut last_residual = f64::INFINITY;

    for iteration in 1..=cfg.max_outer {
        let shift = if cfg.shift_fraction > 0.0 {
            collatz_wielandt_lower(&x, &mx).map_or(0.0, |lb| cfg.shift_fraction * lb.max(0.0))
        } else {
            0.0
        };
        // x / (mu - shift) solves the shifted system exactly once x is an
        // eigenvector, so it is the natural warm start.
        let guess: Vec<f64> = x.iter().map(|&xi| xi / (mu - shift)).collect();
        let (y, inner) = conjugate_gradient(m, &diag, shift, &x, guess, cfg)?;
        inner_total += inner;
        let y_norm = norm(&y);
        if !(y_norm > 0.0 && y_norm.is_finite()) {
            return Err(Error::NotPositiveDefinite);
        }
        x = y.into_iter().map(|v| v / y_norm).collect();
        orient(&mut x);
        m.mul_into(&x, &mut mx);
        let mu_next = dot(&x, &mx);
        last_residual = mx
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - mu_next * b).powi(2))
            .sum::<f64>()
            .sqrt();
        let change = (mu_next - mu).abs();
        mu = mu_next;
        if mu <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        if change <= cfg.eig_tol * mu && last_residual <= cfg.residual_tol * mu {
            return Ok(Eigenpair {
                value: mu,
                vector: x,
                residual: last_residual,
                iterations: iteration,
                inner_iterations: inner_total,
                method: SolveMethod::InverseIteration,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: cfg.max_outer,
        residual: last_residual,
    })
}

fn collatz_wielandt_lower(x: &[f64], mx: &[f64]) -> Option<f64> {
    let mut lb = f64::INFINITY;
    for (&xi, &yi) in x.iter().zip(mx) {
        if !(xi > 0.0) {
            return None;
        }
        lb = lb.min(yi / xi);
    }
    Some(lb)
}

/// Solves `(M - shift I) y = b` starting from `y`. Returns the iterate and
/// the number of steps taken; running out of steps is not an error, since
/// the outer loop judges the eigenvector residual directly.
fn conjugate_gradient(
    m: &SymmetricMatrix,
    diag: &[f64],
    shift: f64,
    b: &[f64],
    mut y: Vec<f64>,
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, usize)> {
    let n = b.len();
    let apply = |v: &[f64], out: &mut [f64]| {
        m.mul_into(v, out);
        for (o, vi) in out.iter_mut().zip(v) {
            *o -= shift * vi;
        }
    };
    let inv_diag: Vec<f64> = diag.iter().map(|d| 1.0 / (d - shift)).collect();
    if inv_diag.iter().any(|d| !(*d > 0.0)) {
        return Err(Error::NotPositiveDefinite);
    }

    let mut ay = vec![0.0; n];
    apply(&y, &mut ay);
    let mut r: Vec<f64> = b.iter().zip(&ay).map(|(bi, ai)| bi - ai).collect();
    let target = cfg.cg_tol * norm(b);
    if norm(&r) <= target {
        return Ok((y, 0));
    }
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];

    for step in 1..=cfg.max_inner {
        apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let alpha = rz / pap;
        for k in 0..n {
            y[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        if norm(&r) <= target {
            return Ok((y, step));
        }
        for k in 0..n {
            z[k] = r[k] * inv_diag[k];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
    }
    debug!(
        "conjugate gradient stopped at the {} step cap (relative residual {:e})",
        cfg.max_inner,
        norm(&r) / norm(b)
    );
    Ok((y, cfg.max_inner))
}

/// Flips `v` so its entry sum is nonnegative.
fn orient(v: &mut [f64]) {
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn residual(m: &SymmetricMatrix, value: f64, v: &[f64]) -> f64 {
    m.mul(v)
        .iter()
        .zip(v)
        .map(|(a, b)| (a - value * b).powi(2))
        .sum::<f64>()
        .sqrt()
}
