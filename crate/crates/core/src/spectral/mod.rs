//! Pinned Laplacians and their ground states.
//!
//! Deleting the row and column of a vertex `i` from a graph Laplacian leaves
//! a symmetric positive definite matrix (for connected graphs) whose smallest
//! eigenvector is strictly positive. That vector, extended by zero at `i`,
//! is the landscape that paths descend on.

pub mod dense;
mod landscape;
mod laplacian;
mod matrix;
mod solver;

pub use landscape::{compute_landscape, ComponentSolve, SpectralLandscape};
pub use laplacian::{
    assemble_pinned_laplacian, dirichlet_energy, normalized_dirichlet_energy, rayleigh_quotient,
    PinnedBlock, PinnedLaplacian,
};
pub use matrix::SymmetricMatrix;
pub use solver::{
    dense_smallest_eigenpair, inverse_iteration, smallest_eigenpair, Eigenpair, SolveMethod,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which graph Laplacian the landscape is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LaplacianKind {
    /// `L = D - A`; descent key `phi(v)`.
    #[serde(rename = "combinatorial")]
    Combinatorial,
    /// `Id - D^-1 A`; descent key `phi(v)`.
    #[serde(rename = "random-walk")]
    RandomWalk,
    /// `Id - D^-1/2 A D^-1/2`; descent key `phi(v) / sqrt(deg v)`.
    #[serde(rename = "sym-normalized")]
    SymmetricNormalized,
}

impl LaplacianKind {
    pub const ALL: [LaplacianKind; 3] = [
        LaplacianKind::Combinatorial,
        LaplacianKind::RandomWalk,
        LaplacianKind::SymmetricNormalized,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LaplacianKind::Combinatorial => "combinatorial",
            LaplacianKind::RandomWalk => "random-walk",
            LaplacianKind::SymmetricNormalized => "sym-normalized",
        }
    }
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LaplacianKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LaplacianKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown Laplacian kind `{s}`")))
    }
}

/// Eigensolver tolerances and caps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Stop once `||M v - mu v|| <= residual_tol * mu` for the unit iterate `v`.
    pub residual_tol: f64,
    /// ... and the Rayleigh quotient changed by at most `eig_tol * mu`.
    pub eig_tol: f64,
    /// Cap on inverse-iteration steps.
    pub max_outer: usize,
    /// Cap on conjugate-gradient steps per linear solve.
    pub max_inner: usize,
    /// Relative residual at which a conjugate-gradient solve stops.
    pub cg_tol: f64,
    /// Blocks of at most this size are solved densely by Jacobi rotations.
    pub dense_threshold: usize,
    /// Fraction of the Collatz–Wielandt lower bound used as the shift in
    /// inverse iteration; `0` gives unshifted iteration.
    pub shift_fraction: f64,
    /// Smallest admissible slack in the descent certificate.
    pub certificate_margin: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_tol: 1e-8,
            eig_tol: 1e-10,
            max_outer: 500,
            max_inner: 10_000,
            cg_tol: 1e-12,
            dense_threshold: 64,
            shift_fraction: 0.9,
            certificate_margin: 1e-10,
        }
    }
}

impl SolverConfig {
    /// Same tolerances, but every block goes through inverse iteration.
    pub fn iterative_only(mut self) -> Self {
        self.dense_threshold = 0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("residual_tol", self.residual_tol),
            ("eig_tol", self.eig_tol),
            ("cg_tol", self.cg_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.max_outer == 0 || self.max_inner == 0 {
            return Err(Error::InvalidParameter(
                "iteration caps must be at least 1".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.shift_fraction) {
            return Err(Error::InvalidParameter(format!(
                "shift_fraction must lie in [0, 1), got {}",
                self.shift_fraction
            )));
        }
        if !(self.certificate_margin >= 0.0) {
            return Err(Error::InvalidParameter(
                "certificate_margin must be >= 0".into(),
            ));
        }
        Ok(())
    }
}
