use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::spectral::{
    assemble_pinned_laplacian, smallest_eigenpair, LaplacianKind, SolveMethod, SolverConfig,
};

/// Solver metadata for one component of `G - i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSolve {
    pub size: usize,
    pub mu: f64,
    pub residual: f64,
    pub iterations: usize,
    pub inner_iterations: usize,
    pub method: SolveMethod,
}

/// The pinned ground state: `phi(i) = 0` and `phi > 0` everywhere else.
#[derive(Debug, Clone)]
pub struct SpectralLandscape {
    pub pinned: VertexId,
    pub kind: LaplacianKind,
    /// Eigenvector of the chosen operator, unit length on each component.
    pub phi: Vec<f64>,
    keys: Vec<f64>,
    /// Component of `G - i` per vertex; `None` at the pinned vertex.
    pub component_of: Vec<Option<usize>>,
    pub components: Vec<ComponentSolve>,
    /// Smallest slack `deg(v) key(v) - sum of neighbor keys` over `v != i`.
    pub min_certificate_margin: f64,
    pub assembly_time: Duration,
    pub solve_time: Duration,
}

impl SpectralLandscape {
    /// Quantity minimized by the descent: `phi(v)`, or `phi(v) / sqrt(deg v)`
    /// for the symmetric normalized Laplacian. Zero at the pinned vertex.
    #[inline]
    pub fn key(&self, v: usize) -> f64 {
        self.keys[v]
    }

    pub fn keys(&self) -> &[f64] {
        &self.keys
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Eigenvalue of the component containing `v`.
    pub fn mu_of(&self, v: usize) -> Option<f64> {
        self.component_of[v].map(|c| self.components[c].mu)
    }

    /// Copy with `phi` (and so every key) multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0, "scale factor must be positive");
        let mut out = self.clone();
        out.phi.iter_mut().for_each(|p| *p *= factor);
        out.keys.iter_mut().for_each(|k| *k *= factor);
        out.min_certificate_margin *= factor;
        out
    }

    /// CSV with header `vertex,phi,component,mu`. The pinned vertex has empty
    /// component and mu fields. `labels` maps dense indices to the labels
    /// written in the `vertex` column.
    pub fn to_csv(&self, labels: Option<&[u64]>) -> String {
        let mut out = String::from("vertex,phi,component,mu\n");
        for v in 0..self.n() {
            let label = labels.map_or(v as u64, |l| l[v]);
            match self.component_of[v] {
                Some(c) => writeln!(out, "{label},{},{c},{}", self.phi[v], self.components[c].mu),
                None => writeln!(out, "{label},{},,", self.phi[v]),
            }
            .unwrap();
        }
        out
    }
}

/// Computes the landscape pinned at `pinned`.
///
/// Each component of `G - i` is solved on its own and normalized to unit
/// length. The eigenvector is flipped so its largest-magnitude entry is
/// positive and must then be strictly positive; any entry `<= 0` is
/// reported as [`Error::Positivity`] rather than clamped. Finally every
/// `v != i` must satisfy the descent certificate
/// `sum_{w ~ v} key(w) < deg(v) key(v)` by more than
/// `cfg.certificate_margin`, otherwise [`Error::Certificate`].
pub fn compute_landscape(
    g: &Graph,
    pinned: VertexId,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<SpectralLandscape> {
    cfg.validate()?;
    let started = Instant::now();
    let lap = assemble_pinned_laplacian(g, pinned, kind)?;
    let assembly_time = started.elapsed();

    let started = Instant::now();
    let n = g.n();
    let i = lap.pinned.index();
    let mut phi = vec![0.0; n];
    let mut components = Vec::with_capacity(lap.blocks.len());
    for block in &lap.blocks {
        let pair = smallest_eigenpair(&block.matrix, cfg)?;
        let mut vec = pair.vector;
        let (argmax, _) = vec
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("nonempty block");
        if vec[argmax] < 0.0 {
            vec.iter_mut().for_each(|x| *x = -*x);
        }
        if let Some((k, &value)) = vec.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
            return Err(Error::Positivity {
                vertex: block.vertices[k],
                value,
            });
        }
        if kind == LaplacianKind::RandomWalk {
            // Right eigenvector of Id - D^-1 A is D^-1/2 times the symmetric one.
            for (x, &v) in vec.iter_mut().zip(&block.vertices) {
                *x /= (g.degree(v) as f64).sqrt();
            }
            let norm = vec.iter().map(|x| x * x).sum::<f64>().sqrt();
            vec.iter_mut().for_each(|x| *x /= norm);
        }
        for (&v, &x) in block.vertices.iter().zip(&vec) {
            phi[v] = x;
        }
        components.push(ComponentSolve {
            size: block.vertices.len(),
            mu: pair.value,
            residual: pair.residual,
            iterations: pair.iterations,
            inner_iterations: pair.inner_iterations,
            method: pair.method,
        });
    }
    phi[i] = 0.0;

    let keys: Vec<f64> = match kind {
        LaplacianKind::Combinatorial | LaplacianKind::RandomWalk => phi.clone(),
        LaplacianKind::SymmetricNormalized => phi
            .iter()
            .enumerate()
            .map(|(v, &p)| {
                if v == i {
                    0.0
                } else {
                    p / (g.degree(v) as f64).sqrt()
                }
            })
            .collect(),
    };

    let mut min_margin = f64::INFINITY;
    for v in (0..n).filter(|&v| v != i) {
        let neighbor_sum: f64 = g.neighbors(v).iter().map(|&w| keys[w]).sum();
        let margin = g.degree(v) as f64 * keys[v] - neighbor_sum;
        if !(margin > cfg.certificate_margin) {
            return Err(Error::Certificate { vertex: v, margin });
        }
        min_margin = min_margin.min(margin);
    }

    Ok(SpectralLandscape {
        pinned: lap.pinned,
        kind,
        phi,
        keys,
        component_of: lap.labeling.component_of,
        components,
        min_certificate_margin: min_margin,
        assembly_time,
        solve_time: started.elapsed(),
    })
}
