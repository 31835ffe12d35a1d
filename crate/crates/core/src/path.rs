//! Path construction by greedy descent on a landscape.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use log::debug;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::spectral::{compute_landscape, LaplacianKind, SolverConfig, SpectralLandscape};

/// Which pinning produced a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Landscape pinned at the target, descent from the source.
    PinnedAtTarget,
    /// Landscape pinned at the source, descent from the target, reversed.
    PinnedAtSourceReversed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathResult {
    /// `source, ..., target`.
    pub vertices: Vec<VertexId>,
    pub direction: Direction,
    pub kind: LaplacianKind,
    /// Both pinnings were tried and the shorter path kept.
    pub symmetrized: bool,
    /// Per step, `(runner_up - chosen) / runner_up` over the candidate keys;
    /// `None` when the current vertex had a single neighbor.
    pub decided_margins: Vec<Option<f64>>,
    /// Largest relative eigen-residual `||M v - mu v|| / mu` of the landscape used.
    pub landscape_residual: f64,
}

impl PathResult {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("paths are nonempty")
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.decided_margins
            .iter()
            .flatten()
            .copied()
            .reduce(f64::min)
    }

    /// Checks endpoints, adjacency, simplicity and the length bound.
    pub fn validate(&self, g: &Graph, source: VertexId, target: VertexId) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        if self.source() != source || self.target() != target {
            return Err(Error::InvalidPath(format!(
                "path runs {}..{} instead of {source}..{target}",
                self.source(),
                self.target()
            )));
        }
        if self.length() > g.n().saturating_sub(1) {
            return Err(Error::InvalidPath(format!(
                "length {} exceeds n - 1",
                self.length()
            )));
        }
        let mut seen = vec![false; g.n()];
        for v in &self.vertices {
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(Error::InvalidPath(format!("vertex {v} repeats")));
            }
        }
        for w in self.vertices.windows(2) {
            if !g.has_edge(w[0].index(), w[1].index()) {
                return Err(Error::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    fn reversed(mut self) -> Self {
        self.vertices.reverse();
        self.decided_margins.reverse();
        self.direction = Direction::PinnedAtSourceReversed;
        self
    }
}

/// The value the descent minimizes at `v`.
#[inline]
pub fn descent_key(landscape: &SpectralLandscape, v: VertexId) -> f64 {
    landscape.key(v.index())
}

fn relative_noise(landscape: &SpectralLandscape) -> f64 {
    landscape
        .components
        .iter()
        .map(|c| c.residual / c.mu)
        .fold(0.0, f64::max)
}

/// Relative gap below which two keys are treated as equal. Symmetric graphs
/// have exactly tied keys that rounding splits apart; without this, rescaling
/// a landscape could change which of them wins.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Walks from `source` to the pinned vertex, always stepping to the
/// neighbor of smallest key (ties, up to [`TIE_TOLERANCE`], to the smaller
/// index). A step that does
/// not strictly decrease the key, or more than `n - 1` steps, is an
/// [`Error::DescentStuck`].
pub fn greedy_descent(
    g: &Graph,
    landscape: &SpectralLandscape,
    source: VertexId,
) -> Result<PathResult> {
    let source = g.vertex(source.index())?;
    if landscape.n() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "landscape has {} vertices, graph has {}",
            landscape.n(),
            g.n()
        )));
    }
    let target = landscape.pinned.index();
    let noise = relative_noise(landscape);
    let mut vertices = vec![source];
    let mut margins = Vec::new();
    let mut current = source.index();
    while current != target {
        if vertices.len() > g.n() - 1 {
            return Err(Error::DescentStuck {
                vertex: current,
                steps: vertices.len() - 1,
            });
        }
        let here = landscape.key(current);
        let lowest = g
            .neighbors(current)
            .iter()
            .map(|&w| landscape.key(w))
            .fold(f64::INFINITY, f64::min);
        if !(lowest < here) {
            return Err(Error::DescentStuck {
                vertex: current,
                steps: vertices.len() - 1,
            });
        }
        // Neighbors within TIE_TOLERANCE of the lowest key count as tied and
        // go to the smallest index.
        let limit = (lowest * (1.0 + TIE_TOLERANCE)).min(here);
        let next = g
            .neighbors(current)
            .iter()
            .copied()
            .filter(|&w| landscape.key(w) <= limit && landscape.key(w) < here)
            .min()
            .expect("the lowest neighbor qualifies");
        let next_key = landscape.key(next);
        let runner_up = g
            .neighbors(current)
            .iter()
            .filter(|&&w| w != next)
            .map(|&w| landscape.key(w))
            .fold(f64::INFINITY, f64::min);
        let margin = runner_up
            .is_finite()
            .then(|| (runner_up - next_key).max(0.0) / runner_up);
        if let Some(m) = margin {
            if m < 10.0 * noise {
                debug!(
                    "step {current} -> {next} decided by relative margin {m:e}, within 10x of solver noise {noise:e}"
                );
            }
        }
        margins.push(margin);
        vertices.push(VertexId(next));
        current = next;
    }
    Ok(PathResult {
        vertices,
        direction: Direction::PinnedAtTarget,
        kind: landscape.kind,
        symmetrized: false,
        decided_margins: margins,
        landscape_residual: noise,
    })
}

type Slot = Arc<OnceLock<Result<Arc<SpectralLandscape>>>>;

/// Landscapes keyed by `(pinned vertex, kind)`, each computed at most once
/// even under concurrent requests.
pub struct LandscapeCache<'g> {
    graph: &'g Graph,
    cfg: SolverConfig,
    slots: Mutex<HashMap<(usize, LaplacianKind), Slot>>,
    solves: AtomicUsize,
}

impl<'g> LandscapeCache<'g> {
    /// Fails unless `graph` is connected and `cfg` is valid.
    pub fn new(graph: &'g Graph, cfg: SolverConfig) -> Result<Self> {
        cfg.validate()?;
        graph.require_connected()?;
        Ok(LandscapeCache {
            graph,
            cfg,
            slots: Mutex::new(HashMap::new()),
            solves: AtomicUsize::new(0),
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Number of landscapes actually computed so far.
    pub fn solves(&self) -> usize {
        self.solves.load(Ordering::SeqCst)
    }

    pub fn get(&self, pinned: VertexId, kind: LaplacianKind) -> Result<Arc<SpectralLandscape>> {
        let pinned = self.graph.vertex(pinned.index())?;
        let slot = {
            let mut slots = self.slots.lock().expect("landscape cache poisoned");
            Arc::clone(slots.entry((pinned.index(), kind)).or_default())
        };
        slot.get_or_init(|| {
            self.solves.fetch_add(1, Ordering::SeqCst);
            compute_landscape(self.graph, pinned, kind, &self.cfg).map(Arc::new)
        })
        .clone()
    }

    /// Cached landscapes in `(pinned, kind)` order.
    pub fn computed(&self) -> Vec<Arc<SpectralLandscape>> {
        let slots = self.slots.lock().expect("landscape cache poisoned");
        let mut keys: Vec<_> = slots.keys().copied().collect();
        keys.sort();
        keys.iter()
            .filter_map(|k| slots[k].get().and_then(|r| r.as_ref().ok()).cloned())
            .collect()
    }

    /// Path from `source` to `target`; see [`spectral_path`].
    pub fn path(
        &self,
        source: VertexId,
        target: VertexId,
        kind: LaplacianKind,
        symmetrize: bool,
    ) -> Result<PathResult> {
        let g = self.graph;
        let source = g.vertex(source.index())?;
        let target = g.vertex(target.index())?;
        if source == target {
            return Ok(PathResult {
                vertices: vec![source],
                direction: Direction::PinnedAtTarget,
                kind,
                symmetrized: symmetrize,
                decided_margins: Vec::new(),
                landscape_residual: 0.0,
            });
        }
        let forward = greedy_descent(g, &*self.get(target, kind)?, source)?;
        if !symmetrize {
            return Ok(forward);
        }
        let backward = greedy_descent(g, &*self.get(source, kind)?, target)?.reversed();
        let mut best = if backward.length() < forward.length() {
            backward
        } else {
            forward
        };
        best.symmetrized = true;
        Ok(best)
    }
}

/// Pins the target and descends from the source. With `symmetrize`, also
/// pins the source, descends from the target, and keeps the shorter of the
/// two (the forward path on ties). `source == target` gives the one-vertex
/// path of length 0.
pub fn spectral_path(
    g: &Graph,
    source: VertexId,
    target: VertexId,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
) -> Result<PathResult> {
    g.vertex(source.index())?;
    g.vertex(target.index())?;
    LandscapeCache::new(g, cfg.clone())?.path(source, target, kind, symmetrize)
}
