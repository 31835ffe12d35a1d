//! Spectral paths against BFS ground truth.
//!
//! Reports are plain data with a stable field order. Everything in them is a
//! function of the graph, the seeds and the solver configuration, so two runs
//! with the same inputs serialize to the same bytes regardless of how many
//! worker threads were used. Wall-clock timings break that and are only
//! included on request ([`BenchOptions::record_timings`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{
    bfs_distances, erdos_renyi, random_geometric, random_tree, seeded_rng, Graph, VertexId,
};
use crate::path::{Direction, LandscapeCache, PathResult};
use crate::spectral::{LaplacianKind, SolveMethod, SolverConfig};

/// Where a benchmarked graph came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphDescriptor {
    pub family: String,
    pub params: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file_sha256: Option<String>,
    pub n: usize,
    pub m: usize,
    /// Disconnected samples thrown away before this one was accepted.
    pub discarded_samples: usize,
}

impl GraphDescriptor {
    pub fn new(family: impl Into<String>, g: &Graph) -> Self {
        GraphDescriptor {
            family: family.into(),
            params: BTreeMap::new(),
            seed: None,
            file_sha256: None,
            n: g.n(),
            m: g.m(),
            discarded_samples: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_file_hash(mut self, sha256_hex: String) -> Self {
        self.file_sha256 = Some(sha256_hex);
        self
    }
}

/// Which pairs to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum PairSelection {
    All,
    Random { k: usize, seed: u64 },
}

/// The pairs that were actually evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum PairPolicy {
    /// Ordered pairs without symmetrization, unordered pairs with it.
    All,
    Random {
        requested: usize,
        seed: u64,
        /// `requested` exceeded the number of pairs, so all pairs were used.
        clamped: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub source: usize,
    pub target: usize,
    pub spectral_length: usize,
    pub exact_length: usize,
    pub excess: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverStats {
    pub landscapes: usize,
    pub components: usize,
    pub dense_components: usize,
    pub iterative_components: usize,
    pub total_outer_iterations: usize,
    pub max_outer_iterations: usize,
    pub total_inner_iterations: usize,
    /// Largest `||M v - mu v|| / mu` over all components.
    pub max_relative_residual: f64,
    pub min_certificate_margin: f64,
}

/// Seconds per phase. Assembly and eigensolve are summed over landscapes
/// (so they exceed wall time under parallelism); the rest are wall time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseTimings {
    pub assembly_secs: f64,
    pub eigensolve_secs: f64,
    pub landscape_wall_secs: f64,
    pub descent_wall_secs: f64,
    pub total_wall_secs: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchOptions {
    /// Include every pair outcome, not only the suboptimal ones.
    pub record_pairs: bool,
    /// Include wall-clock timings (makes the report run-dependent).
    pub record_timings: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub graph: GraphDescriptor,
    pub kind: LaplacianKind,
    pub symmetrize: bool,
    pub pair_policy: PairPolicy,
    pub config: SolverConfig,
    pub pairs_evaluated: usize,
    pub optimal_pairs: usize,
    pub fraction_optimal: f64,
    /// Mean of `spectral - exact` in steps.
    pub mean_excess: f64,
    pub max_excess: usize,
    /// First pair in evaluation order attaining `max_excess`.
    pub max_excess_witness: Option<[usize; 2]>,
    /// Mean of `spectral / exact`.
    pub mean_ratio: f64,
    pub max_ratio: f64,
    /// `excess_histogram[e]` counts pairs with excess `e`.
    pub excess_histogram: Vec<usize>,
    pub suboptimal_pairs: Vec<PairOutcome>,
    pub solver: SolverStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairOutcome>>,
}

impl BenchmarkReport {
    pub fn with_descriptor(mut self, d: GraphDescriptor) -> Self {
        self.graph = d;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Result of evaluating a list of pairs, with paths kept for cross-run checks.
pub struct Evaluation {
    pub pairs: Vec<(usize, usize)>,
    pub outcomes: Vec<PairOutcome>,
    pub paths: Vec<PathResult>,
    pub solver: SolverStats,
    pub timings: PhaseTimings,
}

/// Evaluates `pairs` in parallel on the current rayon pool. Results come
/// back in input order; every path is checked for validity and against BFS.
pub fn evaluate_pairs(
    cache: &LandscapeCache<'_>,
    pairs: &[(usize, usize)],
    kind: LaplacianKind,
    symmetrize: bool,
) -> Result<Evaluation> {
    let g = cache.graph();
    let started = Instant::now();

    let mut pins: Vec<usize> = pairs
        .iter()
        .flat_map(|&(s, t)| if symmetrize { vec![s, t] } else { vec![t] })
        .collect();
    pins.sort_unstable();
    pins.dedup();
    let landscapes: Vec<_> = pins
        .par_iter()
        .map(|&p| cache.get(VertexId(p), kind))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_>>()?;
    let landscape_wall = started.elapsed();

    let mut sources: Vec<usize> = pairs.iter().map(|&(s, _)| s).collect();
    sources.sort_unstable();
    sources.dedup();
    let distances: HashMap<usize, Vec<Option<u32>>> = sources
        .par_iter()
        .map(|&s| (s, bfs_distances(g, VertexId(s))))
        .collect();

    let descent_started = Instant::now();
    let results: Vec<Result<(PairOutcome, PathResult)>> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let (source, target) = (VertexId(s), VertexId(t));
            let path = cache.path(source, target, kind, symmetrize)?;
            path.validate(g, source, target)?;
            let exact = distances[&s][t].expect("connected graph") as usize;
            if path.length() < exact {
                return Err(Error::InvalidPath(format!(
                    "path {s}->{t} of length {} beats BFS distance {exact}",
                    path.length()
                )));
            }
            let outcome = PairOutcome {
                source: s,
                target: t,
                spectral_length: path.length(),
                exact_length: exact,
                excess: path.length() - exact,
                direction: path.direction,
            };
            Ok((outcome, path))
        })
        .collect();
    let descent_wall = descent_started.elapsed();
    let (outcomes, paths) = results
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();

    let mut solver = SolverStats {
        landscapes: landscapes.len(),
        components: 0,
        dense_components: 0,
        iterative_components: 0,
        total_outer_iterations: 0,
        max_outer_iterations: 0,
        total_inner_iterations: 0,
        max_relative_residual: 0.0,
        min_certificate_margin: f64::INFINITY,
    };
    let (mut assembly, mut eigensolve) = (0.0, 0.0);
    for l in &landscapes {
        assembly += l.assembly_time.as_secs_f64();
        eigensolve += l.solve_time.as_secs_f64();
        solver.min_certificate_margin = solver.min_certificate_margin.min(l.min_certificate_margin);
        for c in &l.components {
            solver.components += 1;
            match c.method {
                SolveMethod::DenseJacobi => solver.dense_components += 1,
                SolveMethod::InverseIteration => {
                    solver.iterative_components += 1;
                    solver.total_outer_iterations += c.iterations;
                    solver.max_outer_iterations = solver.max_outer_iterations.max(c.iterations);
                    solver.total_inner_iterations += c.inner_iterations;
                }
            }
            solver.max_relative_residual = solver.max_relative_residual.max(c.residual / c.mu);
        }
    }
    if !solver.min_certificate_margin.is_finite() {
        // Only single-vertex landscapes (no certificate to check).
        solver.min_certificate_margin = 0.0;
    }

    Ok(Evaluation {
        pairs: pairs.to_vec(),
        outcomes,
        paths,
        solver,
        timings: PhaseTimings {
            assembly_secs: assembly,
            eigensolve_secs: eigensolve,
            landscape_wall_secs: landscape_wall.as_secs_f64(),
            descent_wall_secs: descent_wall.as_secs_f64(),
            total_wall_secs: started.elapsed().as_secs_f64(),
        },
    })
}

/// All pairs: ordered without symmetrization, unordered (`s < t`) with it,
/// since the symmetrized result does not depend on direction.
pub fn all_pairs(n: usize, symmetrize: bool) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s != t && (!symmetrize || s < t) {
                pairs.push((s, t));
            }
        }
    }
    pairs
}

/// `k` distinct unordered pairs drawn uniformly with `seed`, in lexicographic
/// order. Without symmetrization each pair gets a random orientation. Returns
/// `None` when `k` is at least the number of unordered pairs.
pub fn sample_pairs(
    n: usize,
    k: usize,
    seed: u64,
    symmetrize: bool,
) -> Option<Vec<(usize, usize)>> {
    let total = n * n.saturating_sub(1) / 2;
    if k >= total {
        return None;
    }
    let mut rng = seeded_rng(seed);
    let mut idx = sample(&mut rng, total, k).into_vec();
    idx.sort_unstable();
    let mut pairs = Vec::with_capacity(k);
    let (mut u, mut row_start) = (0usize, 0usize);
    for i in idx {
        // Row u holds the n - 1 - u pairs (u, u+1..n).
        while i >= row_start + (n - 1 - u) {
            row_start += n - 1 - u;
            u += 1;
        }
        let v = u + 1 + (i - row_start);
        pairs.push((u, v));
    }
    if !symmetrize {
        for p in &mut pairs {
            if rng.gen_bool(0.5) {
                *p = (p.1, p.0);
            }
        }
    }
    Some(pairs)
}

fn build_report(
    g: &Graph,
    eval: &Evaluation,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
    policy: PairPolicy,
    opts: &BenchOptions,
) -> BenchmarkReport {
    let count = eval.outcomes.len();
    let optimal = eval.outcomes.iter().filter(|o| o.excess == 0).count();
    let excess_sum: usize = eval.outcomes.iter().map(|o| o.excess).sum();
    let max_excess = eval.outcomes.iter().map(|o| o.excess).max().unwrap_or(0);
    let witness = eval
        .outcomes
        .iter()
        .find(|o| o.excess == max_excess && count > 0)
        .map(|o| [o.source, o.target]);
    let ratios: Vec<f64> = eval
        .outcomes
        .iter()
        .map(|o| o.spectral_length as f64 / o.exact_length as f64)
        .collect();
    let mut histogram = vec![0; max_excess + 1];
    for o in &eval.outcomes {
        histogram[o.excess] += 1;
    }
    let per_count = |x: f64| if count == 0 { 0.0 } else { x / count as f64 };
    BenchmarkReport {
        graph: GraphDescriptor::new("graph", g),
        kind,
        symmetrize,
        pair_policy: policy,
        config: cfg.clone(),
        pairs_evaluated: count,
        optimal_pairs: optimal,
        fraction_optimal: if count == 0 {
            1.0
        } else {
            per_count(optimal as f64)
        },
        mean_excess: per_count(excess_sum as f64),
        max_excess,
        max_excess_witness: witness,
        mean_ratio: if count == 0 {
            1.0
        } else {
            per_count(ratios.iter().sum())
        },
        max_ratio: ratios.iter().copied().fold(1.0, f64::max),
        excess_histogram: histogram,
        suboptimal_pairs: eval
            .outcomes
            .iter()
            .filter(|o| o.excess > 0)
            .cloned()
            .collect(),
        solver: eval.solver.clone(),
        timings: opts.record_timings.then(|| eval.timings.clone()),
        pairs: opts.record_pairs.then(|| eval.outcomes.clone()),
    }
}

fn resolve_pairs(
    n: usize,
    selection: PairSelection,
    symmetrize: bool,
) -> (Vec<(usize, usize)>, PairPolicy) {
    match selection {
        PairSelection::All => (all_pairs(n, symmetrize), PairPolicy::All),
        PairSelection::Random { k, seed } => match sample_pairs(n, k, seed, symmetrize) {
            Some(p) => (
                p,
                PairPolicy::Random {
                    requested: k,
                    seed,
                    clamped: false,
                },
            ),
            None => (
                all_pairs(n, symmetrize),
                PairPolicy::Random {
                    requested: k,
                    seed,
                    clamped: true,
                },
            ),
        },
    }
}

/// Evaluates the selected pairs of a connected graph and aggregates.
pub fn run_pairs(
    g: &Graph,
    selection: PairSelection,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
    opts: &BenchOptions,
) -> Result<BenchmarkReport> {
    Ok(run_pairs_with_paths(g, selection, kind, cfg, symmetrize, opts)?.0)
}

fn run_pairs_with_paths(
    g: &Graph,
    selection: PairSelection,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
    opts: &BenchOptions,
) -> Result<(BenchmarkReport, Evaluation)> {
    if let PairSelection::Random { k: 0, .. } = selection {
        return Err(Error::InvalidParameter(
            "pair count must be at least 1".into(),
        ));
    }
    let cache = LandscapeCache::new(g, cfg.clone())?;
    let (pairs, policy) = resolve_pairs(g.n(), selection, symmetrize);
    let eval = evaluate_pairs(&cache, &pairs, kind, symmetrize)?;
    let report = build_report(g, &eval, kind, cfg, symmetrize, policy, opts);
    Ok((report, eval))
}

pub fn run_all_pairs(
    g: &Graph,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
) -> Result<BenchmarkReport> {
    run_pairs(
        g,
        PairSelection::All,
        kind,
        cfg,
        symmetrize,
        &BenchOptions::default(),
    )
}

pub fn run_random_pairs(
    g: &Graph,
    k: usize,
    pair_seed: u64,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
) -> Result<BenchmarkReport> {
    run_pairs(
        g,
        PairSelection::Random { k, seed: pair_seed },
        kind,
        cfg,
        symmetrize,
        &BenchOptions::default(),
    )
}

/// A random graph family at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    Geometric {
        n: usize,
        width: f64,
        height: f64,
        radius: f64,
    },
    Tree {
        n: usize,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ErdosRenyi { .. } => "erdos-renyi",
            Family::Geometric { .. } => "geometric",
            Family::Tree { .. } => "tree",
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            Family::ErdosRenyi { n, p } => erdos_renyi(n, p, seed),
            Family::Geometric {
                n,
                width,
                height,
                radius,
            } => random_geometric(n, width, height, radius, seed).map(|(g, _)| g),
            Family::Tree { n } => random_tree(n, seed),
        }
    }

    pub fn descriptor(&self, g: &Graph, seed: u64) -> GraphDescriptor {
        let d = GraphDescriptor::new(self.name(), g).with_seed(seed);
        match *self {
            Family::ErdosRenyi { n, p } => d.with_param("n", n).with_param("p", p),
            Family::Geometric {
                n,
                width,
                height,
                radius,
            } => d
                .with_param("n", n)
                .with_param("width", width)
                .with_param("height", height)
                .with_param("radius", radius),
            Family::Tree { n } => d.with_param("n", n),
        }
    }

    /// First connected sample among seeds `sub_seed(base, [point, rep, attempt])`.
    pub fn sample_connected(
        &self,
        base_seed: u64,
        point: usize,
        rep: usize,
        max_attempts: usize,
    ) -> Result<(Graph, GraphDescriptor)> {
        for attempt in 0..max_attempts {
            let seed = sub_seed(base_seed, &[point as u64, rep as u64, attempt as u64]);
            let g = self.generate(seed)?;
            if g.is_connected() {
                let mut d = self.descriptor(&g, seed);
                d.discarded_samples = attempt;
                return Ok((g, d));
            }
        }
        Err(Error::NoConnectedSample {
            attempts: max_attempts,
        })
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic child seed for a position in a sweep.
pub fn sub_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(base), |h, &x| mix(h ^ mix(x)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub points: Vec<Family>,
    pub repetitions: usize,
    pub seed: u64,
    pub pairs: PairSelection,
    /// Attempts per instance before giving up on a connected sample.
    pub max_attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSummary {
    pub family: Family,
    pub instances: usize,
    /// Instances with `fraction_optimal == 1`.
    pub perfect_instances: usize,
    pub mean_fraction_optimal: f64,
    pub mean_mean_excess: f64,
    pub max_excess: usize,
    pub discarded_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub kind: LaplacianKind,
    pub symmetrize: bool,
    pub summary: Vec<PointSummary>,
    pub reports: Vec<BenchmarkReport>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// One report per `(point, repetition)`, instances drawn in order.
pub fn run_family_sweep(
    spec: &SweepSpec,
    kind: LaplacianKind,
    cfg: &SolverConfig,
    symmetrize: bool,
    opts: &BenchOptions,
) -> Result<SweepReport> {
    if spec.repetitions == 0 || spec.max_attempts == 0 {
        return Err(Error::InvalidParameter(
            "repetitions and max_attempts must be at least 1".into(),
        ));
    }
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for (point, family) in spec.points.iter().enumerate() {
        let mut point_reports = Vec::with_capacity(spec.repetitions);
        for rep in 0..spec.repetitions {
            let (g, descriptor) =
                family.sample_connected(spec.seed, point, rep, spec.max_attempts)?;
            let report =
                run_pairs(&g, spec.pairs, kind, cfg, symmetrize, opts)?.with_descriptor(descriptor);
            point_reports.push(report);
        }
        let count = point_reports.len() as f64;
        summary.push(PointSummary {
            family: family.clone(),
            instances: point_reports.len(),
            perfect_instances: point_reports
                .iter()
                .filter(|r| r.fraction_optimal == 1.0)
                .count(),
            mean_fraction_optimal: point_reports
                .iter()
                .map(|r| r.fraction_optimal)
                .sum::<f64>()
                / count,
            mean_mean_excess: point_reports.iter().map(|r| r.mean_excess).sum::<f64>() / count,
            max_excess: point_reports
                .iter()
                .map(|r| r.max_excess)
                .max()
                .unwrap_or(0),
            discarded_samples: point_reports
                .iter()
                .map(|r| r.graph.discarded_samples)
                .sum(),
        });
        reports.extend(point_reports);
    }
    Ok(SweepReport {
        spec: spec.clone(),
        kind,
        symmetrize,
        summary,
        reports,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KindDisagreement {
    pub kind: LaplacianKind,
    /// Pairs whose path differs from the combinatorial one.
    pub differing_paths: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KindComparison {
    pub reports: Vec<BenchmarkReport>,
    pub disagreements: Vec<KindDisagreement>,
}

impl KindComparison {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Runs the same pairs under all three Laplacians.
pub fn compare_kinds(
    g: &Graph,
    cfg: &SolverConfig,
    symmetrize: bool,
    selection: PairSelection,
    opts: &BenchOptions,
) -> Result<KindComparison> {
    let mut reports = Vec::new();
    let mut paths: Vec<Vec<PathResult>> = Vec::new();
    for kind in LaplacianKind::ALL {
        let (report, eval) = run_pairs_with_paths(g, selection, kind, cfg, symmetrize, opts)?;
        reports.push(report);
        paths.push(eval.paths);
    }
    let disagreements = LaplacianKind::ALL
        .iter()
        .zip(&paths)
        .map(|(&kind, ps)| KindDisagreement {
            kind,
            differing_paths: ps
                .iter()
                .zip(&paths[0])
                .filter(|(a, b)| a.vertices != b.vertices)
                .count(),
        })
        .collect();
    Ok(KindComparison {
        reports,
        disagreements,
    })
}

/// Fixed-width summary, one row per report.
pub fn format_table(reports: &[BenchmarkReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<14} {:>6} {:>7} {:<15} {:>4} {:>8} {:>10} {:>10} {:>6}",
        "family", "n", "m", "laplacian", "sym", "pairs", "optimal", "mean_exc", "max"
    )
    .unwrap();
    for r in reports {
        writeln!(
            out,
            "{:<14} {:>6} {:>7} {:<15} {:>4} {:>8} {:>10.6} {:>10.6} {:>6}",
            r.graph.family,
            r.graph.n,
            r.graph.m,
            r.kind.as_str(),
            if r.symmetrize { "on" } else { "off" },
            r.pairs_evaluated,
            r.fraction_optimal,
            r.mean_excess,
            r.max_excess
        )
        .unwrap();
    }
    out
}
