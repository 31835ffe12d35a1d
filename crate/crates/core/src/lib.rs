//! Shortest paths from the pinned ground state of a graph Laplacian.
//!
//! For a connected graph and a target vertex `i`, the smallest eigenvector
//! of the Laplacian with row and column `i` removed is strictly positive
//! and vanishes only at `i` once extended by zero. Walking from any source
//! to the neighbor where this landscape is smallest always reaches `i`, and
//! on trees it follows the shortest path.
//!
//! * [`graph`]: graphs, parsers, generators and the BFS ground truth.
//! * [`spectral`]: pinned Laplacian assembly and the eigensolvers.
//! * [`path`]: greedy descent and the landscape cache.
//! * [`bench`]: comparisons against BFS with reproducible reports.

// `!(x > 0.0)` is used on purpose so that NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod graph;
pub mod path;
pub mod spectral;

pub use error::{Error, ErrorCategory, Result};
pub use graph::{bfs_distances, Graph, VertexId};
pub use path::{descent_key, greedy_descent, spectral_path, Direction, LandscapeCache, PathResult};
pub use spectral::{compute_landscape, LaplacianKind, SolverConfig, SpectralLandscape};
