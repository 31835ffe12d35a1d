//! Simple undirected graphs in compressed adjacency form.
//!
//! Vertices are dense indices `0..n`. Every neighbor list is sorted
//! ascending, which makes iteration order (and therefore tie-breaking in
//! the descent) deterministic.

mod generate;
mod parse;

pub use generate::{
    erdos_renyi, prufer_decode, prufer_encode, random_geometric, random_tree, seeded_rng,
    write_coordinates_csv, Point, SeedRng,
};
pub use parse::{parse_edge_list, parse_labeled_edge_list, write_edge_list, LabeledGraph};

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of a vertex in a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    vertex: u,
                    line: None,
                });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adjacency))
    }

    fn from_adjacency_unchecked(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let g = Graph { offsets, targets };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a simple cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    /// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`,
    /// spokes `k -- k+5`.
    pub fn petersen() -> Self {
        let outer = (0..5).map(|k| (k, (k + 1) % 5));
        let inner = (0..5).map(|k| (5 + k, 5 + (k + 2) % 5));
        let spokes = (0..5).map(|k| (k, k + 5));
        Self::from_edges(10, outer.chain(inner).chain(spokes)).expect("valid Petersen graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Validates `v` as a vertex of this graph.
    pub fn vertex(&self, v: usize) -> Result<VertexId> {
        if v < self.n() {
            Ok(VertexId(v))
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Checks simplicity, symmetry, sortedness and the handshake identity.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n();
        let mut degree_sum = 0;
        for v in 0..n {
            let nb = self.neighbors(v);
            degree_sum += nb.len();
            for w in nb.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("neighbors of {v} not strictly increasing"));
                }
            }
            for &w in nb {
                if w >= n {
                    return Err(format!("neighbor {w} of {v} out of range"));
                }
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if self.neighbors(w).binary_search(&v).is_err() {
                    return Err(format!("edge {v}-{w} not symmetric"));
                }
            }
        }
        if degree_sum != 2 * self.m() || degree_sum % 2 != 0 {
            return Err("degree sum is not twice the edge count".into());
        }
        Ok(())
    }

    pub fn components(&self) -> ComponentLabeling {
        components_excluding(self, None)
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().count == 1
    }

    /// Fails with [`Error::Disconnected`] unless the graph is connected.
    pub fn require_connected(&self) -> Result<()> {
        let count = self.components().count;
        if count == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { components: count })
        }
    }

    /// Removes vertex `i`, returning `G - i` together with the index map.
    pub fn remove_vertex(&self, i: VertexId) -> (Graph, VertexMap) {
        let removed = i.index();
        let mut old_to_new = vec![None; self.n()];
        let mut new_to_old = Vec::with_capacity(self.n().saturating_sub(1));
        for v in (0..self.n()).filter(|&v| v != removed) {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
        let adjacency = new_to_old
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| old_to_new[w])
                    .collect()
            })
            .collect();
        (
            Graph::from_adjacency_unchecked(adjacency),
            VertexMap {
                old_to_new,
                new_to_old,
            },
        )
    }

    /// Eccentricity maximum over all vertices; `None` when disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in bfs_distances(self, VertexId(s)) {
                best = best.max(d?);
            }
        }
        Some(best)
    }
}

/// Bijection between the surviving vertices of a graph and the dense
/// indices of the graph with one vertex removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// Connected-component labels, dense in `0..count` and assigned in order of
/// each component's smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentLabeling {
    /// `None` only for a vertex excluded from the labeling (the pinned vertex).
    pub component_of: Vec<Option<usize>>,
    pub count: usize,
}

impl ComponentLabeling {
    /// Members of each component, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, c) in self.component_of.iter().enumerate() {
            if let Some(c) = c {
                out[*c].push(v);
            }
        }
        out
    }
}

/// Component labeling of `g`, optionally treating one vertex as deleted.
pub(crate) fn components_excluding(g: &Graph, skip: Option<usize>) -> ComponentLabeling {
    let n = g.n();
    let mut component_of = vec![None; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if Some(start) == skip || component_of[start].is_some() {
            continue;
        }
        component_of[start] = Some(count);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if Some(w) != skip && component_of[w].is_none() {
                    component_of[w] = Some(count);
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    ComponentLabeling {
        component_of,
        count,
    }
}

/// Exact unweighted distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    dist[source.index()] = Some(0);
    queue.push_back(source.index());
    while let Some(u) = queue.pop_front() {
        let next = dist[u].map(|d| d + 1);
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
    }

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.check_invariants().is_ok());
        assert_eq!(g.diameter(), Some(2));
        assert!(g.is_connected());
    }

    #[test]
    fn petersen_has_girth_five() {
        // A cycle of length < 5 through an edge (u, v) shows up as a BFS
        // distance < 4 between u and v once the edge is removed.
        let g = Graph::petersen();
        for (u, v) in g.edges() {
            let h = Graph::from_edges(10, g.edges().filter(|&e| e != (u, v))).unwrap();
            let d = bfs_distances(&h, VertexId(u))[v].unwrap();
            assert_eq!(d, 4, "shortest cycle through {u}-{v} has length {}", d + 1);
        }
    }

    #[test]
    fn petersen_is_not_bipartite() {
        let g = Graph::petersen();
        let d = bfs_distances(&g, VertexId(0));
        let odd_edge = g
            .edges()
            .any(|(u, v)| d[u].unwrap() % 2 == d[v].unwrap() % 2);
        assert!(odd_edge);
    }

    #[test]
    fn from_edges_collapses_duplicates_and_rejects_loops() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(
            Graph::from_edges(1, [(0, 0)]),
            Err(Error::SelfLoop {
                vertex: 0,
                line: None
            })
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn bfs_examples() {
        let path = Graph::path(4);
        let d: Vec<_> = bfs_distances(&path, VertexId(0))
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(d, vec![0, 1, 2, 3]);

        let k5 = Graph::complete(5);
        let d: Vec<_> = bfs_distances(&k5, VertexId(0))
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(d, vec![0, 1, 1, 1, 1]);

        let d = bfs_distances(&two_triangles(), VertexId(1));
        assert_eq!(d, vec![Some(1), Some(0), Some(1), None, None, None]);
    }

    #[test]
    fn components_are_dense() {
        let c = two_triangles().components();
        assert_eq!(c.count, 2);
        assert_eq!(c.members(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(
            two_triangles().require_connected(),
            Err(Error::Disconnected { components: 2 })
        );
    }

    #[test]
    fn remove_vertex_examples() {
        let (g, map) = Graph::star(3).remove_vertex(VertexId(0));
        assert_eq!((g.n(), g.m()), (3, 0));
        assert_eq!(map.new_to_old, vec![1, 2, 3]);
        assert_eq!(map.old_to_new, vec![None, Some(0), Some(1), Some(2)]);
        assert_eq!(g.components().count, 3);

        let (g, _) = Graph::path(3).remove_vertex(VertexId(1));
        assert_eq!((g.n(), g.m()), (2, 0));

        for v in 0..4 {
            let (g, _) = Graph::complete(4).remove_vertex(VertexId(v));
            assert_eq!(g, Graph::complete(3));
        }
    }

    #[test]
    fn cycle_needs_three_vertices() {
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::cycle(5).unwrap().m(), 5);
    }
}
