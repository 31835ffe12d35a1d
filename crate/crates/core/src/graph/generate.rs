//! Seeded random graph generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, which produces the same stream on every platform.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type SeedRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeedRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)`: each of the `n(n-1)/2` pairs is an edge independently with
/// probability `p`. Pairs are visited in lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Uniform points in `[0, width] x [0, height]`, joined when their Euclidean
/// distance is at most `radius`.
pub fn random_geometric(
    n: usize,
    width: f64,
    height: f64,
    radius: f64,
    seed: u64,
) -> Result<(Graph, Vec<Point>)> {
    // Zero radius is allowed: it yields the empty graph.
    if !(width > 0.0 && height > 0.0 && radius >= 0.0) || !(width + height + radius).is_finite() {
        return Err(Error::InvalidParameter(format!(
            "geometric graph needs positive finite dimensions and radius >= 0 \
             (width {width}, height {height}, radius {radius})"
        )));
    }
    let mut rng = seeded_rng(seed);
    let points: Vec<Point> = (0..n)
        .map(|_| {
            let x = rng.gen::<f64>() * width;
            let y = rng.gen::<f64>() * height;
            Point { x, y }
        })
        .collect();
    let mut edges = Vec::new();
    if radius > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if points[u].distance(points[v]) <= radius {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok((Graph::from_edges(n, edges)?, points))
}

/// CSV with header `index,x,y`.
pub fn write_coordinates_csv(points: &[Point]) -> String {
    let mut out = String::from("index,x,y\n");
    for (i, p) in points.iter().enumerate() {
        writeln!(out, "{i},{},{}", p.x, p.y).unwrap();
    }
    out
}

/// Uniformly random labeled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "a tree needs at least one vertex".into(),
        ));
    }
    let mut rng = seeded_rng(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    prufer_decode(n, &seq)
}

/// Decodes a Prüfer sequence of length `n - 2` into a tree on `n` vertices.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "a tree needs at least one vertex".into(),
        ));
    }
    if seq.len() != n.saturating_sub(2) {
        return Err(Error::InvalidParameter(format!(
            "Prüfer sequence for {n} vertices must have length {}, got {}",
            n.saturating_sub(2),
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    Graph::from_edges(n, edges)
}

/// Prüfer sequence of a tree; fails when `g` is not a tree.
pub fn prufer_encode(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 || g.m() + 1 != n || !g.is_connected() {
        return Err(Error::InvalidParameter("graph is not a tree".into()));
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n.saturating_sub(2));
    while seq.len() + 2 < n {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        removed[leaf] = true;
        let parent = *g
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w])
            .expect("leaf has one live neighbor");
        seq.push(parent);
        degree[parent] -= 1;
        if degree[parent] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    Ok(seq)
}
