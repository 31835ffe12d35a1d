#![allow(dead_code)]

use spectral_paths::graph::{erdos_renyi, random_geometric, random_tree};
use spectral_paths::Graph;

/// Connected G(n, p) with n in 3..=max_n, drawn deterministically from `seed`.
pub fn small_connected(seed: u64, max_n: usize) -> Graph {
    let mut s = seed.wrapping_mul(7919);
    loop {
        let n = 3 + (s % (max_n as u64 - 2)) as usize;
        let p = 0.25 + 0.6 * ((s / 13) % 100) as f64 / 100.0;
        let g = erdos_renyi(n, p, s).unwrap();
        if g.is_connected() {
            return g;
        }
        s = s.wrapping_add(1_000_003);
    }
}

pub fn connected_er(n: usize, p: f64, seed: u64) -> Graph {
    (seed..)
        .map(|s| erdos_renyi(n, p, s).unwrap())
        .find(Graph::is_connected)
        .unwrap()
}

pub fn connected_geometric(n: usize, width: f64, height: f64, radius: f64, seed: u64) -> Graph {
    (seed..)
        .map(|s| random_geometric(n, width, height, radius, s).unwrap().0)
        .find(Graph::is_connected)
        .unwrap()
}

/// Square grid graph.
pub fn grid(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::from_edges(w * h, edges).unwrap()
}

/// Hypercube Q_d.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges = (0..n)
        .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
        .filter(|(u, v)| u < v);
    Graph::from_edges(n, edges).unwrap()
}

/// Two cliques joined by a path, a classic bottleneck shape.
pub fn barbell(k: usize, bridge: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
            edges.push((k + bridge + u, k + bridge + v));
        }
    }
    let mut prev = k - 1;
    for b in 0..bridge {
        edges.push((prev, k + b));
        prev = k + b;
    }
    edges.push((prev, k + bridge));
    Graph::from_edges(2 * k + bridge, edges).unwrap()
}

pub fn named_graphs() -> Vec<(String, Graph)> {
    vec![
        ("petersen".into(), Graph::petersen()),
        ("path-9".into(), Graph::path(9)),
        ("cycle-7".into(), Graph::cycle(7).unwrap()),
        ("cycle-12".into(), Graph::cycle(12).unwrap()),
        ("complete-6".into(), Graph::complete(6)),
        ("star-5".into(), Graph::star(5)),
        ("grid-5x4".into(), grid(5, 4)),
        ("hypercube-4".into(), hypercube(4)),
        ("barbell-5-3".into(), barbell(5, 3)),
        ("tree-40".into(), random_tree(40, 11).unwrap()),
    ]
}

/// Angle in radians between two unit vectors, up to sign.
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let sign = if dot < 0.0 { -1.0 } else { 1.0 };
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - sign * y).powi(2))
        .sum::<f64>()
        .sqrt();
    2.0 * (diff / 2.0).min(1.0).asin()
}
