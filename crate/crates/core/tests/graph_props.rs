mod common;

use proptest::prelude::*;
use spectral_paths::graph::{
    bfs_distances, erdos_renyi, parse_edge_list, prufer_decode, prufer_encode, random_geometric,
    random_tree, write_edge_list,
};
use spectral_paths::{Graph, VertexId};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(n, p, seed)| erdos_renyi(n, p, seed).unwrap())
}

/// Reachability by repeated relaxation over the edge list, avoiding `skip`.
fn brute_reachable(g: &Graph, from: usize, skip: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[from] = true;
    loop {
        let mut changed = false;
        for (u, v) in g.edges() {
            if u == skip || v == skip {
                continue;
            }
            if seen[u] != seen[v] {
                seen[u] = true;
                seen[v] = true;
                changed = true;
            }
        }
        if !changed {
            return seen;
        }
    }
}

proptest! {
    #[test]
    fn generated_graphs_are_canonical(g in arb_graph(40)) {
        prop_assert!(g.check_invariants().is_ok());
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
    }

    #[test]
    fn geometric_graphs_are_canonical(n in 1usize..80, r in 0.0f64..0.8, seed in any::<u64>()) {
        let (g, pts) = random_geometric(n, 3.0, 1.0, r, seed).unwrap();
        prop_assert!(g.check_invariants().is_ok());
        for u in 0..n {
            for v in u + 1..n {
                prop_assert_eq!(g.has_edge(u, v), pts[u].distance(pts[v]) <= r);
            }
        }
    }

    #[test]
    fn bfs_is_one_lipschitz_along_edges(g in arb_graph(40), s in any::<prop::sample::Index>()) {
        prop_assume!(g.n() > 0);
        let d = bfs_distances(&g, VertexId(s.index(g.n())));
        for (u, v) in g.edges() {
            match (d[u], d[v]) {
                (Some(a), Some(b)) => prop_assert!(a.abs_diff(b) <= 1),
                (None, None) => {}
                _ => prop_assert!(false, "edge {}-{} crosses reachability", u, v),
            }
        }
    }

    #[test]
    fn remove_vertex_components_match_brute_force(g in arb_graph(12), i in any::<prop::sample::Index>()) {
        prop_assume!(g.n() > 1);
        let i = i.index(g.n());
        let (h, map) = g.remove_vertex(VertexId(i));
        prop_assert_eq!(h.n(), g.n() - 1);
        let labels = h.components();
        for a in 0..h.n() {
            let reach = brute_reachable(&g, map.new_to_old[a], i);
            for b in 0..h.n() {
                prop_assert_eq!(
                    labels.component_of[a] == labels.component_of[b],
                    reach[map.new_to_old[b]]
                );
            }
        }
        for (new, &old) in map.new_to_old.iter().enumerate() {
            prop_assert_eq!(map.old_to_new[old], Some(new));
        }
    }

    #[test]
    fn prufer_round_trip(n in 2usize..=10, seed in any::<u64>()) {
        let t = random_tree(n, seed).unwrap();
        prop_assert_eq!(t.m(), n - 1);
        prop_assert!(t.is_connected());
        let seq = prufer_encode(&t).unwrap();
        prop_assert_eq!(prufer_decode(n, &seq).unwrap(), t);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}

#[test]
fn prufer_exhaustive_up_to_five() {
    // Cayley: n^(n-2) labeled trees, one per sequence.
    for n in 2..=5usize {
        let len = n - 2;
        let total = n.pow(len as u32);
        let mut trees = std::collections::HashSet::new();
        for code in 0..total {
            let seq: Vec<usize> = (0..len).map(|k| code / n.pow(k as u32) % n).collect();
            let t = prufer_decode(n, &seq).unwrap();
            assert!(t.is_connected() && t.m() == n - 1);
            assert_eq!(prufer_encode(&t).unwrap(), seq);
            let edges: Vec<_> = t.edges().collect();
            trees.insert(edges);
        }
        assert_eq!(trees.len(), total);
    }
}

#[test]
fn named_graphs_are_connected() {
    for (name, g) in common::named_graphs() {
        assert!(g.is_connected(), "{name}");
        assert!(g.check_invariants().is_ok(), "{name}");
    }
}
