//! Shared helpers for integration tests: random graph generation and
//! independent brute-force oracles to check the library against.
#![allow(dead_code)]

use oct_core::{BipartitenessCertificate, Graph};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Erdos-Renyi style random graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Exhaustive bipartiteness check: tries all 2^n two-colorings. Only for
/// small n. A graph is bipartite iff some proper 2-coloring exists, iff it
/// has no odd cycle.
pub fn bipartite_brute_force(g: &Graph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force limited to small graphs");
    let edges = g.edges();
    'outer: for mask in 0u32..(1 << n) {
        for &(u, v) in &edges {
            if (mask >> u) & 1 == (mask >> v) & 1 {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// Checks that `colors` is a proper 2-coloring of g.
pub fn check_coloring(g: &Graph, colors: &[u8]) -> bool {
    colors.len() == g.vertex_count()
        && colors.iter().all(|&c| c <= 1)
        && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

/// Checks that `cycle` is a simple odd cycle in g.
pub fn check_odd_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 || k.is_multiple_of(2) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return false;
    }
    (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}

/// Checks a bipartiteness certificate against the graph it came from.
pub fn check_certificate(g: &Graph, cert: &BipartitenessCertificate) -> bool {
    match cert {
        BipartitenessCertificate::TwoColoring(c) => check_coloring(g, c),
        BipartitenessCertificate::OddCycle(cyc) => check_odd_cycle(g, cyc),
    }
}

/// Exact minimum odd cycle transversal size by exhaustive subset search.
/// Only for small n.
pub fn oct_brute_force(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force limited to small graphs");
    for k in 0..=n {
        if let Some(_s) = oct_brute_force_of_size(g, k) {
            return k;
        }
    }
    unreachable!("deleting all vertices always works");
}

/// Finds some odd cycle transversal of exactly `k` vertices, if one exists.
pub fn oct_brute_force_of_size(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let (rest, _) = g.delete_vertices(&subset).unwrap();
        if rest.is_bipartite().is_bipartite() {
            return Some(subset);
        }
        // next k-combination of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Checks that deleting `s` from g leaves a bipartite graph.
pub fn is_valid_oct(g: &Graph, s: &[usize]) -> bool {
    match g.delete_vertices(s) {
        Ok((rest, _)) => rest.is_bipartite().is_bipartite(),
        Err(_) => false,
    }
}

/// Pairwise shortest-path distance from `src` in g (usize::MAX if
/// unreachable).
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}
