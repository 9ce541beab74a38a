mod common;

use oct_core::cliques::{maximal_k4_packing, maximal_triangle_packing};
use oct_core::derand::{construct_derandomized_r, DerandError, DerandState, HIGH_DEGREE_THRESHOLD};
use oct_core::geometry::{build_disk_graph, generate_random_instance};
use oct_core::solver::dead_vertices;
use oct_core::Graph;

fn sorted_in(sub: &[usize], sup: &[usize]) -> bool {
    sub.iter().all(|v| sup.binary_search(v).is_ok())
}

/// Recomputes low triangles and checks every structural promise of the
/// construction against the graph it was built from.
fn check_state(g: &Graph, state: &DerandState) {
    let in_low = |v: usize| state.low_part.binary_search(&v).is_ok();
    for cover in &state.covers {
        assert!(cover.windows(2).all(|w| w[0] < w[1]), "covers are sorted sets");
        assert!(
            sorted_in(&state.high_part, cover),
            "high vertices belong to every cover"
        );
    }
    // low triangles: the packing members that avoid the high part
    let packing = maximal_triangle_packing(g);
    let low_triangles: Vec<[usize; 3]> = packing
        .members()
        .iter()
        .filter(|m| m.iter().all(|&v| in_low(v)))
        .map(|m| [m[0], m[1], m[2]])
        .collect();
    let expected_low = 2 * low_triangles.len();
    for (i, cover) in state.covers.iter().enumerate() {
        for tri in &low_triangles {
            let hit = tri.iter().filter(|v| cover.binary_search(v).is_ok()).count();
            assert_eq!(hit, 2, "cover {i} must contain exactly two of {tri:?}");
        }
        assert_eq!(state.cover_low(i).len(), expected_low);
        // the block is untouched and its whole low neighborhood is swallowed
        for &v in &state.blocks[i] {
            assert!(cover.binary_search(&v).is_err(), "cover {i} avoids its own block");
            for &w in g.neighbors(v) {
                if in_low(w) {
                    assert!(cover.binary_search(&w).is_ok());
                }
            }
        }
        // block vertices end up dead: no triangle survives around them
        let dead = dead_vertices(g, &packing, cover);
        for &v in &state.blocks[i] {
            assert!(dead.binary_search(&v).is_ok(), "block vertex {v} must be dead");
        }
    }
    // every low-triangle vertex sits in exactly two covers
    for tri in &low_triangles {
        for v in tri {
            let count = state
                .covers
                .iter()
                .filter(|c| c.binary_search(v).is_ok())
                .count();
            assert_eq!(count, 2, "vertex {v} must be in exactly two covers");
        }
    }
    let block_len = state.independent.len() / 3;
    for block in &state.blocks {
        assert_eq!(block.len(), block_len);
    }
}

#[test]
fn single_triangle_rotates_pairs() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let t = maximal_triangle_packing(&g);
    let state = construct_derandomized_r(&g, &t).unwrap();
    assert!(state.high_degree.is_empty());
    assert!(state.high_part.is_empty());
    assert_eq!(state.low_part, vec![0, 1, 2]);
    assert_eq!(state.independent, vec![0]);
    assert!(state.blocks.iter().all(Vec::is_empty));
    assert_eq!(state.covers[0], vec![0, 1]);
    assert_eq!(state.covers[1], vec![1, 2]);
    assert_eq!(state.covers[2], vec![0, 2]);
    check_state(&g, &state);
}

#[test]
fn disjoint_triangles_get_two_vertices_each() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    let t = maximal_triangle_packing(&g);
    let state = construct_derandomized_r(&g, &t).unwrap();
    assert_eq!(state.covers[0], vec![0, 1, 3, 4]);
    assert_eq!(state.covers[1], vec![1, 2, 4, 5]);
    assert_eq!(state.covers[2], vec![0, 2, 3, 5]);
    check_state(&g, &state);
}

/// Four disjoint triangles whose first vertices form the independent set;
/// one vertex is left over after the three-way split, so its triangle takes
/// the unconstrained rotation. Expected covers derived by hand.
#[test]
fn blocks_pin_their_triangles_and_leftovers_rotate() {
    let mut edges = Vec::new();
    for b in [0usize, 3, 6, 9] {
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
    }
    let g = Graph::from_edges(12, &edges).unwrap();
    let t = maximal_triangle_packing(&g);
    let state = construct_derandomized_r(&g, &t).unwrap();
    assert_eq!(state.independent, vec![0, 3, 6, 9]);
    assert_eq!(state.blocks, [vec![0], vec![3], vec![6]]);
    assert_eq!(state.covers[0], vec![1, 2, 3, 5, 6, 8, 9, 10]);
    assert_eq!(state.covers[1], vec![0, 2, 4, 5, 6, 7, 10, 11]);
    assert_eq!(state.covers[2], vec![0, 1, 3, 4, 7, 8, 9, 11]);
    check_state(&g, &state);
}

/// 52 triangles whose hubs each see two vertices of every other triangle:
/// all hubs exceed the degree threshold, the low part vanishes, and every
/// cover degenerates to the full vertex set.
#[test]
fn all_high_packing_gives_identical_covers() {
    let k = 52;
    let mut edges = Vec::new();
    for i in 0..k {
        let (h, a, b) = (3 * i, 3 * i + 1, 3 * i + 2);
        edges.extend([(h, a), (a, b), (h, b)]);
        for j in 0..k {
            if j != i {
                edges.extend([(h, 3 * j + 1), (h, 3 * j + 2)]);
            }
        }
    }
    let g = Graph::from_edges(3 * k, &edges).unwrap();
    assert!(maximal_k4_packing(&g).is_empty());
    let t = maximal_triangle_packing(&g);
    assert_eq!(t.len(), k);
    let state = construct_derandomized_r(&g, &t).unwrap();
    let hubs: Vec<usize> = (0..k).map(|i| 3 * i).collect();
    assert_eq!(state.high_degree, hubs);
    let all: Vec<usize> = (0..3 * k).collect();
    assert_eq!(state.high_part, all);
    assert!(state.low_part.is_empty());
    assert!(state.independent.is_empty());
    for cover in &state.covers {
        assert_eq!(*cover, all);
    }
    check_state(&g, &state);
}

/// One hub above the threshold, every other triangle low: the hub's
/// triangle is absorbed whole and the 51 low triangles follow the block
/// machinery.
#[test]
fn single_high_hub_splits_high_and_low() {
    let k = 52;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.extend([(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * i + 2)]);
    }
    for j in 1..k {
        edges.extend([(0, 3 * j), (0, 3 * j + 1)]);
    }
    let g = Graph::from_edges(3 * k, &edges).unwrap();
    assert!(maximal_k4_packing(&g).is_empty());
    let t = maximal_triangle_packing(&g);
    assert_eq!(t.len(), k);
    let deg0 = g.neighbors(0).len();
    assert!(deg0 > HIGH_DEGREE_THRESHOLD);
    let state = construct_derandomized_r(&g, &t).unwrap();
    assert_eq!(state.high_degree, vec![0]);
    assert_eq!(state.high_part, vec![0, 1, 2]);
    assert_eq!(state.low_part.len(), 3 * (k - 1));
    assert_eq!(state.independent.len(), k - 1);
    check_state(&g, &state);
}

/// An apex adjacent to all three vertices of another packed triangle is a
/// 4-clique; once the apex lands in a block the construction must refuse.
#[test]
fn block_vertex_seeing_a_full_triangle_reports_k4() {
    let mut edges = Vec::new();
    for b in [0usize, 3, 6, 9] {
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
    }
    edges.extend([(0, 9), (0, 10), (0, 11)]);
    let g = Graph::from_edges(12, &edges).unwrap();
    let t = maximal_triangle_packing(&g);
    let err = construct_derandomized_r(&g, &t).unwrap_err();
    let DerandError::K4Found(vs) = err;
    assert_eq!(vs, [0, 9, 10, 11]);
}

#[test]
fn random_disk_instances_satisfy_all_cover_properties() {
    for seed in 0..12u64 {
        let inst = generate_random_instance(110, 1, 6, 34, seed).unwrap();
        let g = build_disk_graph(&inst);
        let k4 = maximal_k4_packing(&g);
        let (reduced, _) = g.delete_vertices(k4.covered()).unwrap();
        assert!(maximal_k4_packing(&reduced).is_empty());
        let t = maximal_triangle_packing(&reduced);
        let state = construct_derandomized_r(&reduced, &t).unwrap();
        check_state(&reduced, &state);
    }
}

#[test]
fn construction_is_deterministic() {
    let inst = generate_random_instance(90, 1, 5, 30, 17).unwrap();
    let g = build_disk_graph(&inst);
    let k4 = maximal_k4_packing(&g);
    let (reduced, _) = g.delete_vertices(k4.covered()).unwrap();
    let t = maximal_triangle_packing(&reduced);
    let a = construct_derandomized_r(&reduced, &t).unwrap();
    let b = construct_derandomized_r(&reduced, &t).unwrap();
    assert_eq!(a, b);
}
