mod common;

use common::is_valid_oct;
use oct_core::cliques::maximal_triangle_packing;
use oct_core::oracle::exact_oct;
use oct_core::geometry::{build_disk_graph, generate_random_instance};
use oct_core::oracle::BaseSubroutine;
use oct_core::solver::{
    dead_vertices, sample_r, solve, solve_k4free, verify_solution, Chosen, SolverConfig, Variant,
};
use oct_core::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diamond() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

fn exact_cfg() -> BaseSubroutine {
    BaseSubroutine::exact(500_000)
}

#[test]
fn diamond_derandomized_full_trace() {
    let g = diamond();
    let mut cfg = SolverConfig::derandomized(exact_cfg());
    cfg.collect_diagnostics = true;
    let res = solve_k4free(&g, &cfg).unwrap();
    assert_eq!(res.solution, vec![0, 1]);
    assert_eq!(res.chosen, Chosen::S2);
    let d = &res.diagnostics;
    assert_eq!(d.s1, 3);
    assert_eq!(d.s2, 2);
    assert_eq!(d.s3, Some(2));
    assert_eq!(d.depth, 1);
    assert_eq!(d.dead_count, 1);
    assert_eq!(d.d_avg, Some(2.0));
    assert_eq!(d.r_size, 2);
    assert_eq!(d.t_prime_size, 0);
    assert_eq!(d.t_second_size, 1);
    assert_eq!(d.a, Some(1.0));
    assert_eq!(d.b_hat, Some(1.0));
    assert_eq!(res.internals.packing.members(), &[vec![0, 1, 2]]);
    assert_eq!(res.internals.outside.len(), 1);
}

#[test]
fn diamond_randomized_matches_size() {
    let g = diamond();
    let cfg = SolverConfig::randomized(3, exact_cfg());
    let res = solve_k4free(&g, &cfg).unwrap();
    assert_eq!(res.solution.len(), 2);
    assert_eq!(res.chosen, Chosen::S2);
    assert!(verify_solution(&g, &res.solution));
}

#[test]
fn bipartite_input_needs_nothing() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let res = solve_k4free(&g, &SolverConfig::derandomized(exact_cfg())).unwrap();
    assert!(res.solution.is_empty());
    assert_eq!(res.chosen, Chosen::S1);
    assert_eq!(res.diagnostics.d_avg, None);
    assert_eq!(res.diagnostics.s3, None);
    assert_eq!(res.diagnostics.depth, 0);
}

#[test]
fn k4free_entry_rejects_cliques() {
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let err = solve_k4free(&g, &SolverConfig::derandomized(exact_cfg()));
    assert!(err.is_err());
    let res = solve(&g, &SolverConfig::derandomized(exact_cfg()));
    assert_eq!(res.solution, vec![0, 1, 2, 3]);
    assert!(verify_solution(&g, &res.solution));
}

#[test]
#[should_panic(expected = "derandomized variant admits exactly one repeat")]
fn derandomized_rejects_multiple_repeats() {
    let g = diamond();
    let mut cfg = SolverConfig::derandomized(exact_cfg());
    cfg.repeats = 2;
    let _ = solve_k4free(&g, &cfg);
}

#[test]
fn sample_r_keeps_one_vertex_per_triangle() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    let t = maximal_triangle_packing(&g);
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..60u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = sample_r(&t, &mut rng);
        assert_eq!(r.len(), 2 * t.len());
        for m in t.members() {
            let kept: Vec<usize> = m
                .iter()
                .copied()
                .filter(|v| r.binary_search(v).is_err())
                .collect();
            assert_eq!(kept.len(), 1);
            if m[0] == 0 {
                seen.insert(kept[0]);
            }
        }
    }
    // sixty draws hit all three choices of the first triangle
    assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
}

#[test]
fn dead_vertices_diamond_example() {
    let g = diamond();
    let t = maximal_triangle_packing(&g);
    assert_eq!(dead_vertices(&g, &t, &[0, 1]), vec![2]);
    // keeping the whole triangle keeps it alive
    assert_eq!(dead_vertices(&g, &t, &[]), Vec::<usize>::new());
}

#[test]
fn solutions_verify_and_stay_within_three_times_opt() {
    let base = BaseSubroutine::exact(2_000_000);
    for seed in 0..8u64 {
        let inst = generate_random_instance(26, 1, 4, 14, seed).unwrap();
        let g = build_disk_graph(&inst);
        let reference = exact_oct(&g, 50_000_000);
        assert!(reference.optimal, "reference solve must finish");
        let opt = reference.vertices.len();
        for cfg in [
            SolverConfig::randomized(seed, base),
            SolverConfig::derandomized(base),
        ] {
            let res = solve(&g, &cfg);
            assert!(is_valid_oct(&g, &res.solution));
            assert!(res.solution.windows(2).all(|w| w[0] < w[1]));
            if opt == 0 {
                assert!(res.solution.is_empty());
            } else {
                assert!(
                    res.solution.len() <= 3 * opt,
                    "seed {seed}: got {} against optimum {opt}",
                    res.solution.len()
                );
            }
        }
    }
}

#[test]
fn fixed_seed_is_reproducible_and_repeats_help() {
    let inst = generate_random_instance(80, 1, 5, 26, 5).unwrap();
    let g = build_disk_graph(&inst);
    let base = BaseSubroutine::exact(2_000_000);
    let cfg = SolverConfig::randomized(11, base);
    let a = solve(&g, &cfg);
    let b = solve(&g, &cfg);
    assert_eq!(a.solution, b.solution);
    assert_eq!(a.chosen, b.chosen);

    let mut one = SolverConfig::randomized(11, base);
    one.repeats = 1;
    let single = solve(&g, &one);
    assert!(a.solution.len() <= single.solution.len());
}

#[test]
fn shuffled_packing_still_solves_correctly() {
    let inst = generate_random_instance(60, 1, 5, 22, 9).unwrap();
    let g = build_disk_graph(&inst);
    let mut cfg = SolverConfig::randomized(4, BaseSubroutine::exact(2_000_000));
    cfg.shuffle_packing = true;
    let res = solve(&g, &cfg);
    assert!(is_valid_oct(&g, &res.solution));
    let res2 = solve(&g, &cfg);
    assert_eq!(res.solution, res2.solution);
}

#[test]
fn randomized_cover_size_is_twice_the_packing() {
    let inst = generate_random_instance(70, 1, 5, 24, 2).unwrap();
    let g = build_disk_graph(&inst);
    let cfg = SolverConfig::randomized(0, exact_cfg());
    let res = solve(&g, &cfg);
    assert_eq!(res.diagnostics.r_size, 2 * res.internals.packing.len());
}

#[test]
fn diagnostics_skip_oracle_when_disabled() {
    let g = diamond();
    let cfg = SolverConfig::derandomized(exact_cfg());
    let res = solve_k4free(&g, &cfg).unwrap();
    assert_eq!(res.diagnostics.a, None);
    assert_eq!(res.diagnostics.b_hat, None);
    // structural fields are still filled
    assert_eq!(res.diagnostics.s1, 3);
}

#[test]
fn greedy_base_still_yields_valid_transversals() {
    let base = BaseSubroutine::greedy_fallback(2.0);
    for seed in [1u64, 3, 7] {
        let inst = generate_random_instance(50, 1, 5, 20, seed).unwrap();
        let g = build_disk_graph(&inst);
        for variant in [Variant::Randomized, Variant::Derandomized] {
            let mut cfg = match variant {
                Variant::Randomized => SolverConfig::randomized(seed, base),
                Variant::Derandomized => SolverConfig::derandomized(base),
            };
            cfg.diagnostics_budget = 0;
            let res = solve(&g, &cfg);
            assert!(is_valid_oct(&g, &res.solution));
        }
    }
}
