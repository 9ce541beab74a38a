//! The approximation pipeline for odd cycle transversal on K4-free inputs,
//! plus the 4-clique preprocessing wrapper for general graphs.
//!
//! Three candidate transversals are built from a maximal triangle packing:
//! S1 deletes the packed vertices and finishes exactly; S2 keeps one random
//! (or derandomized) vertex per packed triangle, repacks what survives, and
//! finishes exactly; S3 fires only when some triangle avoids the packing's
//! vertex set entirely, deleting a hitting set of those outsiders and
//! recursing. The smallest candidate wins, ties broken S1 < S2 < S3.

use crate::cliques::{
    enumerate_triangles, greedy_packing_in_order, maximal_k4_packing, maximal_packing_of,
    maximal_triangle_packing, maximum_packing_size, outside_triangles, Triangle, TrianglePacking,
};
use crate::derand::{construct_derandomized_r, DerandError};
use crate::graph::Graph;
use crate::mix_seed;
use crate::oracle::{base_solve, exact_oct, BaseSubroutine};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const SALT_REPEAT: u64 = 0x7265_7065;
const SALT_DEPTH: u64 = 0x6465_7074;
const SALT_SAMPLE: u64 = 0x73616d70;
const SALT_SHUFFLE: u64 = 0x73687566;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Randomized,
    Derandomized,
}

/// Which of the three candidates won at the top level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chosen {
    S1,
    S2,
    S3,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub variant: Variant,
    pub seed: u64,
    /// Independent runs of the whole procedure; the smallest output wins.
    /// Must be 1 for the derandomized variant.
    pub repeats: usize,
    pub base: BaseSubroutine,
    /// When set, diagnostics include the oracle-derived fields (packing
    /// size and outsider packing number relative to the true optimum).
    pub collect_diagnostics: bool,
    /// Node budget for the oracle calls made by diagnostics collection.
    pub diagnostics_budget: u64,
    /// Build the top-level packing from a seed-shuffled triangle order
    /// instead of the lexicographic one.
    pub shuffle_packing: bool,
}

impl SolverConfig {
    pub fn randomized(seed: u64, base: BaseSubroutine) -> Self {
        SolverConfig {
            variant: Variant::Randomized,
            seed,
            repeats: 5,
            base,
            collect_diagnostics: false,
            diagnostics_budget: 10_000_000,
            shuffle_packing: false,
        }
    }

    pub fn derandomized(base: BaseSubroutine) -> Self {
        SolverConfig {
            variant: Variant::Derandomized,
            seed: 0,
            repeats: 1,
            base,
            collect_diagnostics: false,
            diagnostics_budget: 10_000_000,
            shuffle_packing: false,
        }
    }
}

/// Raw material captured from the winning top-level run. Sizes refer to the
/// graph the run saw; after 4-clique preprocessing that is the reduced
/// graph, not the input.
#[derive(Clone, Debug)]
pub struct SolveInternals {
    pub packing: TrianglePacking,
    /// Triangles not fully contained in the packing's vertex set.
    pub outside: Vec<Triangle>,
    /// The cover actually used by the winning S2 candidate.
    pub chosen_r: Vec<usize>,
    pub s1_size: usize,
    pub s2_size: usize,
    pub s3_size: Option<usize>,
    pub t_prime_size: usize,
    pub t_second_size: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveDiagnostics {
    /// Packing size over the exact optimum; None when the optimum is zero,
    /// unknown, or not requested.
    pub a: Option<f64>,
    /// Maximum disjoint subfamily of the outsider triangles over the exact
    /// optimum; None under the same conditions as `a`.
    pub b_hat: Option<f64>,
    /// Average degree inside the packed subgraph; None when the packing is
    /// empty.
    pub d_avg: Option<f64>,
    /// Vertices outside the cover left triangle-free within the packed
    /// subgraph.
    pub dead_count: usize,
    /// Candidate sizes on the K4-reduced graph; the reported solution adds
    /// the deleted K4 vertices on top of the winner.
    pub s1: usize,
    pub s2: usize,
    pub s3: Option<usize>,
    /// Levels of recursion beneath the top-level call.
    pub depth: usize,
    pub r_size: usize,
    pub t_prime_size: usize,
    pub t_second_size: usize,
}

#[derive(Clone, Debug)]
pub struct OctResult {
    pub solution: Vec<usize>,
    pub chosen: Chosen,
    pub diagnostics: SolveDiagnostics,
    pub internals: SolveInternals,
}

/// Keeps one uniformly random vertex of every packed triangle and returns
/// the other two, sorted. Consumes exactly one draw per triangle, in member
/// order.
pub fn sample_r(t: &TrianglePacking, rng: &mut impl Rng) -> Vec<usize> {
    let mut r = Vec::with_capacity(2 * t.len());
    for member in t.members() {
        let keep = rng.gen_range(0..3);
        for (j, &v) in member.iter().enumerate() {
            if j != keep {
                r.push(v);
            }
        }
    }
    r.sort_unstable();
    r
}

/// Packed vertices outside `r` that lie in no triangle of the packed
/// subgraph minus `r`. Sorted.
pub fn dead_vertices(g: &Graph, t: &TrianglePacking, r: &[usize]) -> Vec<usize> {
    let mut rest: Vec<usize> = t
        .covered()
        .iter()
        .copied()
        .filter(|v| r.binary_search(v).is_err())
        .collect();
    rest.sort_unstable();
    let (sub, map) = g.induced_subgraph(&rest);
    let mut in_triangle = vec![false; sub.vertex_count()];
    for tri in enumerate_triangles(&sub) {
        for &v in &tri.vertices() {
            in_triangle[v] = true;
        }
    }
    (0..sub.vertex_count())
        .filter(|&v| !in_triangle[v])
        .map(|v| map.lift_one(v))
        .collect()
}

/// True when deleting `s` from `g` leaves a bipartite graph.
pub fn verify_solution(g: &Graph, s: &[usize]) -> bool {
    match g.delete_vertices(s) {
        Ok((rest, _)) => rest.is_bipartite().is_bipartite(),
        Err(_) => false,
    }
}

fn validate(cfg: &SolverConfig) {
    assert!(cfg.repeats >= 1, "repeats must be at least 1");
    assert!(
        cfg.variant != Variant::Derandomized || cfg.repeats == 1,
        "the derandomized variant admits exactly one repeat"
    );
}

/// Cover plus a fresh packing of what survives plus an exact finish on the
/// rest. Returns the candidate (sorted) and the size of the fresh packing.
fn build_s2(g: &Graph, r: &[usize], base: &BaseSubroutine) -> (Vec<usize>, usize) {
    let (g_r, map_r) = g
        .delete_vertices(r)
        .expect("cover vertices lie in the graph");
    let t_prime = maximal_triangle_packing(&g_r);
    let mut deleted: Vec<usize> = r.to_vec();
    deleted.extend(map_r.lift(t_prime.covered()));
    deleted.sort_unstable();
    let (g_rest, map_rest) = g
        .delete_vertices(&deleted)
        .expect("deleted vertices lie in the graph");
    let mut s2 = deleted;
    s2.extend(map_rest.lift(&base_solve(base, &g_rest)));
    s2.sort_unstable();
    (s2, t_prime.len())
}

struct LevelOutcome {
    solution: Vec<usize>,
    chosen: Chosen,
    /// Recursion levels entered beneath this one.
    levels_below: usize,
    internals: Option<SolveInternals>,
}

fn solve_level(
    g: &Graph,
    cfg: &SolverConfig,
    level_seed: u64,
    depth: usize,
) -> Result<LevelOutcome, DerandError> {
    let packing = if cfg.shuffle_packing {
        let mut triangles = enumerate_triangles(g);
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(level_seed, SALT_SHUFFLE));
        triangles.shuffle(&mut rng);
        greedy_packing_in_order(&triangles)
    } else {
        maximal_triangle_packing(g)
    };
    let outside = outside_triangles(g, &packing);
    let vt = packing.covered().to_vec();

    let (g1, map1) = g
        .delete_vertices(&vt)
        .expect("packed vertices lie in the graph");
    let mut s1 = vt.clone();
    s1.extend(map1.lift(&base_solve(&cfg.base, &g1)));
    s1.sort_unstable();

    let (s2, chosen_r, t_prime_size) = match cfg.variant {
        Variant::Randomized => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(level_seed, SALT_SAMPLE));
            let r = sample_r(&packing, &mut rng);
            let (s2, tp) = build_s2(g, &r, &cfg.base);
            (s2, r, tp)
        }
        Variant::Derandomized => {
            let state = construct_derandomized_r(g, &packing)?;
            let mut best: Option<(Vec<usize>, Vec<usize>, usize)> = None;
            for cover in state.covers {
                let (s2, tp) = build_s2(g, &cover, &cfg.base);
                if best.as_ref().is_none_or(|(b, _, _)| s2.len() < b.len()) {
                    best = Some((s2, cover, tp));
                }
            }
            best.expect("three covers were tried")
        }
    };

    let (s3, t_second_size, levels_below) = if outside.is_empty() {
        (None, 0, 0)
    } else {
        let t_second = maximal_packing_of(&outside);
        let cut: Vec<usize> = t_second
            .covered()
            .iter()
            .copied()
            .filter(|&v| packing.covers(v))
            .collect();
        assert!(
            !cut.is_empty(),
            "every outsider triangle meets the maximal packing"
        );
        let (g3, map3) = g
            .delete_vertices(&cut)
            .expect("cut vertices lie in the graph");
        let child_seed = mix_seed(level_seed, SALT_DEPTH ^ (depth as u64 + 1));
        let child = solve_level(&g3, cfg, child_seed, depth + 1)?;
        let mut s3 = cut;
        s3.extend(map3.lift(&child.solution));
        s3.sort_unstable();
        (Some(s3), t_second.len(), child.levels_below + 1)
    };

    let s1_size = s1.len();
    let s2_size = s2.len();
    let s3_size = s3.as_ref().map(Vec::len);

    let mut solution = s1;
    let mut chosen = Chosen::S1;
    if s2_size < solution.len() {
        solution = s2;
        chosen = Chosen::S2;
    }
    if let Some(s3) = s3 {
        if s3.len() < solution.len() {
            solution = s3;
            chosen = Chosen::S3;
        }
    }

    let internals = (depth == 0).then_some(SolveInternals {
        packing,
        outside,
        chosen_r,
        s1_size,
        s2_size,
        s3_size,
        t_prime_size,
        t_second_size,
        depth: levels_below,
    });
    Ok(LevelOutcome {
        solution,
        chosen,
        levels_below,
        internals,
    })
}

/// Structural and (optionally) oracle-derived measurements for a finished
/// top-level run. `oracle_budget` of None skips the exact solves and leaves
/// `a` and `b_hat` unset.
pub fn compute_diagnostics(
    g: &Graph,
    internals: &SolveInternals,
    oracle_budget: Option<u64>,
) -> SolveDiagnostics {
    let vt = internals.packing.covered();
    let d_avg = if vt.is_empty() {
        None
    } else {
        let (sub, _) = g.induced_subgraph(vt);
        Some(2.0 * sub.edge_count() as f64 / sub.vertex_count() as f64)
    };
    let dead_count = dead_vertices(g, &internals.packing, &internals.chosen_r).len();

    let mut a = None;
    let mut b_hat = None;
    if let Some(budget) = oracle_budget {
        let exact = exact_oct(g, budget);
        if exact.optimal && !exact.vertices.is_empty() {
            let opt = exact.vertices.len() as f64;
            a = Some(internals.packing.len() as f64 / opt);
            b_hat = maximum_packing_size(&internals.outside, budget).map(|k| k as f64 / opt);
        }
    }

    SolveDiagnostics {
        a,
        b_hat,
        d_avg,
        dead_count,
        s1: internals.s1_size,
        s2: internals.s2_size,
        s3: internals.s3_size,
        depth: internals.depth,
        r_size: internals.chosen_r.len(),
        t_prime_size: internals.t_prime_size,
        t_second_size: internals.t_second_size,
    }
}

/// Runs the pipeline on a graph that must already be K4-free; finding a
/// 4-clique is a hard error. The randomized variant runs `cfg.repeats`
/// independent passes with derived seeds and keeps the smallest output
/// (earliest pass on ties).
pub fn solve_k4free(g: &Graph, cfg: &SolverConfig) -> Result<OctResult, DerandError> {
    validate(cfg);
    let k4s = maximal_k4_packing(g);
    if let Some(first) = k4s.members().first() {
        return Err(DerandError::K4Found([first[0], first[1], first[2], first[3]]));
    }

    let mut best: Option<LevelOutcome> = None;
    match cfg.variant {
        Variant::Derandomized => {
            best = Some(solve_level(g, cfg, cfg.seed, 0)?);
        }
        Variant::Randomized => {
            for k in 0..cfg.repeats {
                let seed_k = mix_seed(cfg.seed, SALT_REPEAT.wrapping_add(k as u64));
                let outcome = solve_level(g, cfg, seed_k, 0)?;
                if best
                    .as_ref()
                    .is_none_or(|b| outcome.solution.len() < b.solution.len())
                {
                    best = Some(outcome);
                }
            }
        }
    }
    let outcome = best.expect("at least one repeat ran");
    let internals = outcome.internals.expect("top level captures internals");
    let budget = cfg.collect_diagnostics.then_some(cfg.diagnostics_budget);
    let diagnostics = compute_diagnostics(g, &internals, budget);
    Ok(OctResult {
        solution: outcome.solution,
        chosen: outcome.chosen,
        diagnostics,
        internals,
    })
}

/// General entry point: deletes the vertices of a maximal 4-clique packing
/// (after which no 4-clique survives), runs the K4-free pipeline on the
/// rest, and returns the union. Diagnostics and internals describe the
/// reduced graph.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> OctResult {
    let k4s = maximal_k4_packing(g);
    let clique_vertices: Vec<usize> = k4s.covered().to_vec();
    let (reduced, map) = g
        .delete_vertices(&clique_vertices)
        .expect("clique vertices lie in the graph");
    let inner = solve_k4free(&reduced, cfg).expect("reduced graph is K4-free");
    let mut solution = clique_vertices;
    solution.extend(map.lift(&inner.solution));
    solution.sort_unstable();
    OctResult {
        solution,
        chosen: inner.chosen,
        diagnostics: inner.diagnostics,
        internals: inner.internals,
    }
}
