//! Base odd cycle transversal solvers: an exact branch-and-bound oracle and
//! a greedy fallback. The exact solver doubles as the reference for optimum
//! sizes in experiments; the approximation pipeline calls either through
//! `base_solve` on the (triangle-free) graphs it produces.

use crate::graph::{odd_cycle_through, Graph};
use std::collections::VecDeque;

/// Which base solver to run and what it claims about itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseSubroutine {
    pub kind: BaseKind,
    /// Approximation ratio the subroutine is credited with in ratio bounds.
    /// 1.0 is truthful only for exact search that completes within budget.
    pub declared_ratio: f64,
    /// Node budget for exact search; unused by the greedy fallback.
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Exact,
    GreedyFallback,
}

impl BaseSubroutine {
    pub fn exact(budget: u64) -> BaseSubroutine {
        BaseSubroutine {
            kind: BaseKind::Exact,
            declared_ratio: 1.0,
            budget,
        }
    }

    /// Greedy fallback with the ratio it should be credited with in bound
    /// calculations. It offers no guarantee of its own, so the declared
    /// ratio must be an external assumption (and must be > 1).
    pub fn greedy_fallback(declared_ratio: f64) -> BaseSubroutine {
        assert!(declared_ratio > 1.0, "greedy fallback cannot claim exactness");
        BaseSubroutine {
            kind: BaseKind::GreedyFallback,
            declared_ratio,
            budget: 0,
        }
    }
}

/// Result of exact search: a valid transversal, whether it is proven
/// minimum, and how many branch-and-bound nodes were expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub vertices: Vec<usize>,
    pub optimal: bool,
    pub nodes_explored: u64,
}

/// Minimum odd cycle transversal by branch and bound, component by
/// component. Branches on the vertices of a short odd cycle; prunes with the
/// incumbent and a greedy packing of vertex-disjoint odd cycles. If the node
/// budget runs out the best solution found so far is returned with
/// optimal=false; the output is a valid transversal either way.
pub fn exact_oct(g: &Graph, budget: u64) -> ExactSolution {
    let mut vertices = Vec::new();
    let mut optimal = true;
    let mut nodes_total: u64 = 0;
    let mut remaining = budget;
    for comp in g.connected_components() {
        if comp.len() < 3 {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&comp);
        if sub.is_bipartite().is_bipartite() {
            continue;
        }
        let mut search = OctSearch::new(&sub, remaining);
        search.run();
        vertices.extend(map.lift(&search.best));
        optimal &= !search.exhausted;
        nodes_total += search.nodes;
        remaining = remaining.saturating_sub(search.nodes);
    }
    vertices.sort_unstable();
    ExactSolution {
        vertices,
        optimal,
        nodes_explored: nodes_total,
    }
}

/// Runs the configured base subroutine. Always returns a valid odd cycle
/// transversal of g.
pub fn base_solve(sub: &BaseSubroutine, g: &Graph) -> Vec<usize> {
    match sub.kind {
        BaseKind::Exact => exact_oct(g, sub.budget).vertices,
        BaseKind::GreedyFallback => {
            let alive = vec![true; g.vertex_count()];
            greedy_transversal(g, alive)
        }
    }
}

/// Greedy transversal: while an odd cycle exists, delete its highest-degree
/// vertex (degree in the current graph, ties to the lowest id).
fn greedy_transversal(g: &Graph, mut alive: Vec<bool>) -> Vec<usize> {
    let mut deleted = Vec::new();
    while let Some(cycle) = first_odd_cycle(g, &alive) {
        let pick = cycle
            .iter()
            .copied()
            .max_by_key(|&v| {
                let deg = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
                (deg, std::cmp::Reverse(v))
            })
            .expect("odd cycle is non-empty");
        alive[pick] = false;
        deleted.push(pick);
    }
    deleted.sort_unstable();
    deleted
}

/// First odd cycle of the graph restricted to alive vertices, via BFS
/// 2-coloring (lowest-id roots, sorted adjacency), or None if bipartite.
/// The BFS layering keeps the cycle short; the LCA reconstruction keeps it
/// simple.
fn first_odd_cycle(g: &Graph, alive: &[bool]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    const UNSET: u8 = 2;
    let mut color = vec![UNSET; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if !alive[start] || color[start] != UNSET {
            continue;
        }
        color[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !alive[w] {
                    continue;
                }
                if color[w] == UNSET {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Some(odd_cycle_through(&parent, &depth, u, w));
                }
            }
        }
    }
    None
}

/// Shortest odd cycle of the restricted graph via BFS from every alive
/// vertex: a conflict edge (u, w) under the BFS rooted at s closes an odd
/// walk of length depth(u)+depth(w)+1, and the minimum over all roots is
/// attained by a walk that reduces to a shortest odd cycle.
fn shortest_odd_cycle(g: &Graph, alive: &[usize]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut best: Option<(usize, usize, usize, usize)> = None; // (len, src, u, w)
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let alive_mask = {
        let mut mask = vec![false; n];
        for &v in alive {
            mask[v] = true;
        }
        mask
    };
    for &src in alive {
        depth.fill(usize::MAX);
        depth[src] = 0;
        parent[src] = usize::MAX;
        queue.clear();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            // nothing below this layer can beat the incumbent
            if let Some((len, ..)) = best {
                if 2 * depth[u] + 1 >= len {
                    break;
                }
            }
            for &w in g.neighbors(u) {
                if !alive_mask[w] {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if depth[w] % 2 == depth[u] % 2 {
                    let len = depth[u] + depth[w] + 1;
                    if best.is_none_or(|(b, ..)| len < b) {
                        best = Some((len, src, u, w));
                    }
                }
            }
        }
    }
    let (_, src, u, w) = best?;
    // re-run the winning BFS to rebuild its tree, then extract the cycle
    depth.fill(usize::MAX);
    depth[src] = 0;
    parent[src] = usize::MAX;
    queue.clear();
    queue.push_back(src);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if alive_mask[y] && depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut walk = Vec::new();
    let mut x = u;
    while x != usize::MAX {
        walk.push(x);
        x = parent[x];
    }
    walk.reverse(); // src .. u
    let mut tail = Vec::new();
    let mut y = w;
    while y != usize::MAX {
        tail.push(y);
        y = parent[y];
    }
    tail.pop(); // drop src, already at the front
    walk.extend(tail); // w, parent(w), .. , child of src
    Some(extract_simple_odd_cycle(walk))
}

/// Reduces a closed odd walk (cyclic vertex sequence, consecutive entries
/// adjacent) to a simple odd cycle: split at a repeated vertex into two
/// closed walks whose lengths sum to the original; exactly one is odd, and
/// it is strictly shorter, so recursion bottoms out at a simple cycle.
fn extract_simple_odd_cycle(mut walk: Vec<usize>) -> Vec<usize> {
    'outer: loop {
        debug_assert!(walk.len() % 2 == 1);
        for i in 0..walk.len() {
            for j in (i + 1)..walk.len() {
                if walk[i] == walk[j] {
                    let piece: Vec<usize> = walk[i..j].to_vec();
                    if piece.len() % 2 == 1 {
                        walk = piece;
                    } else {
                        walk.drain(i..j);
                    }
                    continue 'outer;
                }
            }
        }
        return walk;
    }
}

/// Branch-and-bound state for one connected component.
struct OctSearch<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    forbidden: Vec<bool>,
    deleted: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> OctSearch<'a> {
    fn new(g: &'a Graph, budget: u64) -> OctSearch<'a> {
        let n = g.vertex_count();
        let best = greedy_transversal(g, vec![true; n]);
        OctSearch {
            g,
            alive: vec![true; n],
            forbidden: vec![false; n],
            deleted: Vec::new(),
            best,
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn run(&mut self) {
        self.recurse();
        self.best.sort_unstable();
    }

    /// Greedy packing of vertex-disjoint odd cycles in the alive graph,
    /// stopping as soon as `need` cycles are found. Each packed cycle needs
    /// one more deletion, so a return value >= need proves a prune.
    fn packing_bound_reaches(&self, need: usize) -> bool {
        let mut local = self.alive.clone();
        let mut count = 0;
        while count < need {
            match first_odd_cycle(self.g, &local) {
                None => return false,
                Some(cycle) => {
                    for v in cycle {
                        local[v] = false;
                    }
                    count += 1;
                }
            }
        }
        true
    }

    fn find_cycle(&self) -> Option<Vec<usize>> {
        let alive_ids: Vec<usize> = (0..self.g.vertex_count())
            .filter(|&v| self.alive[v])
            .collect();
        // all-source shortest search is worth it only on small residues
        if alive_ids.len() <= 64 {
            shortest_odd_cycle(self.g, &alive_ids)
        } else {
            first_odd_cycle(self.g, &self.alive)
        }
    }

    fn recurse(&mut self) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.deleted.len() >= self.best.len() {
            return;
        }
        let cycle = match self.find_cycle() {
            None => {
                self.best = self.deleted.clone();
                return;
            }
            Some(c) => c,
        };
        // improving on best needs < best - deleted further deletions
        let need = self.best.len() - self.deleted.len();
        if self.packing_bound_reaches(need) {
            return;
        }
        let mut locally_forbidden = Vec::new();
        for &v in &cycle {
            if self.forbidden[v] {
                continue;
            }
            self.alive[v] = false;
            self.deleted.push(v);
            self.recurse();
            self.deleted.pop();
            self.alive[v] = true;
            // later branches must hit the cycle elsewhere
            self.forbidden[v] = true;
            locally_forbidden.push(v);
            if self.exhausted {
                break;
            }
        }
        for v in locally_forbidden {
            self.forbidden[v] = false;
        }
    }
}
