//! Simple undirected graphs with dense vertex ids, plus the structural
//! primitives the solver needs: bipartiteness certificates, induced
//! subgraphs with id lifting, degeneracy orderings, and the greedy
//! distance-3 independent set used by the derandomized cover construction.
//!
//! All tie-breaking is by lowest vertex id, so every operation here is a
//! deterministic function of its input.

use std::collections::VecDeque;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("header declares {declared} edges, file has {found} distinct edges")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Undirected simple graph. Vertices are `0..n`; neighbor lists are sorted
/// ascending and symmetric, with no self-loops and no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Outcome of a bipartiteness check: either a proper 2-coloring or an odd
/// cycle witnessing non-bipartiteness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipartitenessCertificate {
    /// `colors[v]` is 0 or 1 and differs across every edge.
    TwoColoring(Vec<u8>),
    /// Distinct vertices forming a cycle of odd length >= 3; consecutive
    /// entries (cyclically) are adjacent.
    OddCycle(Vec<usize>),
}

impl BipartitenessCertificate {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, BipartitenessCertificate::TwoColoring(_))
    }
}

/// Maps vertex ids of a derived (induced) graph back to the graph it came
/// from. `to_original[new_id] = old_id`, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub to_original: Vec<usize>,
}

impl VertexMap {
    pub fn lift_one(&self, v: usize) -> usize {
        self.to_original[v]
    }

    /// Lifts a set of derived-graph ids to original ids, sorted ascending.
    pub fn lift(&self, vs: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vs.iter().map(|&v| self.to_original[v]).collect();
        out.sort_unstable();
        out
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as (u, v) pairs with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Parses the edge-list text format: an optional `p <n> <m>` header,
    /// then one `u v` pair per line, 0-based. Anything after `#` on a line
    /// is a comment. Without a header, n is one more than the largest id.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut seen_tokens = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let first = tokens.next().unwrap();
            if first == "p" {
                if seen_tokens || header.is_some() {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "header must come first".into(),
                    });
                }
                let parse = |t: Option<&str>| -> Result<usize, GraphError> {
                    t.and_then(|s| s.parse().ok()).ok_or(GraphError::Parse {
                        line: line_no,
                        msg: "expected `p <n> <m>`".into(),
                    })
                };
                let n = parse(tokens.next())?;
                let m = parse(tokens.next())?;
                if tokens.next().is_some() {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "trailing tokens after header".into(),
                    });
                }
                header = Some((n, m));
                continue;
            }
            seen_tokens = true;
            let u: usize = first.parse().map_err(|_| GraphError::Parse {
                line: line_no,
                msg: format!("bad vertex id `{first}`"),
            })?;
            let v: usize = tokens
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(GraphError::Parse {
                    line: line_no,
                    msg: "expected `u v`".into(),
                })?;
            if tokens.next().is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: "trailing tokens after edge".into(),
                });
            }
            edges.push((u, v));
        }
        let n = match header {
            Some((n, _)) => n,
            None => edges
                .iter()
                .map(|&(u, v)| u.max(v) + 1)
                .max()
                .unwrap_or(0),
        };
        let g = Graph::from_edges(n, &edges)?;
        if let Some((_, m)) = header {
            if m != g.edge_count() {
                return Err(GraphError::EdgeCountMismatch {
                    declared: m,
                    found: g.edge_count(),
                });
            }
        }
        Ok(g)
    }

    /// Writes the edge-list format with a `p <n> <m>` header and sorted
    /// `u v` lines (u < v).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Induced subgraph on the given vertices (deduplicated), with the map
    /// back to original ids. Panics if a vertex is out of range.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, VertexMap) {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let n = self.vertex_count();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_id[w];
                if j != usize::MAX {
                    adj[i].push(j);
                }
            }
            // source list sorted and new ids order-preserving, so adj[i] is sorted
            m += adj[i].len();
        }
        (
            Graph { adj, m: m / 2 },
            VertexMap { to_original: keep },
        )
    }

    /// Deletes a vertex set: the induced subgraph on the complement, with a
    /// remapping table so solutions can be lifted back.
    pub fn delete_vertices(&self, s: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
        let n = self.vertex_count();
        let mut drop = vec![false; n];
        for &v in s {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !drop[v]).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// BFS 2-coloring. Returns either a proper 2-coloring or an odd cycle.
    pub fn is_bipartite(&self) -> BipartitenessCertificate {
        let n = self.vertex_count();
        const UNSET: u8 = 2;
        let mut color = vec![UNSET; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start] != UNSET {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == UNSET {
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return BipartitenessCertificate::OddCycle(odd_cycle_through(
                            &parent, &depth, u, w,
                        ));
                    }
                }
            }
        }
        BipartitenessCertificate::TwoColoring(color)
    }

    /// Degeneracy and a witnessing elimination order via repeated
    /// minimum-degree peeling (ties by lowest id).
    pub fn degeneracy(&self) -> (usize, Vec<usize>) {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let n = self.vertex_count();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut peeled = vec![false; n];
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..n).map(|v| Reverse((deg[v], v))).collect();
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        while let Some(Reverse((d, v))) = heap.pop() {
            if peeled[v] || d != deg[v] {
                continue; // stale entry
            }
            peeled[v] = true;
            degeneracy = degeneracy.max(d);
            order.push(v);
            for &w in &self.adj[v] {
                if !peeled[w] {
                    deg[w] -= 1;
                    heap.push(Reverse((deg[w], w)));
                }
            }
        }
        (degeneracy, order)
    }

    /// Greedy maximal distance-3 independent set within the subgraph induced
    /// by `domain`: repeatedly pick the lowest-id remaining candidate and
    /// discard every vertex within distance 3 of it (distances measured in
    /// the induced subgraph, which stays fixed while candidates shrink).
    pub fn greedy_distance3_mis(&self, domain: &[usize]) -> Vec<usize> {
        let (sub, map) = self.induced_subgraph(domain);
        let k = sub.vertex_count();
        let mut alive = vec![true; k];
        let mut picked = Vec::new();
        for v in 0..k {
            if !alive[v] {
                continue;
            }
            picked.push(map.lift_one(v));
            // remove the closed ball of radius 3 around v from the candidates
            let mut dist = vec![usize::MAX; k];
            let mut queue = VecDeque::new();
            dist[v] = 0;
            alive[v] = false;
            queue.push_back(v);
            while let Some(u) = queue.pop_front() {
                if dist[u] == 3 {
                    continue;
                }
                for &w in sub.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        alive[w] = false;
                        queue.push_back(w);
                    }
                }
            }
        }
        picked
    }

    /// Connected components, each sorted ascending, ordered by smallest
    /// member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = vec![start];
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Reconstructs an odd cycle from a BFS conflict edge (u, w) where both
/// endpoints got the same color: walk both up to their lowest common tree
/// ancestor. Tree paths to the ancestor are disjoint below it, so the cycle
/// is simple; equal colors mean equal depth parity, so its length is odd.
pub(crate) fn odd_cycle_through(
    parent: &[usize],
    depth: &[usize],
    u: usize,
    w: usize,
) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // left ends at the common ancestor; right also ends there, drop it
    right.pop();
    right.reverse();
    left.extend(right);
    debug_assert!(left.len() % 2 == 1 && left.len() >= 3);
    left
}
