//! Triangle and K4 machinery: enumeration, vertex-disjoint packings, the
//! family of triangles sticking out of a packing, and an exact maximum
//! packing search for diagnostics.
//!
//! Greedy packing order is lexicographic unless an explicit order is given;
//! every function here is deterministic.

use crate::graph::Graph;

/// Three distinct vertices, stored sorted. Construction does not verify the
/// edges exist; the enumeration functions only ever build triangles whose
/// edges are present, and callers constructing them by hand own that
/// obligation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    vs: [usize; 3],
}

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Triangle {
        assert!(a != b && b != c && a != c, "triangle vertices must be distinct");
        let mut vs = [a, b, c];
        vs.sort_unstable();
        Triangle { vs }
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.vs
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vs.contains(&v)
    }

    pub fn intersects(&self, other: &Triangle) -> bool {
        self.vs.iter().any(|&v| other.contains(v))
    }
}

/// Vertex-disjoint packing of small cliques. Members are triangles
/// everywhere except the K4 packing, whose members have four vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrianglePacking {
    members: Vec<Vec<usize>>,
    covered: Vec<usize>,
}

impl TrianglePacking {
    fn from_members(members: Vec<Vec<usize>>) -> TrianglePacking {
        let mut covered: Vec<usize> = members.iter().flatten().copied().collect();
        covered.sort_unstable();
        debug_assert!(
            covered.windows(2).all(|w| w[0] < w[1]),
            "packing members must be vertex-disjoint"
        );
        TrianglePacking { members, covered }
    }

    /// Packing from explicit triangles; panics if they are not pairwise
    /// vertex-disjoint.
    pub fn from_triangles(triangles: &[Triangle]) -> TrianglePacking {
        let members: Vec<Vec<usize>> =
            triangles.iter().map(|t| t.vertices().to_vec()).collect();
        let p = TrianglePacking::from_members(members);
        assert_eq!(
            p.covered.len(),
            3 * triangles.len(),
            "triangles must be pairwise vertex-disjoint"
        );
        p
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// Members as triangles; only valid on packings with 3-vertex members.
    pub fn triangles(&self) -> Vec<Triangle> {
        self.members
            .iter()
            .map(|m| {
                assert_eq!(m.len(), 3, "packing member is not a triangle");
                Triangle::new(m[0], m[1], m[2])
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union of all members, sorted ascending.
    pub fn covered(&self) -> &[usize] {
        &self.covered
    }

    pub fn covers(&self, v: usize) -> bool {
        self.covered.binary_search(&v).is_ok()
    }
}

/// All triangles of g, each exactly once, in lexicographic order. Standard
/// ordered enumeration: u < v adjacent, then w > v in the sorted
/// neighborhood intersection.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            if v <= u {
                continue;
            }
            // merge-intersect the two sorted neighbor lists above v
            let (mut i, mut j) = (0, 0);
            let (nu, nv) = (g.neighbors(u), g.neighbors(v));
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if nu[i] > v {
                            out.push(Triangle { vs: [u, v, nu[i]] });
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    out
}

/// Greedy packing respecting the given family order: each triangle is taken
/// iff vertex-disjoint from everything taken before it.
pub fn greedy_packing_in_order(family: &[Triangle]) -> TrianglePacking {
    let mut taken: Vec<Triangle> = Vec::new();
    let mut used: Vec<usize> = Vec::new();
    for t in family {
        if t.vertices().iter().all(|v| used.binary_search(v).is_err()) {
            taken.push(*t);
            for v in t.vertices() {
                let pos = used.binary_search(&v).unwrap_err();
                used.insert(pos, v);
            }
        }
    }
    TrianglePacking::from_triangles(&taken)
}

/// Maximal triangle packing of g by lexicographic greedy.
pub fn maximal_triangle_packing(g: &Graph) -> TrianglePacking {
    greedy_packing_in_order(&enumerate_triangles(g))
}

/// Maximal packing restricted to the given family, lexicographic greedy
/// (the family is sorted and deduplicated first).
pub fn maximal_packing_of(family: &[Triangle]) -> TrianglePacking {
    let mut sorted = family.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    greedy_packing_in_order(&sorted)
}

/// Maximal K4 packing of g by lexicographic greedy over all 4-cliques.
/// Enumeration and packing are fused: a 4-clique touching an already
/// covered vertex is skipped without being materialized.
pub fn maximal_k4_packing(g: &Graph) -> TrianglePacking {
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    let mut members = Vec::new();
    for u in 0..n {
        if covered[u] {
            continue;
        }
        for &v in g.neighbors(u) {
            if v <= u || covered[v] || covered[u] {
                continue;
            }
            let common_uv: Vec<usize> = intersect_above(g.neighbors(u), g.neighbors(v), v);
            for (wi, &w) in common_uv.iter().enumerate() {
                if covered[w] || covered[u] || covered[v] {
                    continue;
                }
                for &x in &common_uv[wi + 1..] {
                    if !covered[x] && g.has_edge(w, x) {
                        members.push(vec![u, v, w, x]);
                        for y in [u, v, w, x] {
                            covered[y] = true;
                        }
                        break;
                    }
                }
                if covered[u] {
                    break;
                }
            }
            if covered[u] {
                break;
            }
        }
    }
    TrianglePacking::from_members(members)
}

/// Sorted intersection of two sorted lists, keeping values > floor.
fn intersect_above(a: &[usize], b: &[usize], floor: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] > floor {
                    out.push(a[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Triangles of g with at least one vertex outside the packing's covered
/// set, in lexicographic order.
pub fn outside_triangles(g: &Graph, t: &TrianglePacking) -> Vec<Triangle> {
    enumerate_triangles(g)
        .into_iter()
        .filter(|tri| tri.vertices().iter().any(|&v| !t.covers(v)))
        .collect()
}

/// Exact maximum disjoint sub-family size by branch and bound, or None if
/// the node budget runs out before the search completes. Never returns a
/// number it has not proven optimal.
pub fn maximum_packing_size(family: &[Triangle], budget: u64) -> Option<usize> {
    let mut sorted = family.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut search = PackingSearch {
        family: &sorted,
        used: Vec::new(),
        best: 0,
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.recurse(0, 0);
    if search.exhausted {
        None
    } else {
        Some(search.best)
    }
}

struct PackingSearch<'a> {
    family: &'a [Triangle],
    used: Vec<usize>,
    best: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl PackingSearch<'_> {
    fn recurse(&mut self, idx: usize, count: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        self.best = self.best.max(count);
        // every remaining triangle taken is the best conceivable outcome
        if idx >= self.family.len() || count + (self.family.len() - idx) <= self.best {
            return;
        }
        let t = self.family[idx];
        // branch: take the triangle if it fits, then skip it
        if t.vertices().iter().all(|v| !self.used.contains(v)) {
            self.used.extend(t.vertices());
            self.recurse(idx + 1, count + 1);
            self.used.truncate(self.used.len() - 3);
        }
        self.recurse(idx + 1, count);
    }
}
