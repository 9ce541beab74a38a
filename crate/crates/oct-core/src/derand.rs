//! Deterministic replacement for the random cover sampling: builds three
//! candidate covers R1, R2, R3 from a maximal triangle packing such that at
//! least one of them is as good as a random draw, and each is guaranteed a
//! linear number of dead vertices.
//!
//! Outline: packed vertices of degree > 100 (inside the packed subgraph) and
//! their triangles form the "high" part, which every cover swallows whole.
//! On the remaining "low" triangles, a greedy maximal distance-3 independent
//! set is split into three equal blocks; cover i contains the block's
//! neighborhood (so block vertices end up isolated, hence dead) and exactly
//! two vertices of every low triangle, each vertex appearing in exactly two
//! covers.

use crate::cliques::TrianglePacking;
use crate::graph::Graph;
use thiserror::Error;

/// Packed vertices with more neighbors than this inside the packed subgraph
/// count as high degree. Fixed, not configurable: the dead-vertex counting
/// argument depends on this exact constant.
pub const HIGH_DEGREE_THRESHOLD: usize = 100;

#[derive(Debug, Error)]
pub enum DerandError {
    #[error("graph contains a 4-clique {0:?}; the construction requires a K4-free input")]
    K4Found([usize; 4]),
}

/// Everything the construction produces, kept for inspection: the covers
/// plus the intermediate sets they were built from. All vectors are sorted
/// ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerandState {
    /// Packed vertices of degree > 100 inside the packed subgraph.
    pub high_degree: Vec<usize>,
    /// Vertices of packing triangles that contain a high-degree vertex.
    pub high_part: Vec<usize>,
    /// Vertices of the remaining packing triangles.
    pub low_part: Vec<usize>,
    /// Greedy maximal distance-3 independent set inside the low part.
    pub independent: Vec<usize>,
    /// Three disjoint blocks of the independent set, each of size
    /// floor(|independent| / 3), taken in id order; the leftover vertices
    /// belong to no block.
    pub blocks: [Vec<usize>; 3],
    /// The three candidate covers.
    pub covers: [Vec<usize>; 3],
}

impl DerandState {
    /// Cover restricted to the low part.
    pub fn cover_low(&self, idx: usize) -> Vec<usize> {
        self.covers[idx]
            .iter()
            .copied()
            .filter(|&v| self.low_part.binary_search(&v).is_ok())
            .collect()
    }
}

fn mask(n: usize, vs: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vs {
        m[v] = true;
    }
    m
}

/// Builds the three covers from a maximal triangle packing of a K4-free
/// graph. Deterministic: triangles are processed in lexicographic order and
/// every labeling choice is resolved by lowest id. Detecting a 4-clique
/// (which the distance-3 machinery cannot survive) is a hard error.
pub fn construct_derandomized_r(
    g: &Graph,
    t: &TrianglePacking,
) -> Result<DerandState, DerandError> {
    let n = g.vertex_count();
    let vt = t.covered();
    let in_vt = mask(n, vt);

    let high_degree: Vec<usize> = vt
        .iter()
        .copied()
        .filter(|&v| {
            g.neighbors(v).iter().filter(|&&w| in_vt[w]).count() > HIGH_DEGREE_THRESHOLD
        })
        .collect();
    let is_high_degree = mask(n, &high_degree);

    let mut triangles = t.triangles();
    triangles.sort_unstable();
    let mut high_part: Vec<usize> = Vec::new();
    let mut low_triangles = Vec::new();
    for tri in &triangles {
        if tri.vertices().iter().any(|&v| is_high_degree[v]) {
            high_part.extend(tri.vertices());
        } else {
            low_triangles.push(*tri);
        }
    }
    high_part.sort_unstable();
    let in_high = mask(n, &high_part);
    let low_part: Vec<usize> = vt.iter().copied().filter(|&v| !in_high[v]).collect();
    let in_low = mask(n, &low_part);

    // the greedy picks lowest ids first, so the result is already sorted
    let independent = g.greedy_distance3_mis(&low_part);
    let block_len = independent.len() / 3;
    let blocks: [Vec<usize>; 3] = [
        independent[..block_len].to_vec(),
        independent[block_len..2 * block_len].to_vec(),
        independent[2 * block_len..3 * block_len].to_vec(),
    ];

    // cover i starts as the high part plus the low-graph neighborhood of
    // block i; `touch` records, per low vertex, the unique block vertex it
    // is adjacent to (unique because block vertices are pairwise more than
    // distance 3 apart)
    let mut in_cover = [mask(n, &high_part), mask(n, &high_part), mask(n, &high_part)];
    let mut touch: Vec<Option<(usize, usize)>> = vec![None; n];
    for (i, block) in blocks.iter().enumerate() {
        for &v in block {
            for &w in g.neighbors(v) {
                if in_low[w] {
                    in_cover[i][w] = true;
                    debug_assert!(
                        touch[w].is_none(),
                        "two distance-3 independent vertices share a neighbor"
                    );
                    touch[w] = Some((i, v));
                }
            }
        }
    }

    // give every low triangle exactly two vertices in each cover
    for tri in &low_triangles {
        let vs = tri.vertices();
        let mut relevant: Option<(usize, usize)> = None;
        for &x in &vs {
            if let Some(pair) = touch[x] {
                match relevant {
                    None => relevant = Some(pair),
                    Some(prev) => assert_eq!(
                        prev, pair,
                        "two block vertices reach one triangle; independence violated"
                    ),
                }
            }
        }
        let (constrained, labels) = match relevant {
            // untouched triangle: plain rotation over ascending labels
            None => (None, vs),
            Some((i, v)) => {
                let adjacent: Vec<usize> = vs
                    .iter()
                    .copied()
                    .filter(|&x| touch[x] == Some((i, v)))
                    .collect();
                if adjacent.len() == 3 {
                    return Err(DerandError::K4Found([v, vs[0], vs[1], vs[2]]));
                }
                // cover i must receive the vertices v can see; a pair of one
                // adjacent vertex is completed by the lower-id avoider
                let pair: [usize; 2] = match adjacent.len() {
                    2 => [adjacent[0], adjacent[1]],
                    1 => {
                        let avoider = vs
                            .iter()
                            .copied()
                            .filter(|&x| x != adjacent[0])
                            .min()
                            .expect("triangle has three vertices");
                        let mut p = [adjacent[0], avoider];
                        p.sort_unstable();
                        p
                    }
                    _ => unreachable!("relevant pair implies an adjacent vertex"),
                };
                let third = vs
                    .iter()
                    .copied()
                    .find(|x| !pair.contains(x))
                    .expect("triangle has three vertices");
                (Some(i), [pair[0], pair[1], third])
            }
        };
        // rotation: first listed cover takes {x1,x2}, the next {x2,x3},
        // the last {x3,x1}; the constrained cover (if any) goes first and
        // the other two follow in ascending index order
        let cover_order: [usize; 3] = match constrained {
            None => [0, 1, 2],
            Some(i) => {
                let mut rest = (0..3).filter(|&j| j != i);
                let i1 = rest.next().unwrap();
                let i2 = rest.next().unwrap();
                [i, i1, i2]
            }
        };
        let [x1, x2, x3] = labels;
        in_cover[cover_order[0]][x1] = true;
        in_cover[cover_order[0]][x2] = true;
        in_cover[cover_order[1]][x2] = true;
        in_cover[cover_order[1]][x3] = true;
        in_cover[cover_order[2]][x3] = true;
        in_cover[cover_order[2]][x1] = true;
    }

    let covers = in_cover.map(|m| (0..n).filter(|&v| m[v]).collect::<Vec<usize>>());
    Ok(DerandState {
        high_degree,
        high_part,
        low_part,
        independent,
        blocks,
        covers,
    })
}
