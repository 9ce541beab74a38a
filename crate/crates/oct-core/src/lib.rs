//! Bipartization (odd cycle transversal) toolkit for disk intersection graphs.
//!
//! The pipeline reduces an input graph to a K4-free core, builds three
//! candidate transversals from maximal triangle packings (directly, through a
//! randomized or derandomized partial cover, and through recursion on the
//! triangles straddling the packing), and keeps the smallest. An exact
//! branch-and-bound solver doubles as the optimum oracle for ratio
//! measurement, and the `bounds` module evaluates the closed-form worst-case
//! ratio the construction guarantees.

pub mod bounds;
pub mod cliques;
pub mod derand;
pub mod experiment;
pub mod geometry;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod solver;

pub use graph::{BipartitenessCertificate, Graph, GraphError, VertexMap};

/// splitmix64 step; used to derive independent seeds from a base seed.
pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed derivation for independent random streams. `salt` encodes what the
/// derived stream is for (repeat index, recursion depth, instance id); the
/// same (seed, salt) pair always yields the same stream.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    splitmix64(seed ^ splitmix64(salt))
}
