//! Disk instances and their intersection graphs. Everything here is exact
//! integer arithmetic; the solver itself never sees geometry, so this module
//! only feeds instance construction and testing.

use crate::graph::Graph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("disk {id} has non-positive radius {r}")]
    InvalidRadius { id: usize, r: i64 },
    #[error("duplicate disk id {0}")]
    DuplicateId(usize),
    #[error("invalid radius range {r_min}..{r_max}")]
    RadiusRange { r_min: i64, r_max: i64 },
    #[error("invalid box side {0}")]
    InvalidSide(i64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Closed disk with integer center and positive integer radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disk {
    pub id: usize,
    pub cx: i64,
    pub cy: i64,
    pub r: i64,
}

/// A set of disks with unique ids, kept sorted by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskInstance {
    disks: Vec<Disk>,
}

/// True iff the closed disks intersect: (cx1-cx2)^2 + (cy1-cy2)^2 <=
/// (r1+r2)^2 in exact arithmetic. Tangency counts. Correct for the entire
/// i64 coordinate range: |dx| fits u128 after widening, and if the sum of
/// squares overflows u128 it necessarily exceeds the right-hand side, which
/// always fits.
pub fn disks_intersect(a: &Disk, b: &Disk) -> bool {
    let dx = (a.cx as i128 - b.cx as i128).unsigned_abs();
    let dy = (a.cy as i128 - b.cy as i128).unsigned_abs();
    let rs = (a.r as i128 + b.r as i128).unsigned_abs();
    match (dx * dx).checked_add(dy * dy) {
        Some(lhs) => lhs <= rs * rs,
        None => false,
    }
}

impl DiskInstance {
    /// Validates radii and id uniqueness; stores disks sorted by id.
    pub fn new(mut disks: Vec<Disk>) -> Result<DiskInstance, GeometryError> {
        for d in &disks {
            if d.r < 1 {
                return Err(GeometryError::InvalidRadius { id: d.id, r: d.r });
            }
        }
        disks.sort_by_key(|d| d.id);
        for w in disks.windows(2) {
            if w[0].id == w[1].id {
                return Err(GeometryError::DuplicateId(w[0].id));
            }
        }
        Ok(DiskInstance { disks })
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// Same disks with ids renumbered 0..n-1 in id order.
    pub fn normalized(&self) -> DiskInstance {
        let disks = self
            .disks
            .iter()
            .enumerate()
            .map(|(i, d)| Disk { id: i, ..*d })
            .collect();
        DiskInstance { disks }
    }

    /// Axis-aligned bounding box of the disk extents as
    /// (min_x, min_y, max_x, max_y), or None for an empty instance. Widened
    /// to i128 so extreme centers cannot overflow.
    pub fn bounding_box(&self) -> Option<(i128, i128, i128, i128)> {
        self.disks.iter().fold(None, |acc, d| {
            let (x0, y0) = (d.cx as i128 - d.r as i128, d.cy as i128 - d.r as i128);
            let (x1, y1) = (d.cx as i128 + d.r as i128, d.cy as i128 + d.r as i128);
            Some(match acc {
                None => (x0, y0, x1, y1),
                Some((ax0, ay0, ax1, ay1)) => {
                    (ax0.min(x0), ay0.min(y0), ax1.max(x1), ay1.max(y1))
                }
            })
        })
    }
}

/// Intersection graph: one vertex per disk (in id order), an edge wherever
/// two distinct disks intersect.
pub fn build_disk_graph(inst: &DiskInstance) -> Graph {
    let ds = inst.disks();
    let n = ds.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if disks_intersect(&ds[i], &ds[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pair enumeration yields valid edges")
}

/// Generates n disks with centers uniform on the integer grid [0,side]^2 and
/// radii uniform in [r_min,r_max]. Deterministic per seed: for each disk in
/// id order the generator draws cx, cy, r in that order.
pub fn generate_random_instance(
    n: usize,
    r_min: i64,
    r_max: i64,
    side: i64,
    seed: u64,
) -> Result<DiskInstance, GeometryError> {
    if r_min < 1 || r_min > r_max {
        return Err(GeometryError::RadiusRange { r_min, r_max });
    }
    if side < 1 {
        return Err(GeometryError::InvalidSide(side));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let disks = (0..n)
        .map(|id| {
            let cx = rng.gen_range(0..=side);
            let cy = rng.gen_range(0..=side);
            let r = rng.gen_range(r_min..=r_max);
            Disk { id, cx, cy, r }
        })
        .collect();
    Ok(DiskInstance { disks })
}

/// Parses the disk file format: one `id cx cy r` line per disk, integers,
/// `#` comments ignored.
pub fn parse_disk_file(text: &str) -> Result<DiskInstance, GeometryError> {
    let mut disks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(GeometryError::Parse {
                line: line_no,
                msg: format!("expected `id cx cy r`, got {} fields", fields.len()),
            });
        }
        let parse_i64 = |s: &str| -> Result<i64, GeometryError> {
            s.parse().map_err(|_| GeometryError::Parse {
                line: line_no,
                msg: format!("bad integer `{s}`"),
            })
        };
        let id: usize = fields[0].parse().map_err(|_| GeometryError::Parse {
            line: line_no,
            msg: format!("bad disk id `{}`", fields[0]),
        })?;
        disks.push(Disk {
            id,
            cx: parse_i64(fields[1])?,
            cy: parse_i64(fields[2])?,
            r: parse_i64(fields[3])?,
        });
    }
    DiskInstance::new(disks)
}

/// Writes the disk file format, one disk per line in id order.
pub fn write_disk_file(inst: &DiskInstance) -> String {
    let mut out = String::new();
    for d in inst.disks() {
        let _ = writeln!(out, "{} {} {} {}", d.id, d.cx, d.cy, d.r);
    }
    out
}
