//! Minimum passage times on `Z^d` from the origin to `(n, 0, .., 0)`,
//! with and without a cap on the number of edges.
//!
//! All solvers work on finite boxes `[-r, r]^d`. A result is `certified`
//! when it provably equals the value on the whole lattice.

mod dijkstra;
mod hop_dp;
mod oracle;
mod probe;

pub use dijkstra::{unconstrained_time, unconstrained_time_with_cap, DEFAULT_RADIUS_CAP_FACTOR};
pub use hop_dp::{default_box_radius, hop_constrained_time, hop_constrained_time_auto};
pub use oracle::enumerate_paths_oracle;
pub use probe::{linear_path_tail_probe, straight_path_time, straight_segment_time};

use crate::error::{domain, Result};
use crate::weights::{LatticeEdgeKey, PassageSampler, PassageTimeSpec, SeedContext};

/// One trial of the lattice model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub dimension: usize,
    pub times: PassageTimeSpec,
    pub ctx: SeedContext,
}

impl LatticeSpec {
    pub fn new(dimension: usize, times: PassageTimeSpec, ctx: SeedContext) -> Result<Self> {
        if dimension < 2 {
            return domain(format!("lattice dimension must be at least 2, got {dimension}"));
        }
        Ok(LatticeSpec {
            dimension,
            times,
            ctx,
        })
    }

    pub fn sampler(&self) -> PassageSampler {
        PassageSampler::new(self.times, &self.ctx)
    }

    /// Passage time of the edge between adjacent points `u` and `v`.
    pub fn edge_time(&self, u: &[i64], v: &[i64]) -> Result<f64> {
        edge_time_with(&self.sampler(), u, v)
    }

    /// Sum of edge times along `path`, accumulated from its first vertex.
    pub fn path_time(&self, path: &[Vec<i64>]) -> Result<f64> {
        let s = self.sampler();
        path.windows(2)
            .try_fold(0.0, |acc, w| Ok(acc + edge_time_with(&s, &w[0], &w[1])?))
    }
}

pub(crate) fn edge_time_with(s: &PassageSampler, u: &[i64], v: &[i64]) -> Result<f64> {
    let axis = adjacent_axis(u, v)
        .ok_or_else(|| crate::Error::Domain(format!("{u:?} and {v:?} are not adjacent")))?;
    let base = if u[axis] < v[axis] { u } else { v };
    Ok(s.time(LatticeEdgeKey { base, axis }))
}

fn adjacent_axis(u: &[i64], v: &[i64]) -> Option<usize> {
    if u.len() != v.len() {
        return None;
    }
    let mut axis = None;
    for (a, (x, y)) in u.iter().zip(v).enumerate() {
        match (x - y).abs() {
            0 => {}
            1 if axis.is_none() => axis = Some(a),
            _ => return None,
        }
    }
    axis
}

/// The box `[-radius, radius]^d` with row-major (lexicographic) vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxRegion {
    pub radius: usize,
    pub dimension: usize,
}

impl BoxRegion {
    pub fn new(radius: usize, dimension: usize) -> Self {
        BoxRegion { radius, dimension }
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.side().pow(self.dimension as u32)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        let r = self.radius as i64;
        p.len() == self.dimension && p.iter().all(|&c| -r <= c && c <= r)
    }

    pub fn is_boundary(&self, p: &[i64]) -> bool {
        let r = self.radius as i64;
        p.iter().any(|&c| c.abs() == r)
    }

    /// Index increases with the lexicographic order of coordinates.
    pub fn index(&self, p: &[i64]) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let side = self.side();
        Some(p.iter().fold(0, |acc, &c| acc * side + (c + self.radius as i64) as usize))
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let side = self.side();
        let mut out = vec![0i64; self.dimension];
        for c in out.iter_mut().rev() {
            *c = (idx % side) as i64 - self.radius as i64;
            idx /= side;
        }
        out
    }
}

/// Output of the lattice solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedResult {
    /// `T_n(k)`, or `T_n` for the unconstrained solver.
    pub value: f64,
    /// Edges on the witnessing path (`N_n(k)`).
    pub hop_count: usize,
    /// Vertices from the origin to `(n, 0, .., 0)`.
    pub path: Vec<Vec<i64>>,
    /// Whether `value` equals the whole-lattice value.
    pub certified: bool,
    /// Hop budget; `None` for the unconstrained solver.
    pub k: Option<usize>,
    pub n: usize,
    /// Box radius of the final computation.
    pub box_radius: usize,
}

impl ConstrainedResult {
    pub(crate) fn trivial(d: usize, k: Option<usize>, box_radius: usize) -> Self {
        ConstrainedResult {
            value: 0.0,
            hop_count: 0,
            path: vec![vec![0; d]],
            certified: true,
            k,
            n: 0,
            box_radius,
        }
    }

    /// Self-avoiding, unit steps, correct endpoints.
    pub fn path_is_valid(&self) -> bool {
        let Some(first) = self.path.first() else {
            return false;
        };
        let last = self.path.last().unwrap();
        let d = first.len();
        let mut target = vec![0i64; d];
        target[0] = self.n as i64;
        if first.iter().any(|&c| c != 0) || *last != target {
            return false;
        }
        if self.path.windows(2).any(|w| adjacent_axis(&w[0], &w[1]).is_none()) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.path.iter().all(|p| seen.insert(p.clone())) && self.hop_count + 1 == self.path.len()
    }
}

pub(crate) fn target_point(d: usize, n: usize) -> Vec<i64> {
    let mut t = vec![0i64; d];
    t[0] = n as i64;
    t
}

/// Removes loops from a vertex walk, keeping the first visit of each vertex
/// and jumping to the last departure from it.
pub(crate) fn remove_cycles(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    let mut pos = std::collections::HashMap::new();
    for &v in walk {
        if let Some(&p) = pos.get(&v) {
            for dropped in out.drain(p + 1..) {
                pos.remove(&dropped);
            }
        } else {
            pos.insert(v, out.len());
            out.push(v);
        }
    }
    out
}
