//! Minimum-weight trees on the complete graph `K_n` with random edge weights.
//!
//! Vertices are labelled `1..=n`. Weights are read through
//! [`CompleteInstance::weight`], which either evaluates the counter-based
//! sampler, reads a materialized matrix, or reads a frozen test matrix.

mod exact;
mod greedy;
mod mst;

pub use exact::{exact_min_tree, exact_min_tree_with_budget, pruefer_min_spanning_weight, DEFAULT_ENUMERATION_BUDGET};
pub use greedy::{greedy_spanning_path, min_tree_upper_bound, random_prefix, sample_yj, GreedyPathResult};
pub use mst::{kruskal_mst, threshold_lower_bound, UnionFind};

use crate::error::{domain, Result};
use crate::weights::mix::{domain as tag, KeyState};
use crate::weights::{edge_uniform_from, weight_from_uniform, SeedContext, TreeWeightSpec};

/// Largest `n` for which [`CompleteInstance::cached`] materializes the weight matrix.
pub const MATRIX_CACHE_THRESHOLD: usize = 1024;

#[derive(Debug, Clone)]
enum Source {
    Sampled(KeyState),
    /// Row-major `n x n`, symmetric; the diagonal is unused.
    Matrix(Vec<f64>),
}

/// `K_n` with weights given by a [`TreeWeightSpec`] and a trial seed.
#[derive(Debug, Clone)]
pub struct CompleteInstance {
    n: usize,
    spec: TreeWeightSpec,
    ctx: SeedContext,
    source: Source,
    frozen: bool,
}

impl CompleteInstance {
    pub fn new(n: usize, spec: TreeWeightSpec, ctx: SeedContext) -> Result<Self> {
        if n < 2 {
            return domain(format!("complete graph needs n >= 2, got {n}"));
        }
        spec.validate()?;
        Ok(CompleteInstance {
            n,
            spec,
            ctx,
            source: Source::Sampled(ctx.root(tag::TREE_WEIGHT)),
            frozen: false,
        })
    }

    /// Materializes the weight matrix when `n <= MATRIX_CACHE_THRESHOLD`.
    /// Values are unchanged; only access cost differs.
    #[must_use]
    pub fn cached(self) -> Self {
        if self.n > MATRIX_CACHE_THRESHOLD || matches!(self.source, Source::Matrix(_)) {
            return self;
        }
        let n = self.n;
        let mut m = vec![0.0; n * n];
        for i in 1..=n {
            for j in (i + 1)..=n {
                let w = self.weight(i, j);
                m[(i - 1) * n + (j - 1)] = w;
                m[(j - 1) * n + (i - 1)] = w;
            }
        }
        CompleteInstance {
            source: Source::Matrix(m),
            ..self
        }
    }

    /// Test hook: an explicit symmetric weight matrix replaces the sampler.
    /// `rows[i][j]` is the weight of `{i+1, j+1}`; the diagonal is ignored.
    pub fn from_matrix(spec: TreeWeightSpec, rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return domain("frozen matrix needs at least 2 vertices");
        }
        spec.validate()?;
        let mut m = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return domain("frozen matrix must be square");
            }
            for (j, &w) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if !(0.0..=1.0).contains(&w) {
                    return domain(format!("weight ({},{}) = {w} outside [0,1]", i + 1, j + 1));
                }
                if rows[j][i] != w {
                    return domain(format!("frozen matrix not symmetric at ({},{})", i + 1, j + 1));
                }
                m[i * n + j] = w;
            }
        }
        Ok(CompleteInstance {
            n,
            spec,
            ctx: SeedContext::new(0, 0),
            source: Source::Matrix(m),
            frozen: true,
        })
    }

    /// Builds a frozen instance from the upper triangle `w(1,2), w(1,3), .., w(n-1,n)`.
    pub fn from_upper_triangle(spec: TreeWeightSpec, n: usize, upper: &[f64]) -> Result<Self> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return domain("upper triangle length must be n(n-1)/2");
        }
        let mut rows = vec![vec![0.0; n]; n];
        let pairs = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
        for ((i, j), &w) in pairs.zip(upper) {
            rows[i][j] = w;
            rows[j][i] = w;
        }
        Self::from_matrix(spec, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &TreeWeightSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &SeedContext {
        &self.ctx
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// Weight of `{i, j}`, `1 <= i != j <= n`.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        match &self.source {
            Source::Matrix(m) => m[(i - 1) * self.n + (j - 1)],
            Source::Sampled(root) => weight_from_uniform(
                self.spec.alpha,
                self.spec.edge_scale(i, j),
                edge_uniform_from(*root, i, j),
            ),
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return domain(format!("vertex {v} outside 1..={}", self.n));
        }
        Ok(())
    }
}

/// A tree of `K_n` given by its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeResult {
    /// Edges as `(i, j)` with `i < j`, in the order the solver produced them.
    pub edges: Vec<(usize, usize)>,
    /// Sum of edge weights, accumulated in ascending weight order.
    pub total_weight: f64,
    pub edge_count: usize,
}

impl TreeResult {
    pub(crate) fn from_edges(inst: &CompleteInstance, edges: Vec<(usize, usize)>) -> Self {
        let mut ws: Vec<f64> = edges.iter().map(|&(i, j)| inst.weight(i, j)).collect();
        let total_weight = canonical_sum(&mut ws);
        TreeResult {
            edge_count: edges.len(),
            edges,
            total_weight,
        }
    }

    /// True when the edges form a single tree (acyclic and connected on the
    /// vertices they touch).
    pub fn is_tree(&self, n: usize) -> bool {
        let mut uf = UnionFind::new(n + 1);
        let mut touched = vec![false; n + 1];
        for &(i, j) in &self.edges {
            if i == 0 || j == 0 || i > n || j > n || i == j || !uf.union(i, j) {
                return false;
            }
            touched[i] = true;
            touched[j] = true;
        }
        let verts: Vec<usize> = (1..=n).filter(|&v| touched[v]).collect();
        verts.len() == self.edges.len() + 1 || (self.edges.is_empty() && verts.is_empty())
    }
}

/// Sums in ascending order so equal edge multisets give bit-identical totals.
pub(crate) fn canonical_sum(ws: &mut [f64]) -> f64 {
    ws.sort_unstable_by(f64::total_cmp);
    ws.iter().sum()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The 4-vertex matrix used across the unit tests:
    /// w12=.9 w13=.2 w14=.8 w23=.5 w24=.1 w34=.3.
    pub fn frozen4() -> CompleteInstance {
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        CompleteInstance::from_upper_triangle(spec, 4, &[0.9, 0.2, 0.8, 0.5, 0.1, 0.3]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_preserves_values() {
        let spec = TreeWeightSpec::new(0.3, 0.5, true).unwrap();
        let inst = CompleteInstance::new(30, spec, SeedContext::new(4, 2)).unwrap();
        let cached = inst.clone().cached();
        for i in 1..=30 {
            for j in 1..=30 {
                if i != j {
                    assert_eq!(inst.weight(i, j).to_bits(), cached.weight(i, j).to_bits());
                    assert_eq!(inst.weight(i, j), inst.weight(j, i));
                }
            }
        }
    }

    #[test]
    fn frozen_matrix_validation() {
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        assert!(CompleteInstance::from_matrix(spec, &[vec![0.0, 0.5], vec![0.4, 0.0]]).is_err());
        assert!(CompleteInstance::from_matrix(spec, &[vec![0.0, 1.5], vec![1.5, 0.0]]).is_err());
        assert!(CompleteInstance::new(1, spec, SeedContext::new(0, 0)).is_err());
        let f = fixtures::frozen4();
        assert_eq!(f.weight(4, 2), 0.1);
    }

    #[test]
    fn tree_structure_check() {
        let f = fixtures::frozen4();
        let t = TreeResult::from_edges(&f, vec![(1, 3), (3, 4)]);
        assert!(t.is_tree(4));
        let cyc = TreeResult::from_edges(&f, vec![(1, 3), (3, 4), (1, 4)]);
        assert!(!cyc.is_tree(4));
        let forest = TreeResult::from_edges(&f, vec![(1, 3), (2, 4)]);
        assert!(!forest.is_tree(4));
    }
}
