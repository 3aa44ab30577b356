use super::greedy::check_tau;
use super::{CompleteInstance, TreeResult};
use crate::error::{domain, Result};

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Kruskal on all `n(n-1)/2` edges; ties broken by the lexicographic edge key.
pub fn kruskal_mst(inst: &CompleteInstance) -> TreeResult {
    let n = inst.n();
    let mut edges: Vec<(f64, u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            edges.push((inst.weight(i, j), i as u32, j as u32));
        }
    }
    edges.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut uf = UnionFind::new(n + 1);
    let mut tree = Vec::with_capacity(n - 1);
    let mut total = 0.0;
    for (w, i, j) in edges {
        if uf.union(i as usize, j as usize) {
            tree.push((i as usize, j as usize));
            total += w;
            if tree.len() == n - 1 {
                break;
            }
        }
    }
    // Accepted in ascending weight order, so `total` is already the canonical sum.
    TreeResult {
        edge_count: tree.len(),
        edges: tree,
        total_weight: total,
    }
}

/// Certified lower bound on `M_n(tau)` from counting light edges:
/// with `R = #{e : w(e) < (gamma/n)^alpha}`, every tree with `tau` edges
/// carries at least `tau - R` edges of weight `>= (gamma/n)^alpha`.
pub fn threshold_lower_bound(inst: &CompleteInstance, tau: usize, gamma: f64) -> Result<f64> {
    check_tau(inst, tau)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return domain(format!("gamma must be positive, got {gamma}"));
    }
    let n = inst.n();
    let threshold = (gamma / n as f64).powf(inst.spec().alpha);
    let mut light = 0usize;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if inst.weight(i, j) < threshold {
                light += 1;
            }
        }
    }
    Ok(tau.saturating_sub(light) as f64 * threshold)
}
