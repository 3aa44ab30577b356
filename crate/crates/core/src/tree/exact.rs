use super::greedy::check_tau;
use super::{canonical_sum, CompleteInstance, TreeResult};
use crate::error::{domain, Error, Result};

/// Default cap on `C(n, tau+1) * (tau+1)^2` for [`exact_min_tree`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

const EXACT_MAX_N: usize = 12;
const PRUEFER_MAX_N: usize = 9;

/// Exact `M_n(tau)` for small instances.
///
/// Weights are positive, so an optimal tree with at least `tau` edges has
/// exactly `tau` edges on `tau + 1` vertices, and for a fixed vertex set the
/// best tree is that set's MST. Subsets are scanned in lexicographic order and
/// only a strictly lighter subset replaces the incumbent.
pub fn exact_min_tree(inst: &CompleteInstance, tau: usize) -> Result<TreeResult> {
    exact_min_tree_with_budget(inst, tau, DEFAULT_ENUMERATION_BUDGET)
}

pub fn exact_min_tree_with_budget(
    inst: &CompleteInstance,
    tau: usize,
    budget: u64,
) -> Result<TreeResult> {
    check_tau(inst, tau)?;
    let n = inst.n();
    let size = tau + 1;
    let cost = binomial(n as u64, size as u64).saturating_mul((size * size) as u64);
    if n > EXACT_MAX_N || cost > budget {
        return Err(Error::Capacity(format!(
            "exact enumeration for n = {n}, tau = {tau} needs {cost} steps (budget {budget}, n <= {EXACT_MAX_N})"
        )));
    }

    let mut subset: Vec<usize> = (1..=size).collect();
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    let mut scratch = Vec::with_capacity(tau);
    loop {
        let edges = subset_mst(inst, &subset);
        scratch.clear();
        scratch.extend(edges.iter().map(|&(i, j)| inst.weight(i, j)));
        let w = canonical_sum(&mut scratch);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, edges));
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    let (_, edges) = best.expect("at least one subset");
    let tree = TreeResult::from_edges(inst, edges);
    assert_eq!(tree.edge_count, tau);
    Ok(tree)
}

/// Prim on the complete graph induced by `verts`; edges returned with `i < j`.
fn subset_mst(inst: &CompleteInstance, verts: &[usize]) -> Vec<(usize, usize)> {
    let s = verts.len();
    let mut in_tree = vec![false; s];
    let mut dist = vec![f64::INFINITY; s];
    let mut link = vec![0usize; s];
    let mut edges = Vec::with_capacity(s - 1);
    in_tree[0] = true;
    for b in 1..s {
        dist[b] = inst.weight(verts[0], verts[b]);
    }
    for _ in 1..s {
        let mut pick = usize::MAX;
        for b in 0..s {
            if !in_tree[b] && (pick == usize::MAX || dist[b] < dist[pick]) {
                pick = b;
            }
        }
        in_tree[pick] = true;
        let (u, v) = (verts[link[pick]], verts[pick]);
        edges.push((u.min(v), u.max(v)));
        for b in 0..s {
            if !in_tree[b] {
                let w = inst.weight(verts[pick], verts[b]);
                if w < dist[b] {
                    dist[b] = w;
                    link[b] = pick;
                }
            }
        }
    }
    edges
}

/// Advances a sorted `k`-subset of `1..=n` to its lexicographic successor.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - (k - 1 - i) {
            c[i] += 1;
            for t in (i + 1)..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Minimum spanning-tree weight by enumerating all `n^(n-2)` labelled trees
/// through their Pruefer sequences. Independent of any MST algorithm.
pub fn pruefer_min_spanning_weight(inst: &CompleteInstance) -> Result<f64> {
    let n = inst.n();
    if n > PRUEFER_MAX_N {
        return domain(format!("Pruefer enumeration limited to n <= {PRUEFER_MAX_N}, got {n}"));
    }
    if n == 2 {
        return Ok(inst.weight(1, 2));
    }
    let len = n - 2;
    let mut seq = vec![1usize; len];
    let mut best = f64::INFINITY;
    let mut ws = Vec::with_capacity(n - 1);
    let mut degree = vec![0usize; n + 1];
    loop {
        ws.clear();
        for (a, b) in pruefer_decode(&seq, n, &mut degree) {
            ws.push(inst.weight(a, b));
        }
        best = best.min(canonical_sum(&mut ws));
        // Odometer over {1..n}^(n-2).
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            if seq[pos] < n {
                seq[pos] += 1;
                break;
            }
            seq[pos] = 1;
        }
    }
}

/// Standard Pruefer decoding; `degree` is scratch space of length `n + 1`.
pub(crate) fn pruefer_decode(seq: &[usize], n: usize, degree: &mut [usize]) -> Vec<(usize, usize)> {
    degree.iter_mut().for_each(|d| *d = 1);
    degree[0] = 0;
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::frozen4;
    use super::super::{kruskal_mst, TreeResult};
    use super::*;
    use crate::weights::{SeedContext, TreeWeightSpec};
    use std::collections::HashSet;

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![1, 2, 3];
        let mut count = 1;
        while next_combination(&mut c, 6) {
            count += 1;
        }
        assert_eq!(count, 20);
        assert_eq!(c, vec![4, 5, 6]);
        assert_eq!(binomial(12, 6), 924);
    }

    #[test]
    fn pruefer_decodes_to_distinct_trees() {
        let n = 5;
        let mut seen = HashSet::new();
        let mut degree = vec![0; n + 1];
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        let inst = CompleteInstance::new(n, spec, SeedContext::new(0, 0)).unwrap();
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    let mut e = pruefer_decode(&[a, b, c], n, &mut degree);
                    e.sort_unstable();
                    assert!(TreeResult::from_edges(&inst, e.clone()).is_tree(n));
                    seen.insert(e);
                }
            }
        }
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn frozen_exact_values() {
        let f = frozen4();
        let t1 = exact_min_tree(&f, 1).unwrap();
        assert_eq!(t1.total_weight, 0.1);
        assert_eq!(t1.edges, vec![(2, 4)]);
        // Best 2-edge tree: {2,3,4} with 0.1 + 0.3.
        let t2 = exact_min_tree(&f, 2).unwrap();
        assert!((t2.total_weight - 0.4).abs() < 1e-15);
        assert_eq!(exact_min_tree(&f, 3).unwrap().total_weight, kruskal_mst(&f).total_weight);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        let inst = CompleteInstance::new(12, spec, SeedContext::new(1, 1)).unwrap();
        assert!(matches!(
            exact_min_tree_with_budget(&inst, 5, 1000),
            Err(Error::Capacity(_))
        ));
        let big = CompleteInstance::new(13, spec, SeedContext::new(1, 1)).unwrap();
        assert!(matches!(exact_min_tree(&big, 2), Err(Error::Capacity(_))));
    }

    #[test]
    fn pruefer_matches_kruskal_small() {
        let spec = TreeWeightSpec::new(0.6, 0.5, true).unwrap();
        for seed in 0..5 {
            let inst = CompleteInstance::new(6, spec, SeedContext::new(seed, 0)).unwrap();
            assert_eq!(
                pruefer_min_spanning_weight(&inst).unwrap(),
                kruskal_mst(&inst).total_weight
            );
        }
        let big = CompleteInstance::new(10, spec, SeedContext::new(0, 0)).unwrap();
        assert!(pruefer_min_spanning_weight(&big).is_err());
    }
}
