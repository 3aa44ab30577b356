use super::{canonical_sum, CompleteInstance};
use crate::error::{domain, Result};
use crate::weights::mix::KeyedStream;

/// The nearest-unvisited-neighbour spanning path started at vertex 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyPathResult {
    pub order: Vec<usize>,
    /// `step_weights[j-1]` is the weight of the `j`-th path edge.
    pub step_weights: Vec<f64>,
    /// Running sums of `step_weights` in path order.
    pub prefix_sums: Vec<f64>,
}

impl GreedyPathResult {
    /// Weight of the whole path, summed in ascending order.
    pub fn total(&self) -> f64 {
        canonical_sum(&mut self.step_weights.clone())
    }

    /// Weight of the first `tau` edges, `1 <= tau <= n - 1`, summed in
    /// ascending order so it compares bit-exactly with the other tree solvers
    /// when the edge sets coincide.
    pub fn prefix_weight(&self, tau: usize) -> Result<f64> {
        if tau == 0 || tau > self.step_weights.len() {
            return domain(format!(
                "tau must lie in 1..={}, got {tau}",
                self.step_weights.len()
            ));
        }
        let mut ws = self.step_weights[..tau].to_vec();
        Ok(canonical_sum(&mut ws))
    }
}

/// From the current vertex step to the lightest unvisited vertex; ties go
/// to the smallest label. `O(n^2)` weight reads, `O(n)` memory.
pub fn greedy_spanning_path(inst: &CompleteInstance) -> GreedyPathResult {
    let n = inst.n();
    let mut remaining: Vec<usize> = (2..=n).collect();
    let mut order = Vec::with_capacity(n);
    let mut step_weights = Vec::with_capacity(n - 1);
    let mut prefix_sums = Vec::with_capacity(n - 1);
    let mut cur = 1;
    let mut acc = 0.0;
    order.push(cur);
    while !remaining.is_empty() {
        let mut best_pos = 0;
        let mut best_w = inst.weight(cur, remaining[0]);
        for (pos, &a) in remaining.iter().enumerate().skip(1) {
            let w = inst.weight(cur, a);
            if w < best_w {
                best_w = w;
                best_pos = pos;
            }
        }
        cur = remaining.remove(best_pos);
        order.push(cur);
        step_weights.push(best_w);
        acc += best_w;
        prefix_sums.push(acc);
    }
    GreedyPathResult {
        order,
        step_weights,
        prefix_sums,
    }
}

/// Feasible upper bound on `M_n(tau)`: the first `tau` greedy edges form a tree.
pub fn min_tree_upper_bound(inst: &CompleteInstance, tau: usize) -> Result<f64> {
    check_tau(inst, tau)?;
    greedy_spanning_path(inst).prefix_weight(tau)
}

pub(crate) fn check_tau(inst: &CompleteInstance, tau: usize) -> Result<()> {
    if tau == 0 || tau >= inst.n() {
        return domain(format!("tau must lie in 1..={}, got {tau}", inst.n() - 1));
    }
    Ok(())
}

/// `Y_j = min { w(a_j, a) : a not in {a_1, .., a_j} }` for `prefix = (a_1, .., a_j)`.
pub fn sample_yj(inst: &CompleteInstance, prefix: &[usize]) -> Result<f64> {
    let n = inst.n();
    let j = prefix.len();
    if j == 0 || j >= n {
        return domain(format!("prefix length must lie in 1..={}, got {j}", n - 1));
    }
    let mut used = vec![false; n + 1];
    for &a in prefix {
        inst.check_vertex(a)?;
        if std::mem::replace(&mut used[a], true) {
            return domain(format!("prefix repeats vertex {a}"));
        }
    }
    let last = prefix[j - 1];
    let y = (1..=n)
        .filter(|&a| !used[a])
        .map(|a| inst.weight(last, a))
        .fold(f64::INFINITY, f64::min);
    Ok(y)
}

/// `j` distinct labels from `1..=n`, uniform over ordered tuples (partial Fisher-Yates).
pub fn random_prefix(n: usize, j: usize, stream: &mut KeyedStream) -> Vec<usize> {
    assert!(j <= n);
    let mut pool: Vec<usize> = (1..=n).collect();
    for i in 0..j {
        let pick = i + stream.below((n - i) as u64) as usize;
        pool.swap(i, pick);
    }
    pool.truncate(j);
    pool
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::frozen4;
    use super::*;
    use crate::weights::{SeedContext, TreeWeightSpec};

    #[test]
    fn frozen_greedy_path() {
        let g = greedy_spanning_path(&frozen4());
        assert_eq!(g.order, vec![1, 3, 4, 2]);
        assert_eq!(g.step_weights, vec![0.2, 0.3, 0.1]);
        assert_eq!(g.prefix_weight(2).unwrap(), 0.2 + 0.3);
        assert_eq!(min_tree_upper_bound(&frozen4(), 2).unwrap(), 0.2 + 0.3);
    }

    #[test]
    fn two_vertices() {
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        let inst = CompleteInstance::new(2, spec, SeedContext::new(1, 0)).unwrap();
        let g = greedy_spanning_path(&inst);
        assert_eq!(g.order, vec![1, 2]);
        assert_eq!(g.step_weights, vec![inst.weight(1, 2)]);
    }

    #[test]
    fn ties_go_to_smallest_label() {
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        let inst =
            CompleteInstance::from_upper_triangle(spec, 4, &[0.5, 0.3, 0.3, 0.2, 0.2, 0.2]).unwrap();
        let g = greedy_spanning_path(&inst);
        assert_eq!(g.order, vec![1, 3, 2, 4]);
    }

    #[test]
    fn upper_bound_edges() {
        let spec = TreeWeightSpec::homogeneous(0.4).unwrap();
        let inst = CompleteInstance::new(25, spec, SeedContext::new(8, 1)).unwrap();
        let g = greedy_spanning_path(&inst);
        assert_eq!(min_tree_upper_bound(&inst, 24).unwrap(), g.total());
        let first = (2..=25).map(|a| inst.weight(1, a)).fold(f64::INFINITY, f64::min);
        assert_eq!(min_tree_upper_bound(&inst, 1).unwrap(), first);
        assert!(min_tree_upper_bound(&inst, 0).is_err());
        assert!(min_tree_upper_bound(&inst, 25).is_err());
        let mut seen = g.order.clone();
        seen.sort_unstable();
        assert_eq!(seen, (1..=25).collect::<Vec<_>>());
        assert!(g.prefix_sums.windows(2).all(|w| w[0] <= w[1]));
        // Each step is the minimum over the still-unvisited vertices.
        for (j, &z) in g.step_weights.iter().enumerate() {
            let here = g.order[j];
            let m = g.order[j + 1..]
                .iter()
                .map(|&a| inst.weight(here, a))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(z, m);
            assert_eq!(z, inst.weight(here, g.order[j + 1]));
        }
    }

    #[test]
    fn yj_cases() {
        let f = frozen4();
        assert_eq!(sample_yj(&f, &[1, 3]).unwrap(), 0.3);
        assert_eq!(sample_yj(&f, &[1]).unwrap(), 0.2);
        assert!(sample_yj(&f, &[1, 1]).is_err());
        assert!(sample_yj(&f, &[1, 2, 3, 4]).is_err());
        assert!(sample_yj(&f, &[]).is_err());
        assert!(sample_yj(&f, &[5]).is_err());

        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        let inst = CompleteInstance::new(3, spec, SeedContext::new(2, 2)).unwrap();
        let y = sample_yj(&inst, &[1]).unwrap();
        assert_eq!(y, inst.weight(1, 2).min(inst.weight(1, 3)));
        assert!(y <= 1.0);
    }

    #[test]
    fn prefixes_are_distinct() {
        let mut s = SeedContext::new(5, 5).stream(crate::weights::mix::domain::PREFIX, 0);
        for j in [1, 5, 20] {
            let mut p = random_prefix(20, j, &mut s);
            assert_eq!(p.len(), j);
            p.sort_unstable();
            p.dedup();
            assert_eq!(p.len(), j);
            assert!(p.iter().all(|&v| (1..=20).contains(&v)));
        }
    }
}
