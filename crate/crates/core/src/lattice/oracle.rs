use super::{edge_time_with, target_point, BoxRegion, LatticeSpec};
use crate::error::{domain, Result};
use crate::weights::PassageSampler;

const ORACLE_MAX_RADIUS: usize = 4;
const ORACLE_MAX_HOPS: usize = 9;

/// Minimum passage time over all self-avoiding paths with at most `k` edges
/// from the origin to `(n, 0)` inside the box, by exhaustive depth-first
/// search. `None` when no such path exists.
///
/// Times are accumulated from the origin in path order, the same order the
/// hop DP uses, so equal optima agree bit for bit.
pub fn enumerate_paths_oracle(
    spec: &LatticeSpec,
    n: usize,
    k: usize,
    box_radius: usize,
) -> Result<Option<f64>> {
    if spec.dimension != 2 || box_radius > ORACLE_MAX_RADIUS || k > ORACLE_MAX_HOPS {
        return domain(format!(
            "path oracle limited to d = 2, radius <= {ORACLE_MAX_RADIUS}, k <= {ORACLE_MAX_HOPS}; \
             got d = {}, radius = {box_radius}, k = {k}",
            spec.dimension
        ));
    }
    let region = BoxRegion::new(box_radius, 2);
    let target = target_point(2, n);
    if !region.contains(&target) {
        return Ok(None);
    }
    let mut search = Search {
        sampler: spec.sampler(),
        region,
        target,
        k,
        on_path: vec![false; region.vertex_count()],
        path: vec![vec![0, 0]],
        best: None,
    };
    search.on_path[region.index(&[0, 0]).unwrap()] = true;
    search.extend(0.0)?;
    Ok(search.best)
}

struct Search {
    sampler: PassageSampler,
    region: BoxRegion,
    target: Vec<i64>,
    k: usize,
    on_path: Vec<bool>,
    path: Vec<Vec<i64>>,
    best: Option<f64>,
}

impl Search {
    fn extend(&mut self, acc: f64) -> Result<()> {
        let here = self.path.last().unwrap().clone();
        if here == self.target {
            self.best = Some(self.best.map_or(acc, |b| b.min(acc)));
            return Ok(());
        }
        if self.path.len() > self.k {
            return Ok(());
        }
        for axis in 0..2 {
            for step in [-1i64, 1] {
                let mut next = here.clone();
                next[axis] += step;
                let Some(idx) = self.region.index(&next) else {
                    continue;
                };
                if self.on_path[idx] {
                    continue;
                }
                let t = edge_time_with(&self.sampler, &here, &next)?;
                self.on_path[idx] = true;
                self.path.push(next);
                self.extend(acc + t)?;
                self.path.pop();
                self.on_path[idx] = false;
            }
        }
        Ok(())
    }
}
