use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{target_point, BoxRegion, ConstrainedResult, LatticeSpec};
use crate::error::{Error, Result};
use crate::weights::LatticeEdgeKey;

/// Largest box radius tried by [`unconstrained_time`], as a multiple of `n`.
pub const DEFAULT_RADIUS_CAP_FACTOR: usize = 64;

/// `T_n`: unconstrained minimum passage time, by Dijkstra on boxes of radius
/// `2n, 4n, ..` up to `64n`. Never returns an uncertified value.
pub fn unconstrained_time(spec: &LatticeSpec, n: usize) -> Result<ConstrainedResult> {
    unconstrained_time_with_cap(spec, n, DEFAULT_RADIUS_CAP_FACTOR * n)
}

pub fn unconstrained_time_with_cap(
    spec: &LatticeSpec,
    n: usize,
    cap_radius: usize,
) -> Result<ConstrainedResult> {
    if n == 0 {
        return Ok(ConstrainedResult::trivial(spec.dimension, None, 0));
    }
    let mut radius = 2 * n;
    while radius <= cap_radius {
        if let Some(res) = dijkstra_in_box(spec, n, radius) {
            return Ok(res);
        }
        radius *= 2;
    }
    Err(Error::Capacity(format!(
        "unconstrained passage time for n = {n} not certified within box radius {cap_radius}"
    )))
}

/// Labels are compared as `(time, hops, parent index)`, so the returned path
/// has the fewest hops among optimal ones and then the lexicographically
/// smallest parents. `None` when a boundary vertex settles strictly before
/// the target's time.
fn dijkstra_in_box(spec: &LatticeSpec, n: usize, radius: usize) -> Option<ConstrainedResult> {
    let d = spec.dimension;
    let region = BoxRegion::new(radius, d);
    let side = region.side();
    let count = region.vertex_count();
    let strides: Vec<usize> = (0..d).map(|a| side.pow((d - 1 - a) as u32)).collect();
    let sampler = spec.sampler();

    let origin = region.index(&vec![0; d]).expect("origin in box");
    let target = region.index(&target_point(d, n)).expect("target in box");

    let mut dist = vec![f64::INFINITY; count];
    let mut hops = vec![u32::MAX; count];
    let mut parent = vec![usize::MAX; count];
    let mut settled = vec![false; count];
    let mut heap = BinaryHeap::new();
    dist[origin] = 0.0;
    hops[origin] = 0;
    // Nonnegative f64 order matches the order of their bit patterns.
    heap.push(Reverse((0u64, 0u32, origin)));
    let mut boundary_best = f64::INFINITY;
    let mut p = vec![0i64; d];

    while let Some(Reverse((bits, h, u))) = heap.pop() {
        if settled[u] || bits != dist[u].to_bits() || h != hops[u] {
            continue;
        }
        settled[u] = true;
        p.copy_from_slice(&region.coords(u));
        if u == target {
            break;
        }
        if region.is_boundary(&p) {
            boundary_best = boundary_best.min(dist[u]);
        }
        for axis in 0..d {
            for step in [-1i64, 1] {
                let c = p[axis] + step;
                if c.abs() > radius as i64 {
                    continue;
                }
                let v = if step < 0 { u - strides[axis] } else { u + strides[axis] };
                if settled[v] {
                    continue;
                }
                let t = if step > 0 {
                    sampler.time(LatticeEdgeKey { base: &p, axis })
                } else {
                    p[axis] -= 1;
                    let t = sampler.time(LatticeEdgeKey { base: &p, axis });
                    p[axis] += 1;
                    t
                };
                let nd = dist[u] + t;
                let nh = h + 1;
                let better = nd < dist[v]
                    || (nd == dist[v] && (nh < hops[v] || (nh == hops[v] && u < parent[v])));
                if better {
                    let fresh = nd != dist[v] || nh != hops[v];
                    dist[v] = nd;
                    hops[v] = nh;
                    parent[v] = u;
                    if fresh {
                        heap.push(Reverse((nd.to_bits(), nh, v)));
                    }
                }
            }
        }
    }

    let value = dist[target];
    if boundary_best < value {
        return None;
    }
    let mut walk = vec![target];
    let mut v = target;
    while v != origin {
        v = parent[v];
        walk.push(v);
    }
    walk.reverse();
    let path: Vec<Vec<i64>> = walk.iter().map(|&i| region.coords(i)).collect();
    Some(ConstrainedResult {
        value,
        hop_count: path.len() - 1,
        path,
        certified: true,
        k: None,
        n,
        box_radius: radius,
    })
}
