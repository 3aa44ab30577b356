use super::{remove_cycles, ConstrainedResult, LatticeSpec};
use crate::error::{domain, Error, Result};
use crate::weights::LatticeEdgeKey;

const NONE: u32 = u32::MAX;

/// Box radius used by the experiment drivers before certification: `min(k, 3n)`,
/// but never below `n`.
pub fn default_box_radius(n: usize, k: usize) -> usize {
    k.min(3 * n).max(n)
}

/// Box vertices that can lie on a walk of at most `k` edges from the origin to
/// the target, i.e. `|v|_1 + |v - t|_1 <= k`, with adjacency and edge times.
struct Region {
    d: usize,
    coords: Vec<i64>,
    from_origin: Vec<u32>,
    to_target: Vec<u32>,
    boundary: Vec<bool>,
    /// `2d` neighbour slots per vertex, in lexicographic order of the neighbour.
    nbr: Vec<u32>,
    time: Vec<f64>,
    origin: usize,
    target: usize,
}

/// Neighbour directions in lexicographic order of `v + dir`:
/// `-e_0, -e_1, .., -e_{d-1}, +e_{d-1}, .., +e_0`.
fn directions(d: usize) -> Vec<(usize, i64)> {
    (0..d).map(|a| (a, -1)).chain((0..d).rev().map(|a| (a, 1))).collect()
}

impl Region {
    fn build(spec: &LatticeSpec, n: usize, k: usize, radius: usize) -> Region {
        let d = spec.dimension;
        let r = radius as i64;
        let slack = ((k - n) / 2) as i64;
        let mut lo = vec![-slack.min(r); d];
        let mut hi = vec![slack.min(r); d];
        hi[0] = (n as i64 + slack).min(r);
        lo[0] = -slack.min(r);
        let extent: Vec<usize> = (0..d).map(|a| (hi[a] - lo[a] + 1) as usize).collect();
        let sub_count: usize = extent.iter().product();
        let mut local = vec![NONE; sub_count];

        let mut coords = Vec::new();
        let mut from_origin = Vec::new();
        let mut to_target = Vec::new();
        let mut boundary = Vec::new();
        let mut p = lo.clone();
        let mut lin = 0usize;
        loop {
            let fo: i64 = p.iter().map(|c| c.abs()).sum();
            let ft: i64 = (p[0] - n as i64).abs() + p[1..].iter().map(|c| c.abs()).sum::<i64>();
            if (fo + ft) as usize <= k {
                local[lin] = from_origin.len() as u32;
                coords.extend_from_slice(&p);
                from_origin.push(fo as u32);
                to_target.push(ft as u32);
                boundary.push(p.iter().any(|c| c.abs() == r));
            }
            lin += 1;
            // odometer, last coordinate fastest
            let mut a = d;
            loop {
                if a == 0 {
                    break;
                }
                a -= 1;
                if p[a] < hi[a] {
                    p[a] += 1;
                    break;
                }
                p[a] = lo[a];
            }
            if lin == sub_count {
                break;
            }
        }

        let len = from_origin.len();
        let dirs = directions(d);
        let local_index = |q: &[i64]| -> u32 {
            let mut idx = 0usize;
            for a in 0..d {
                if q[a] < lo[a] || q[a] > hi[a] {
                    return NONE;
                }
                idx = idx * extent[a] + (q[a] - lo[a]) as usize;
            }
            local[idx]
        };
        let mut nbr = vec![NONE; len * 2 * d];
        let mut q = vec![0i64; d];
        for i in 0..len {
            q.copy_from_slice(&coords[i * d..(i + 1) * d]);
            for (slot, &(a, step)) in dirs.iter().enumerate() {
                q[a] += step;
                nbr[i * 2 * d + slot] = local_index(&q);
                q[a] -= step;
            }
        }

        // Forward edges first; backward slots copy from the neighbour.
        let sampler = spec.sampler();
        let mut time = vec![f64::NAN; len * 2 * d];
        for i in 0..len {
            let base = &coords[i * d..(i + 1) * d];
            for (slot, &(axis, step)) in dirs.iter().enumerate() {
                if step == 1 && nbr[i * 2 * d + slot] != NONE {
                    time[i * 2 * d + slot] = sampler.time(LatticeEdgeKey { base, axis });
                }
            }
        }
        for i in 0..len {
            for (slot, &(axis, step)) in dirs.iter().enumerate() {
                let j = nbr[i * 2 * d + slot];
                if step == -1 && j != NONE {
                    // In j's list, +e_axis sits at slot 2d-1-axis.
                    time[i * 2 * d + slot] = time[j as usize * 2 * d + (2 * d - 1 - axis)];
                }
            }
        }

        let mut origin_pt = vec![0i64; d];
        let origin = local_index(&origin_pt) as usize;
        origin_pt[0] = n as i64;
        let target = local_index(&origin_pt) as usize;
        Region {
            d,
            coords,
            from_origin,
            to_target,
            boundary,
            nbr,
            time,
            origin,
            target,
        }
    }

    fn point(&self, i: usize) -> Vec<i64> {
        self.coords[i * self.d..(i + 1) * self.d].to_vec()
    }
}

/// `T_n(k)`: minimum passage time over paths of at most `k` edges inside the
/// box of radius `box_radius`.
///
/// Labels `d_h(v)` are the least time of a walk with at most `h` edges; with
/// nonnegative times the walk minimum equals the self-avoiding path minimum,
/// and the reconstructed walk is made self-avoiding by cutting loops. Only
/// states `(v, h)` with `|v|_1 <= h` and `h + |v - t|_1 <= k` are relaxed.
///
/// `certified` holds when `box_radius >= k`, or when every boundary label of
/// the box is at least the returned value, so no path leaving the box can be
/// shorter.
pub fn hop_constrained_time(
    spec: &LatticeSpec,
    n: usize,
    k: usize,
    box_radius: usize,
) -> Result<ConstrainedResult> {
    if box_radius < n {
        return domain(format!("box radius {box_radius} is smaller than n = {n}"));
    }
    if k < n {
        return Err(Error::Infeasible { n, k });
    }
    if n == 0 {
        return Ok(ConstrainedResult::trivial(spec.dimension, Some(k), box_radius));
    }

    let region = Region::build(spec, n, k, box_radius);
    let len = region.from_origin.len();
    let deg = 2 * region.d;
    let mut prev = vec![f64::INFINITY; len];
    let mut cur = vec![f64::INFINITY; len];
    prev[region.origin] = 0.0;
    // Predecessor log: 0 keeps the vertex (fewer hops), s > 0 came from neighbour slot s - 1.
    let mut log = vec![0u8; k * len];
    let mut boundary_best = f64::INFINITY;

    for h in 1..=k {
        let row = &mut log[(h - 1) * len..h * len];
        for i in 0..len {
            if region.from_origin[i] as usize > h || region.to_target[i] as usize + h > k {
                cur[i] = f64::INFINITY;
                continue;
            }
            let mut best = prev[i];
            let mut code = 0u8;
            let links = &region.nbr[i * deg..(i + 1) * deg];
            let times = &region.time[i * deg..(i + 1) * deg];
            for s in 0..deg {
                let j = links[s];
                if j == NONE {
                    continue;
                }
                let c = prev[j as usize] + times[s];
                if c < best {
                    best = c;
                    code = s as u8 + 1;
                }
            }
            cur[i] = best;
            row[i] = code;
            if region.boundary[i] && best < boundary_best {
                boundary_best = best;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    let value = prev[region.target];
    debug_assert!(value.is_finite());

    let mut walk = vec![region.target];
    let mut v = region.target;
    for h in (1..=k).rev() {
        let code = log[(h - 1) * len + v];
        if code != 0 {
            v = region.nbr[v * deg + code as usize - 1] as usize;
            walk.push(v);
        }
    }
    debug_assert_eq!(v, region.origin);
    walk.reverse();
    let path: Vec<Vec<i64>> = remove_cycles(&walk).into_iter().map(|i| region.point(i)).collect();

    Ok(ConstrainedResult {
        value,
        hop_count: path.len() - 1,
        path,
        certified: box_radius >= k || boundary_best >= value,
        k: Some(k),
        n,
        box_radius,
    })
}

/// Runs [`hop_constrained_time`] from [`default_box_radius`], enlarging the
/// radius by `n` until the result is certified.
pub fn hop_constrained_time_auto(spec: &LatticeSpec, n: usize, k: usize) -> Result<ConstrainedResult> {
    let mut radius = default_box_radius(n, k);
    loop {
        let res = hop_constrained_time(spec, n, k, radius)?;
        if res.certified {
            return Ok(res);
        }
        radius += n.max(1);
    }
}
