use super::LatticeSpec;
use crate::error::{domain, Result};
use crate::stats::{wilson_interval, ProbEstimate};
use crate::weights::{LatticeEdgeKey, PassageSampler, SeedContext};

/// Sum of the first-axis edge times from `(from, 0, ..)` to `(to, 0, ..)`,
/// accumulated in increasing abscissa.
pub fn straight_segment_time(spec: &LatticeSpec, from: usize, to: usize) -> Result<f64> {
    if from > to {
        return domain(format!("segment start {from} lies after its end {to}"));
    }
    Ok(segment_with(&spec.sampler(), spec.dimension, from, to))
}

/// Passage time of the straight path `f_1, .., f_n` along the first axis.
pub fn straight_path_time(spec: &LatticeSpec, n: usize) -> Result<f64> {
    if n == 0 {
        return domain("straight path needs n >= 1");
    }
    straight_segment_time(spec, 0, n)
}

fn segment_with(sampler: &PassageSampler, d: usize, from: usize, to: usize) -> f64 {
    let mut base = vec![0i64; d];
    let mut acc = 0.0;
    for i in from..to {
        base[0] = i as i64;
        acc += sampler.time(LatticeEdgeKey { base: &base, axis: 0 });
    }
    acc
}

/// Monte Carlo estimate of `P(t(f_1) + .. + t(f_m) <= beta m)`. Trial `t` uses
/// the context `(spec.ctx.master_seed, t)`.
pub fn linear_path_tail_probe(spec: &LatticeSpec, m: usize, beta: f64, trials: u64) -> Result<ProbEstimate> {
    if m == 0 || trials == 0 {
        return domain("tail probe needs m >= 1 and at least one trial");
    }
    if beta.is_nan() || beta < 0.0 {
        return domain(format!("beta must be nonnegative, got {beta}"));
    }
    let threshold = beta * m as f64;
    let mut hits = 0u64;
    for t in 0..trials {
        let ctx = SeedContext::new(spec.ctx.master_seed, t);
        let sampler = PassageSampler::new(spec.times, &ctx);
        if segment_with(&sampler, spec.dimension, 0, m) <= threshold {
            hits += 1;
        }
    }
    wilson_interval(hits, trials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::PassageTimeSpec;

    fn spec() -> LatticeSpec {
        LatticeSpec::new(2, PassageTimeSpec::exponential(1.0, 1.0).unwrap(), SeedContext::new(8, 0)).unwrap()
    }

    #[test]
    fn segments_add_up() {
        let s = spec();
        let whole = straight_path_time(&s, 12).unwrap();
        let a = straight_segment_time(&s, 0, 5).unwrap();
        let b = straight_segment_time(&s, 5, 12).unwrap();
        assert!((whole - (a + b)).abs() <= 1e-12 * whole);
        assert_eq!(
            straight_path_time(&s, 1).unwrap(),
            s.edge_time(&[0, 0], &[1, 0]).unwrap()
        );
        assert!(straight_path_time(&s, 0).is_err());
    }

    #[test]
    fn probe_extremes() {
        let s = spec();
        assert_eq!(linear_path_tail_probe(&s, 5, 0.0, 200).unwrap().point, 0.0);
        assert_eq!(linear_path_tail_probe(&s, 5, 1e6, 200).unwrap().point, 1.0);
        assert!(linear_path_tail_probe(&s, 0, 1.0, 10).is_err());
        assert!(linear_path_tail_probe(&s, 3, -1.0, 10).is_err());
    }
}
