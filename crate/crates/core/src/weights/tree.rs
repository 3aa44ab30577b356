use serde::{Deserialize, Serialize};

use super::mix::{domain, KeyState, SeedContext};
use crate::error::{domain as domain_err, Result};

/// Edge weights `w = m_e * U^alpha` on the complete graph.
///
/// With scale `m_e` in `[m_min, 1]` the edge cdf is `F_e(x) = (x / m_e)^(1/alpha)`
/// on `[0, m_e]`, which lies between `x^(1/alpha)` and
/// `m_min^(-1/alpha) x^(1/alpha)` for every `x` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeWeightSpec {
    pub alpha: f64,
    pub m_min: f64,
    pub heterogeneous: bool,
}

impl TreeWeightSpec {
    pub fn new(alpha: f64, m_min: f64, heterogeneous: bool) -> Result<Self> {
        let spec = TreeWeightSpec {
            alpha,
            m_min,
            heterogeneous,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn homogeneous(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, false)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return domain_err(format!("alpha must lie in (0,1), got {}", self.alpha));
        }
        if !(self.m_min > 0.0 && self.m_min <= 1.0) {
            return domain_err(format!("m_min must lie in (0,1], got {}", self.m_min));
        }
        Ok(())
    }

    /// Lower envelope constant `D_1`.
    pub fn d1(&self) -> f64 {
        1.0
    }

    /// Upper envelope constant `D_2 = m_min^(-1/alpha)`.
    pub fn d2(&self) -> f64 {
        self.m_min.powf(-1.0 / self.alpha)
    }

    /// Deterministic per-edge scale; depends on the edge key only, not on the trial.
    pub fn edge_scale(&self, i: usize, j: usize) -> f64 {
        if !self.heterogeneous {
            return 1.0;
        }
        let (a, b) = ordered(i, j);
        let u = KeyState::new(domain::TREE_SCALE)
            .absorb(a as u64)
            .absorb(b as u64)
            .uniform();
        self.m_min + (1.0 - self.m_min) * u
    }
}

#[inline]
fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Uniform variate attached to the unordered edge `{i, j}` in trial `ctx`.
#[inline]
pub fn edge_uniform(ctx: &SeedContext, i: usize, j: usize) -> f64 {
    edge_uniform_from(ctx.root(domain::TREE_WEIGHT), i, j)
}

#[inline]
pub(crate) fn edge_uniform_from(root: KeyState, i: usize, j: usize) -> f64 {
    let (a, b) = ordered(i, j);
    root.absorb(a as u64).absorb(b as u64).uniform()
}

/// Inverse transform for a single edge; the test hook for forced variates.
#[inline]
pub fn weight_from_uniform(alpha: f64, scale: f64, u: f64) -> f64 {
    scale * u.powf(alpha)
}

/// Weight of edge `{i, j}` (1-based vertex labels). Symmetric in `i`, `j`.
pub fn edge_weight(spec: &TreeWeightSpec, ctx: &SeedContext, i: usize, j: usize) -> Result<f64> {
    if i == 0 || j == 0 {
        return domain_err(format!("vertex labels start at 1, got ({i},{j})"));
    }
    if i == j {
        return domain_err(format!("edge endpoints must differ, got ({i},{j})"));
    }
    let u = edge_uniform(ctx, i, j);
    Ok(weight_from_uniform(spec.alpha, spec.edge_scale(i, j), u))
}

/// `clamp((x / m_e)^(1/alpha), 0, 1)`.
pub fn cdf_tree_weight(spec: &TreeWeightSpec, scale: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (x / scale).powf(1.0 / spec.alpha).clamp(0.0, 1.0)
}

/// Check `D_1 x^(1/alpha) <= F_e(x) <= D_2 x^(1/alpha)` on a uniform grid of
/// `[0, 1]` for the two extreme scales `m_min` and `1`.
pub fn envelope_check(spec: &TreeWeightSpec, grid_points: usize) -> Result<bool> {
    spec.validate()?;
    if grid_points < 2 {
        return domain_err("envelope grid needs at least 2 points");
    }
    let (d1, d2) = (spec.d1(), spec.d2());
    // Relative slack for the power evaluations only.
    let slack = 1e-12;
    let ok = (0..grid_points).all(|g| {
        let x = g as f64 / (grid_points - 1) as f64;
        let base = x.powf(1.0 / spec.alpha);
        [spec.m_min, 1.0].iter().all(|&m| {
            let f = cdf_tree_weight(spec, m, x);
            d1 * base <= f * (1.0 + slack) && f <= d2 * base * (1.0 + slack)
        })
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_key() {
        let spec = TreeWeightSpec::new(0.4, 0.5, true).unwrap();
        let ctx = SeedContext::new(3, 1);
        assert_eq!(
            edge_weight(&spec, &ctx, 2, 1).unwrap(),
            edge_weight(&spec, &ctx, 1, 2).unwrap()
        );
        assert_eq!(spec.edge_scale(5, 9), spec.edge_scale(9, 5));
    }

    #[test]
    fn forced_zero_variate() {
        for alpha in [0.1, 0.5, 0.9] {
            assert_eq!(weight_from_uniform(alpha, 1.0, 0.0), 0.0);
            assert_eq!(weight_from_uniform(alpha, 0.7, 0.0), 0.0);
        }
    }

    #[test]
    fn rejects_bad_edges() {
        let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
        let ctx = SeedContext::new(0, 0);
        assert!(edge_weight(&spec, &ctx, 3, 3).is_err());
        assert!(edge_weight(&spec, &ctx, 0, 3).is_err());
    }

    #[test]
    fn cdf_endpoints() {
        let spec = TreeWeightSpec::new(0.5, 0.5, true).unwrap();
        assert_eq!(cdf_tree_weight(&spec, 0.8, 0.0), 0.0);
        assert_eq!(cdf_tree_weight(&spec, 0.8, 0.8), 1.0);
        assert_eq!(cdf_tree_weight(&spec, 0.8, 0.95), 1.0);
        let hom = TreeWeightSpec::homogeneous(0.5).unwrap();
        assert!((cdf_tree_weight(&hom, 1.0, 0.25) - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn envelope_cases() {
        let unit = TreeWeightSpec::homogeneous(0.3).unwrap();
        assert!(envelope_check(&unit, 50).unwrap());
        assert_eq!(unit.d2(), 1.0);
        let half = TreeWeightSpec::new(0.5, 0.5, true).unwrap();
        assert!((half.d2() - 4.0).abs() < 1e-12);
        assert!(envelope_check(&half, 1000).unwrap());
        let bad = TreeWeightSpec {
            alpha: 1.2,
            m_min: 1.0,
            heterogeneous: false,
        };
        assert!(envelope_check(&bad, 10).is_err());
        assert!(TreeWeightSpec::new(1.2, 1.0, false).is_err());
        assert!(TreeWeightSpec::new(0.5, 0.0, true).is_err());
    }

    #[test]
    fn scales_inside_range() {
        let spec = TreeWeightSpec::new(0.5, 0.25, true).unwrap();
        for i in 1..40 {
            for j in (i + 1)..40 {
                let m = spec.edge_scale(i, j);
                assert!((0.25..=1.0).contains(&m));
            }
        }
    }
}
