//! Aggregates shared by every experiment: summaries, Wilson intervals,
//! log-log fits and the Bernoulli upper-tail reference bound.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{domain, Result};

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959964;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub count: usize,
    pub mean: f64,
    pub unbiased_variance: f64,
    pub min: f64,
    pub max: f64,
    pub standard_error: f64,
}

/// Two-pass mean and centred sum of squares.
pub fn summarize(samples: &[f64]) -> Result<SummaryStats> {
    if samples.is_empty() {
        return domain("cannot summarize an empty sample");
    }
    let count = samples.len();
    let mean = samples.iter().sum::<f64>() / count as f64;
    let ss: f64 = samples.iter().map(|&x| (x - mean) * (x - mean)).sum();
    let unbiased_variance = if count > 1 { ss / (count - 1) as f64 } else { 0.0 };
    let (min, max) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    // Rounding can push the mean of near-constant data a hair outside [min, max].
    let mean = mean.clamp(min, max);
    Ok(SummaryStats {
        count,
        mean,
        unbiased_variance,
        min,
        max,
        standard_error: (unbiased_variance / count as f64).sqrt(),
    })
}

/// One-sided upper confidence bound on the variance, `(n-1) s^2 / chi2_{1-level}(n-1)`,
/// valid under approximate normality.
pub fn variance_upper_bound(stats: &SummaryStats, level: f64) -> Result<f64> {
    if stats.count < 2 {
        return domain("variance bound needs at least 2 samples");
    }
    if !(level > 0.0 && level < 1.0) {
        return domain(format!("confidence level must lie in (0,1), got {level}"));
    }
    let df = (stats.count - 1) as f64;
    let chi = ChiSquared::new(df).map_err(|e| crate::Error::Domain(e.to_string()))?;
    let q = chi.inverse_cdf(1.0 - level);
    Ok(df * stats.unbiased_variance / q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub residual_max: f64,
}

/// Ordinary least squares of `ln y` on `ln x`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<PowerFit> {
    if points.len() < 2 {
        return domain("log-log fit needs at least 2 points");
    }
    if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0)) {
        return domain(format!("log-log fit needs positive coordinates, got ({x}, {y})"));
    }
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = points.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return domain("log-log fit needs distinct x values");
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut residual_max: f64 = 0.0;
    for (x, y) in lx.iter().zip(&ly) {
        let r = y - (intercept + slope * x);
        ss_res += r * r;
        residual_max = residual_max.max(r.abs());
    }
    let ss_tot: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(PowerFit {
        slope,
        intercept,
        r_squared,
        residual_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbEstimate {
    pub successes: u64,
    pub trials: u64,
    pub point: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl ProbEstimate {
    pub fn overlaps(&self, other: &ProbEstimate) -> bool {
        self.wilson_low <= other.wilson_high && other.wilson_low <= self.wilson_high
    }

    pub fn contains(&self, p: f64) -> bool {
        self.wilson_low <= p && p <= self.wilson_high
    }
}

/// 95% Wilson score interval.
pub fn wilson_interval(successes: u64, trials: u64) -> Result<ProbEstimate> {
    if trials == 0 {
        return domain("Wilson interval needs at least one trial");
    }
    if successes > trials {
        return domain(format!("successes ({successes}) exceed trials ({trials})"));
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let mut low = (centre - half).clamp(0.0, 1.0);
    let mut high = (centre + half).clamp(0.0, 1.0);
    if successes == 0 {
        low = 0.0;
    }
    if successes == trials {
        high = 1.0;
    }
    Ok(ProbEstimate {
        successes,
        trials,
        point: p,
        wilson_low: low.min(p),
        wilson_high: high.max(p),
    })
}

/// `exp(-epsilon^2 m mu2 / 4)`, the reference bound on
/// `P(sum of m Bernoulli(<= mu2) > m mu2 (1 + epsilon))`.
pub fn bernoulli_upper_bound(m: u64, mu2: f64, epsilon: f64) -> Result<f64> {
    if !(mu2 > 0.0 && mu2 <= 1.0) {
        return domain(format!("mu2 must lie in (0,1], got {mu2}"));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return domain(format!("epsilon must lie in (0,0.5), got {epsilon}"));
    }
    Ok((-epsilon * epsilon * m as f64 * mu2 / 4.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_small_cases() {
        let s = summarize(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((s.mean, s.unbiased_variance), (1.0, 0.0));
        let s = summarize(&[0.0, 2.0]).unwrap();
        assert_eq!((s.mean, s.unbiased_variance), (1.0, 2.0));
        assert_eq!(s.standard_error, 1.0);
        let one = summarize(&[3.5]).unwrap();
        assert_eq!(one.unbiased_variance, 0.0);
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn exact_power_laws() {
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, i as f64)).collect();
        let f = loglog_fit(&pts).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 9.0, 30.0]
            .iter()
            .map(|&x: &f64| (x, 5.0 * x.sqrt()))
            .collect();
        let f = loglog_fit(&pts).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!((f.intercept - 5f64.ln()).abs() < 1e-12);
        assert!(f.residual_max <= 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_rejects_bad_input() {
        assert!(loglog_fit(&[(1.0, 1.0)]).is_err());
        assert!(loglog_fit(&[(1.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(loglog_fit(&[(1.0, 0.0), (2.0, 2.0)]).is_err());
        assert!(loglog_fit(&[(2.0, 1.0), (2.0, 3.0)]).is_err());
    }

    #[test]
    fn wilson_reference_values() {
        let w = wilson_interval(50, 100).unwrap();
        assert!((w.wilson_low - 0.4038).abs() < 5e-5, "{w:?}");
        assert!((w.wilson_high - 0.5962).abs() < 5e-5, "{w:?}");
        let z = wilson_interval(0, 40).unwrap();
        assert_eq!(z.wilson_low, 0.0);
        assert_eq!(z.point, 0.0);
        let all = wilson_interval(40, 40).unwrap();
        assert_eq!(all.wilson_high, 1.0);
        assert!(wilson_interval(0, 0).is_err());
        assert!(wilson_interval(5, 4).is_err());
    }

    #[test]
    fn bernoulli_bound_values() {
        assert_eq!(bernoulli_upper_bound(0, 0.5, 0.25).unwrap(), 1.0);
        assert!((bernoulli_upper_bound(256, 0.1, 0.25).unwrap() - (-0.4f64).exp()).abs() < 1e-15);
        assert!((bernoulli_upper_bound(256, 0.1, 0.25).unwrap() - 0.6703).abs() < 1e-4);
        assert!(bernoulli_upper_bound(1000, 0.5, 1e-9).unwrap() > 1.0 - 1e-12);
        assert!(bernoulli_upper_bound(10, 0.0, 0.25).is_err());
        assert!(bernoulli_upper_bound(10, 0.5, 0.5).is_err());
    }

    #[test]
    fn variance_bound_is_above_estimate() {
        let s = summarize(&(0..200).map(|i| (i % 7) as f64).collect::<Vec<_>>()).unwrap();
        let ub = variance_upper_bound(&s, 0.95).unwrap();
        assert!(ub > s.unbiased_variance);
        // Chi-square(199) 5% quantile is about 167.36.
        assert!((ub / s.unbiased_variance - 199.0 / 167.361).abs() < 1e-3);
        let c = summarize(&[2.0; 10]).unwrap();
        assert_eq!(variance_upper_bound(&c, 0.95).unwrap(), 0.0);
    }
}
