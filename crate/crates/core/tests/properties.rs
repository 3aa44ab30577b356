//! Property tests for the invariants of the weight models, the tree and
//! lattice solvers and the estimators.

use proptest::prelude::*;

use mwrg::cli::format_float;
use mwrg::lattice::{
    enumerate_paths_oracle, hop_constrained_time, straight_path_time, straight_segment_time, LatticeSpec,
};
use mwrg::stats::{loglog_fit, summarize, wilson_interval};
use mwrg::tree::{
    exact_min_tree, greedy_spanning_path, kruskal_mst, min_tree_upper_bound, pruefer_min_spanning_weight,
    sample_yj, threshold_lower_bound, CompleteInstance,
};
use mwrg::weights::{edge_weight, envelope_check, PassageTimeSpec, SeedContext, TreeWeightSpec};

fn tree_spec() -> impl Strategy<Value = TreeWeightSpec> {
    (0.05f64..=1.0, 0.05f64..=1.0, any::<bool>())
        .prop_map(|(alpha, m_min, het)| TreeWeightSpec::new(alpha, if het { m_min } else { 1.0 }, het).unwrap())
}

fn passage_spec() -> impl Strategy<Value = PassageTimeSpec> {
    prop_oneof![
        (0.5f64..2.0, 0.0f64..1.0).prop_map(|(lo, w)| PassageTimeSpec::exponential(lo, lo + w).unwrap()),
        (0.5f64..1.0).prop_map(|a| PassageTimeSpec::uniform(a, a + 1.0).unwrap()),
        (2.1f64..6.0).prop_map(|shape| PassageTimeSpec::pareto(1.0, shape).unwrap()),
    ]
}

fn seeded_instance(n: usize) -> impl Strategy<Value = CompleteInstance> {
    (tree_spec(), any::<u64>(), 0u64..1000)
        .prop_map(move |(spec, seed, trial)| CompleteInstance::new(n, spec, SeedContext::new(seed, trial)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_weights_symmetric_deterministic_in_range(
        spec in tree_spec(), seed in any::<u64>(), trial in any::<u64>(), i in 1usize..10_000, j in 1usize..10_000,
    ) {
        prop_assume!(i != j);
        let ctx = SeedContext::new(seed, trial);
        let w = edge_weight(&spec, &ctx, i, j).unwrap();
        prop_assert_eq!(w.to_bits(), edge_weight(&spec, &ctx, j, i).unwrap().to_bits());
        prop_assert_eq!(w.to_bits(), edge_weight(&spec, &SeedContext::new(seed, trial), i, j).unwrap().to_bits());
        prop_assert!((0.0..=1.0).contains(&w));
        prop_assert!(w <= spec.edge_scale(i, j));
        prop_assert!(spec.edge_scale(i, j) >= spec.m_min);
    }

    #[test]
    fn every_valid_spec_satisfies_envelope(spec in tree_spec()) {
        prop_assert!(envelope_check(&spec, 200).unwrap());
    }

    #[test]
    fn passage_times_positive_and_deterministic(
        times in passage_spec(), seed in any::<u64>(), trial in 0u64..100,
        x in -1000i64..1000, y in -1000i64..1000, axis in 0usize..2,
    ) {
        let spec = LatticeSpec::new(2, times, SeedContext::new(seed, trial)).unwrap();
        let u = [x, y];
        let mut v = u;
        v[axis] += 1;
        let t = spec.edge_time(&u, &v).unwrap();
        prop_assert!(t > 0.0 && t.is_finite());
        prop_assert_eq!(t.to_bits(), spec.edge_time(&v, &u).unwrap().to_bits());
    }

    #[test]
    fn tree_solvers_sandwich_and_agree(inst in (4usize..=6).prop_flat_map(seeded_instance), gamma in 0.1f64..3.0) {
        let n = inst.n();
        let mst = kruskal_mst(&inst);
        prop_assert!(mst.is_tree(n));
        prop_assert_eq!(mst.total_weight, exact_min_tree(&inst, n - 1).unwrap().total_weight);
        prop_assert_eq!(mst.total_weight, pruefer_min_spanning_weight(&inst).unwrap());
        let mut prev_exact = 0.0;
        let mut prev_upper = 0.0;
        for tau in 1..n {
            let exact = exact_min_tree(&inst, tau).unwrap();
            prop_assert!(exact.is_tree(n) && exact.edge_count >= tau);
            let upper = min_tree_upper_bound(&inst, tau).unwrap();
            let lower = threshold_lower_bound(&inst, tau, gamma).unwrap();
            prop_assert!(lower <= exact.total_weight, "tau {}: {} > {}", tau, lower, exact.total_weight);
            prop_assert!(exact.total_weight <= upper, "tau {}: {} > {}", tau, exact.total_weight, upper);
            prop_assert!(prev_exact <= exact.total_weight && prev_upper <= upper);
            prev_exact = exact.total_weight;
            prev_upper = upper;
        }
    }

    #[test]
    fn greedy_path_is_nearest_neighbour_walk(inst in (3usize..=40).prop_flat_map(seeded_instance)) {
        let n = inst.n();
        let g = greedy_spanning_path(&inst);
        let mut sorted = g.order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        prop_assert_eq!(g.order[0], 1);
        for j in 1..n {
            // Each step is Y_j evaluated on the greedy prefix.
            let y = sample_yj(&inst, &g.order[..j]).unwrap();
            prop_assert_eq!(g.step_weights[j - 1], y);
            prop_assert_eq!(inst.weight(g.order[j - 1], g.order[j]), y);
        }
        prop_assert!(g.total() >= kruskal_mst(&inst).total_weight);
    }

    #[test]
    fn hop_dp_matches_path_enumeration(
        times in passage_spec(), seed in any::<u64>(), n in 1usize..=3, extra in 0usize..=4, radius in 3usize..=4,
    ) {
        let spec = LatticeSpec::new(2, times, SeedContext::new(seed, 0)).unwrap();
        let k = n + extra;
        let dp = hop_constrained_time(&spec, n, k, radius).unwrap();
        prop_assert_eq!(Some(dp.value), enumerate_paths_oracle(&spec, n, k, radius).unwrap());
        prop_assert!(dp.path_is_valid() && dp.hop_count <= k);
        prop_assert!((spec.path_time(&dp.path).unwrap() - dp.value).abs() <= 1e-12 * dp.value.max(1.0));
    }

    #[test]
    fn hop_dp_monotone_in_budget_and_box(times in passage_spec(), seed in any::<u64>(), n in 1usize..=6) {
        let spec = LatticeSpec::new(2, times, SeedContext::new(seed, 1)).unwrap();
        let straight = straight_path_time(&spec, n).unwrap();
        let mut prev = f64::INFINITY;
        for k in n..=3 * n {
            let r = hop_constrained_time(&spec, n, k, n + 2).unwrap();
            prop_assert!(r.value <= prev && r.value <= straight);
            let wider = hop_constrained_time(&spec, n, k, n + 4).unwrap();
            prop_assert!(wider.value <= r.value);
            prev = r.value;
        }
    }

    #[test]
    fn straight_segments_are_additive(times in passage_spec(), seed in any::<u64>(), a in 0usize..50, b in 0usize..50, c in 0usize..50) {
        let spec = LatticeSpec::new(3, times, SeedContext::new(seed, 2)).unwrap();
        let mut p = [a, b, c];
        p.sort_unstable();
        let whole = straight_segment_time(&spec, p[0], p[2]).unwrap();
        let split = straight_segment_time(&spec, p[0], p[1]).unwrap() + straight_segment_time(&spec, p[1], p[2]).unwrap();
        prop_assert!((whole - split).abs() <= 1e-12 * whole.max(1.0));
    }

    #[test]
    fn summary_permutation_and_translation(xs in prop::collection::vec(-1e3f64..1e3, 2..200), shift in -1e3f64..1e3, seed in any::<u64>()) {
        let s = summarize(&xs).unwrap();
        let mut perm = xs.clone();
        let mut state = seed | 1;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let p = summarize(&perm).unwrap();
        let scale = 1e-9 * (1.0 + s.mean.abs() + s.unbiased_variance);
        prop_assert!((s.mean - p.mean).abs() <= scale && (s.unbiased_variance - p.unbiased_variance).abs() <= scale);
        prop_assert!(s.min <= s.mean && s.mean <= s.max);
        let shifted: Vec<f64> = xs.iter().map(|x| x + shift).collect();
        let t = summarize(&shifted).unwrap();
        prop_assert!((t.mean - s.mean - shift).abs() <= 1e-9 * (1.0 + shift.abs() + s.mean.abs()));
        prop_assert!((t.unbiased_variance - s.unbiased_variance).abs() <= 1e-6 * (1.0 + s.unbiased_variance));
    }

    #[test]
    fn loglog_fit_scale_covariance(
        ys in prop::collection::vec(0.1f64..10.0, 3..12), c in 0.01f64..100.0, p in -2.0f64..2.0,
    ) {
        let points: Vec<(f64, f64)> = ys.iter().enumerate().map(|(i, &y)| ((i + 1) as f64 * 3.0, y)).collect();
        let base = loglog_fit(&points).unwrap();
        // Multiplying y by c x^p shifts the slope by p and the intercept by ln c.
        let scaled: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x, c * x.powf(p) * y)).collect();
        let fit = loglog_fit(&scaled).unwrap();
        prop_assert!((fit.slope - base.slope - p).abs() < 1e-9);
        prop_assert!((fit.intercept - base.intercept - c.ln()).abs() < 1e-8);
    }

    #[test]
    fn wilson_interval_contains_point(trials in 1u64..100_000, frac in 0.0f64..=1.0) {
        let successes = (trials as f64 * frac).floor() as u64;
        let e = wilson_interval(successes, trials).unwrap();
        prop_assert!(0.0 <= e.wilson_low && e.wilson_low <= e.point && e.point <= e.wilson_high && e.wilson_high <= 1.0);
        let mirrored = wilson_interval(trials - successes, trials).unwrap();
        prop_assert!((e.wilson_low - (1.0 - mirrored.wilson_high)).abs() < 1e-12);
    }

    #[test]
    fn formatted_floats_round_trip(x in any::<f64>()) {
        let text = format_float(x);
        if x.is_nan() {
            prop_assert_eq!(text, "NaN");
        } else {
            prop_assert_eq!(text.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
