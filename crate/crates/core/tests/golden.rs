//! Values frozen from `tools/golden_values.py`, an independent Python
//! implementation of the mixing function and the weight maps. Compared bit
//! for bit.

use mwrg::lattice::{unconstrained_time, LatticeSpec};
use mwrg::tree::{exact_min_tree, CompleteInstance};
use mwrg::weights::mix::{mix64, GOLDEN_GAMMA};
use mwrg::weights::{edge_weight, passage_time, LatticeEdgeKey, PassageSampler, PassageTimeSpec, SeedContext, TreeWeightSpec};

fn bits(x: f64) -> u64 {
    x.to_bits()
}

#[test]
fn mixing_function() {
    assert_eq!(mix64(GOLDEN_GAMMA), 0xE220A8397B1DCDAF);
}

#[test]
fn tree_weight_seed_42() {
    let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
    let ctx = SeedContext::new(42, 0);
    let w = edge_weight(&spec, &ctx, 1, 2).unwrap();
    assert_eq!(bits(w), 0x3FE9332D1133E634, "{w}");
    assert_eq!(edge_weight(&spec, &ctx, 2, 1).unwrap(), w);
}

#[test]
fn heterogeneous_tree_weight() {
    let spec = TreeWeightSpec::new(0.3, 0.5, true).unwrap();
    let w = edge_weight(&spec, &SeedContext::new(5, 1), 3, 9).unwrap();
    assert_eq!(bits(w), 0x3FD944E6E5A6F6B7, "{w}");
}

#[test]
fn passage_time_seed_7() {
    let spec = PassageTimeSpec::exponential(1.0, 2.0).unwrap();
    let ctx = SeedContext::new(7, 3);
    let key = LatticeEdgeKey { base: &[0, 0], axis: 0 };
    let t = passage_time(&spec, &ctx, key);
    assert_eq!(bits(t), 0x3FCAF31727361EC7, "{t}");
    let rate = PassageSampler::new(spec, &ctx).edge_param(key);
    assert_eq!(bits(rate), 0x3FFD1A3967690017, "{rate}");
    // Parameters are keyed by edge only.
    assert_eq!(PassageSampler::new(spec, &SeedContext::new(99, 0)).edge_param(key), rate);
}

#[test]
fn passage_time_negative_coordinates() {
    let spec = PassageTimeSpec::exponential(1.0, 1.0).unwrap();
    let lat = LatticeSpec::new(2, spec, SeedContext::new(7, 3)).unwrap();
    let t = lat.edge_time(&[-2, 6], &[-2, 5]).unwrap();
    assert_eq!(bits(t), 0x3FE435E1ACB93D87, "{t}");
}

#[test]
fn exact_tree_seed_11_matches_edge_subset_enumeration() {
    let spec = TreeWeightSpec::homogeneous(0.5).unwrap();
    let inst = CompleteInstance::new(5, spec, SeedContext::new(11, 0)).unwrap();
    let expected = [0x3FDB1E692705D9E2u64, 0x3FECE61DB8C304C6, 0x3FF99AB92598EE50, 0x4000D84D84C08BE3];
    for (tau, &want) in (1..5).zip(&expected) {
        let got = exact_min_tree(&inst, tau).unwrap().total_weight;
        assert_eq!(bits(got), want, "tau = {tau}: {got}");
    }
}

#[test]
fn exact_tree_heterogeneous() {
    let spec = TreeWeightSpec::new(0.7, 0.5, true).unwrap();
    let inst = CompleteInstance::new(6, spec, SeedContext::new(3, 2)).unwrap();
    assert_eq!(bits(exact_min_tree(&inst, 3).unwrap().total_weight), 0x3FE868210ACBED12);
}

#[test]
fn unconstrained_seed_9_matches_heap_dijkstra() {
    let spec = PassageTimeSpec::exponential(1.0, 1.0).unwrap();
    let lat = LatticeSpec::new(2, spec, SeedContext::new(9, 0)).unwrap();
    let r = unconstrained_time(&lat, 3).unwrap();
    assert!(r.certified);
    assert_eq!(bits(r.value), 0x3FFBF1167EB50C81, "{}", r.value);
}
