mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{dense_vector, oracle_patch, random_op, random_state, Dense};
use dsemion::category::AnyonData;
use dsemion::groundstate::{build_ground_state, build_hamiltonian, ground_space, Convention};
use dsemion::lattice::{boundary_path, classify_path, extended_edges, standard_region, HexCoord, Patch, Region, Side};
use dsemion::pauli_ops::{exact, OperatorSum, Phase, PhasedXOperator};
use dsemion::strings::{string_operator, AnyonLabel};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn compose_is_associative_and_matches_oracle(seed in any::<u64>(), k in 1usize..=8) {
        let patch = oracle_patch();
        let edges = &patch.edges()[..k];
        let mut r = rng(seed);
        let (a, b, c) = (random_op(&mut r, edges), random_op(&mut r, edges), random_op(&mut r, edges));
        let left = a.compose(&b).compose(&c);
        prop_assert_eq!(&left, &a.compose(&b.compose(&c)));
        let dense = Dense::from_op(&a, edges).mul(&Dense::from_op(&b, edges)).mul(&Dense::from_op(&c, edges));
        prop_assert_eq!(Dense::from_op(&left, edges), dense);
    }

    #[test]
    fn apply_of_compose_is_apply_twice(seed in any::<u64>(), k in 1usize..=10) {
        let patch = oracle_patch();
        let edges = &patch.edges()[..k];
        let mut r = rng(seed);
        let (a, b) = (random_op(&mut r, edges), random_op(&mut r, edges));
        let psi = random_state(&mut r, &patch, k);
        let once = psi.apply(&a.compose(&b)).unwrap();
        let twice = psi.apply(&b).unwrap().apply(&a).unwrap();
        prop_assert_eq!(dense_vector(&once, k), dense_vector(&twice, k));
    }

    #[test]
    fn adjoint_is_an_involutive_inverse(seed in any::<u64>(), k in 1usize..=8) {
        let patch = oracle_patch();
        let edges = &patch.edges()[..k];
        let a = random_op(&mut rng(seed), edges);
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert!(a.adjoint().compose(&a).is_identity());
        prop_assert_eq!(a.proportionality(&a), Some(Phase::ONE));
        prop_assert_eq!(a.times_phase(Phase::MINUS_ONE).proportionality(&a), Some(Phase::MINUS_ONE));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauge_transforms_preserve_equations_and_invariants(chi in proptest::collection::vec(0u8..4, 16)) {
        for data in [AnyonData::double_semion(), AnyonData::toric_code()] {
            let g = data.apply_gauge(&chi);
            prop_assert!(g.check_pentagon().passed());
            prop_assert!(g.check_hexagons().passed());
            prop_assert_eq!(g.invariants(), data.invariants());
            prop_assert!(g.gauge_equivalent(&data).is_some());
        }
    }
}

#[test]
fn flips_and_phases_do_not_commute() {
    let e = oracle_patch().edges()[0];
    assert_eq!(PhasedXOperator::x([e]).proportionality(&PhasedXOperator::z([e])), None);
    let xz = PhasedXOperator::x([e]).compose(&PhasedXOperator::z([e]));
    let zx = PhasedXOperator::z([e]).compose(&PhasedXOperator::x([e]));
    assert_eq!(xz.proportionality(&zx), Some(Phase::MINUS_ONE));
    assert_eq!(PhasedXOperator::z([e]).conjugate_by(&PhasedXOperator::x([e])), PhasedXOperator::z([e]).times_phase(Phase::MINUS_ONE));
}

#[test]
fn coboundaries_are_cocycles_for_every_normalized_gauge() {
    let data = AnyonData::double_semion();
    // chi(1, .) = chi(., 1) = 0 leaves nine free entries
    let free: Vec<usize> = (1..4).flat_map(|a| (1..4).map(move |b| a * 4 + b)).collect();
    for code in 0u32..1 << 18 {
        let mut chi = vec![0u8; 16];
        for (i, &slot) in free.iter().enumerate() {
            chi[slot] = (code >> (2 * i) & 3) as u8;
        }
        assert!(data.apply_gauge(&chi).check_pentagon().passed(), "{chi:?}");
    }
}

#[test]
fn patch_vertices_have_degree_three() {
    for n in 1..=3 {
        let patch = Patch::standard(n).unwrap();
        let edges = patch.edge_set();
        for v in patch.vertices() {
            assert_eq!(v.edges().iter().filter(|e| edges.contains(e)).count(), 3);
        }
    }
    // too many edges for a bitmask patch; check the edge set directly
    let region = standard_region(4).unwrap();
    let edges = extended_edges(&region);
    for v in region.vertices() {
        assert_eq!(v.edges().iter().filter(|e| edges.contains(e)).count(), 3);
    }
}

#[test]
fn region_sizes_are_centered_hexagonal_numbers() {
    let sizes: Vec<usize> = (1..=4).map(|n| standard_region(n).unwrap().len()).collect();
    assert_eq!(sizes, vec![1, 7, 19, 37]);
    for n in 1..4 {
        let (small, big) = (standard_region(n).unwrap(), standard_region(n + 1).unwrap());
        assert!(small.iter().all(|h| big.contains(h)));
    }
}

#[test]
fn boundary_is_xor_of_plaquette_boundaries() {
    let o = HexCoord::ORIGIN;
    let mut hexes: Vec<HexCoord> = std::iter::once(o).chain(o.neighbors()).collect();
    hexes.push(o.step(0).step(0));
    hexes.push(o.step(3).step(2));
    assert_eq!(hexes.len(), 9);
    for subset in 0u32..1 << 9 {
        let region = Region::new(hexes.iter().enumerate().filter(|(i, _)| subset >> i & 1 == 1).map(|(_, h)| *h));
        let mut xor = BTreeSet::new();
        for h in region.iter() {
            for e in h.edges() {
                if !xor.remove(&e) {
                    xor.insert(e);
                }
            }
        }
        let walked: BTreeSet<_> = boundary_path(&region).iter().flat_map(|p| p.edges().to_vec()).collect();
        assert_eq!(walked, xor, "subset {subset:09b}");
    }
}

#[test]
fn closed_loops_classify_each_leg_once_and_reversal_swaps_sides() {
    for n in 1..=3 {
        for lp in boundary_path(&standard_region(n).unwrap()) {
            let class = classify_path(&lp);
            assert_eq!(class.steps.len(), lp.len());
            let legs: BTreeSet<_> = class.steps.iter().map(|s| s.leg).collect();
            assert_eq!(legs.len(), class.steps.len());
            assert!(legs.is_disjoint(&lp.edge_set()));
            let rev = classify_path(&lp.reversed());
            for s in &class.steps {
                let r = rev.steps.iter().find(|t| t.vertex == s.vertex).unwrap();
                assert_eq!(r.leg, s.leg);
                assert_ne!(r.side, s.side);
            }
        }
    }
    let hex = classify_path(&boundary_path(&Region::new([HexCoord::ORIGIN]))[0]);
    assert!(hex.steps.iter().all(|s| s.side == Side::Right));
}

#[test]
fn closed_strings_commute_with_the_hamiltonian() {
    let h = build_hamiltonian(2, false).unwrap();
    let o = HexCoord::ORIGIN;
    let regions = [Region::new([o]), Region::new([o, o.step(0)]), Region::new([o.step(1), o.step(2)])];
    for region in &regions {
        let lp = boundary_path(region).remove(0);
        for a in AnyonLabel::ALL {
            let w = OperatorSum::from_op(exact(1, 0), &string_operator(a, &lp));
            for t in &h.terms {
                if t.operator().support().is_subset(&h.patch.edge_set()) {
                    assert!(w.commutator(t.operator()).is_zero(), "{a} on {:?} vs {:?}", region, t.kind);
                }
            }
        }
    }
}

#[test]
fn constructed_state_is_the_kernel_vector() {
    for n in 1..=2 {
        let (report, states) = ground_space(n, true, true).unwrap();
        assert_eq!(report.dimension, 1);
        let psi = build_ground_state(n, Convention::LoopCount).unwrap();
        assert!(states[0].proportionality(&psi).is_some());
    }
}

#[test]
fn random_states_are_unchanged_by_the_identity() {
    let patch = oracle_patch();
    let mut r = rng(5);
    for _ in 0..50 {
        let k = r.random_range(1..=10);
        let psi = random_state(&mut r, &patch, k);
        assert!(psi.apply(&PhasedXOperator::identity()).unwrap().same_vector(&psi));
    }
}
