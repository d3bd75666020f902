//! Randomized law checks over generated relations and systems.

mod common;

use common::*;
use proptest::prelude::*;
use semidist::generators::random_system;
use semidist::*;

const INSTANCES: u64 = 1000;

#[test]
fn fact_mult_calculus_on_random_relations_and_preorder_pairs() {
    assert_eq!(fact_mult_calculus(INSTANCES), 2000);
}

#[test]
fn closed_sets_are_onto_downsets_and_perps_into_upsets() {
    downsets_and_upsets(INSTANCES);
}

#[test]
fn two_acyclic_arrow_consequences() {
    two_acyclic_consequences(INSTANCES);
}

#[test]
fn lower_cover_meet_and_join_identities() {
    cover_identities(INSTANCES);
}

#[test]
fn images_force_targets_and_coimages_force_sources() {
    image_forcing(INSTANCES);
}

#[test]
fn random_systems_are_not_all_tiny() {
    let big = systems(INSTANCES).filter(|s| s.size() >= 5).count();
    assert!(big >= 300, "{big}");
}

fn relation_strategy() -> impl Strategy<Value = Relation> {
    (1usize..8).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * n).prop_map(move |bits| {
            let mut r = Relation::identity(n);
            for (i, b) in bits.into_iter().enumerate() {
                if b {
                    r.set(i / n, i % n, true);
                }
            }
            r
        })
    })
}

proptest! {
    #[test]
    fn prop_fact_mult_laws(to in relation_strategy()) {
        check_fact_mult_laws(&to);
        let (onto, into) = fact(&to).unwrap();
        check_mult_fact_laws(&onto, &into);
    }

    #[test]
    fn prop_closure_operator_laws(to in relation_strategy(), a in any::<u16>(), b in any::<u16>()) {
        let n = to.size();
        let x = BitSet::from_indices(n, (0..n).filter(|i| a >> i & 1 == 1));
        let y = x.union(&BitSet::from_indices(n, (0..n).filter(|i| b >> i & 1 == 1)));
        let cx = closure(&to, &x);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(closure(&to, &cx), cx.clone());
        prop_assert!(cx.is_subset(&closure(&to, &y)));
        let left = perp_left(&to, &y);
        prop_assert_eq!(closure(&to, &left), left);
    }

    #[test]
    fn prop_pairs_count_is_dual_invariant(seed in 0u64..5000) {
        let sys = random_system(6, seed);
        let a = pairs_lattice(&sys).unwrap();
        let b = pairs_lattice(&sys.op_dual()).unwrap();
        prop_assert_eq!(a.size(), b.size());
        prop_assert!(is_isomorphic(a.lattice(), &b.lattice().dual()).unwrap().is_some());
    }
}
