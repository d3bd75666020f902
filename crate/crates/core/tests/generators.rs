mod common;

use common::*;
use semidist::congruence::con_lattice;
use semidist::generators::*;
use semidist::*;

fn iso(a: &Lattice, b: &Lattice) -> bool {
    is_isomorphic(a, b).unwrap().is_some()
}

#[test]
fn classical_constructions() {
    let antichain = Relation::identity(2);
    assert!(iso(&downsets_of(&antichain, 64).unwrap(), &boolean(2).unwrap()));
    let two_chain = Relation::reflexive_from_pairs(2, [(0, 1)]);
    assert!(iso(&downsets_of(&two_chain, 64).unwrap(), &chain(3).unwrap()));
    let b3 = boolean(3).unwrap();
    assert_eq!(b3.size(), 8);
    assert_eq!(b3.join_irreducibles(), [1, 2, 4]);
    assert_eq!(boolean(BOOLEAN_LIMIT + 1).unwrap_err().code(), "size_limit_exceeded");
}

#[test]
fn weak_order_and_tamari_sizes() {
    assert!(iso(&weak_order_sn(2).unwrap(), &chain(2).unwrap()));
    assert_eq!(weak_order_sn(4).unwrap().size(), 24);
    assert!(iso(&tamari(2).unwrap(), &chain(2).unwrap()));
    let t3 = tamari(3).unwrap();
    assert_eq!(t3.size(), 5);
    assert!(!t3.is_distributive() && t3.join_irreducibles().len() == 3);
    assert_eq!(tamari(4).unwrap().size(), 14);
    assert_eq!(tamari(5).unwrap().size(), 42);
    assert_eq!(weak_order_sn(WEAK_ORDER_LIMIT + 1).unwrap_err().code(), "size_limit_exceeded");
}

#[test]
fn tamari_is_a_quotient_of_weak_order() {
    for n in 2..=4 {
        let w = weak_order_sn(n).unwrap();
        let sys = extract_system(&w).unwrap().system;
        let t = tamari(n).unwrap();
        let con = con_lattice(&sys).unwrap();
        let found = (0..con.size()).any(|i| {
            let q = quotient(&sys, &con.upset(i)).unwrap();
            q.quotient.size() == t.size() && iso(q.quotient.lattice(), &t)
        });
        assert!(found, "tamari({n})");
    }
}

#[test]
fn doubling_random_outputs() {
    assert!(iso(&doubling_random(1, 5).unwrap(), &chain(2).unwrap()));
    for seed in 0..20 {
        let l = doubling_random(2, seed).unwrap();
        assert!(iso(&l, &chain(3).unwrap()) || iso(&l, &boolean(2).unwrap()), "seed {seed}");
    }
    for seed in 0..30 {
        let l = doubling_random(8, seed).unwrap();
        let report = classify_lattice(&l).unwrap();
        assert!(report.semidistributive && report.congruence_uniform, "seed {seed}");
    }
    assert_eq!(doubling_random(6, 42).unwrap(), doubling_random(6, 42).unwrap());
}

#[test]
fn exhaustive_small_counts() {
    assert_eq!(exhaustive_lattices(1).unwrap().len(), 1);
    let four = exhaustive_lattices(4).unwrap();
    assert_eq!(four.len(), 2);
    assert!(four.iter().any(|l| iso(l, &chain(4).unwrap())));
    assert!(four.iter().any(|l| iso(l, &boolean(2).unwrap())));
    let five = exhaustive_lattices(5).unwrap();
    let m3 = Lattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
    let n5 = tamari(3).unwrap();
    assert!(five.iter().any(|l| iso(l, &m3)) && five.iter().any(|l| iso(l, &n5)));
    assert_eq!(exhaustive_lattices(EXHAUSTIVE_LIMIT + 1).unwrap_err().code(), "size_limit_exceeded");
}

#[test]
#[ignore = "slow: 8-element enumeration"]
fn exhaustive_eight() {
    assert_eq!(exhaustive_lattices(8).unwrap().len(), 222);
}

#[test]
fn lcg_is_fixed() {
    let mut a = Lcg::new(0);
    let first: Vec<u32> = (0..3).map(|_| a.next_u32()).collect();
    let mut b = Lcg::new(0);
    assert_eq!(first, (0..3).map(|_| b.next_u32()).collect::<Vec<_>>());
    assert_ne!(first[0], first[1]);
}

#[test]
fn random_posets_are_partial_orders() {
    for seed in 0..50 {
        let p = random_poset(6, 1, 3, seed);
        assert!(p.is_partial_order());
    }
}

#[test]
fn corpus_contents() {
    let corpus = standard_corpus().unwrap();
    assert_eq!(corpus.len(), 78 + 3 + 4 + 4 + 20);
    assert_eq!(corpus_systems().len(), corpus.iter().filter(|(_, l)| is_semidistributive(l).is_sd()).count());
}
