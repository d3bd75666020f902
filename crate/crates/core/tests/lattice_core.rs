mod common;

use common::*;
use semidist::generators::{standard_corpus, tamari, weak_order_sn};
use semidist::*;

fn m3() -> Lattice {
    Lattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
}

#[test]
fn elements_are_joins_of_irreducibles() {
    for (name, l) in standard_corpus().unwrap() {
        let j = l.join_irreducibles();
        let m = l.meet_irreducibles();
        for x in 0..l.size() {
            let below: Vec<usize> = j.iter().copied().filter(|&a| l.leq(a, x)).collect();
            let above: Vec<usize> = m.iter().copied().filter(|&a| l.leq(x, a)).collect();
            assert_eq!(l.join_all(below.iter().copied()), x, "{name}");
            assert_eq!(l.meet_all(above.iter().copied()), x, "{name}");
        }
    }
}

#[test]
fn kappa_is_a_bijection_exactly_for_sd_lattices() {
    for (name, l) in standard_corpus().unwrap() {
        let data = irreducibles(&l);
        let sd = is_semidistributive(&l);
        assert_eq!(sd.meet_sd, data.kappa_total(), "{name}");
        assert_eq!(sd.join_sd, data.kappa_d_total(), "{name}");
        if sd.is_sd() {
            for &j in &data.jirr {
                assert_eq!(data.kappa_d_of(data.kappa_of(j)), j, "{name}");
            }
        }
    }
}

#[test]
fn semi_fig_lattice_kappa() {
    let sys = semi_fig();
    let pairs = pairs_lattice(&sys).unwrap();
    let g = sys.ground();
    let l = pairs.lattice();
    let data = irreducibles(l);
    let mut jirr: Vec<String> = data.jirr.iter().map(|&j| show(g, pairs.torsion(j))).collect();
    jirr.sort();
    assert_eq!(jirr, ["1", "13", "24", "4"]);
    let one = pairs.index_of(&set(g, "1")).unwrap();
    assert_eq!(show(g, pairs.torsion(data.kappa_of(one))), "24");
}

#[test]
fn weak_order_s3_is_the_figure_lattice() {
    let s3 = weak_order_sn(3).unwrap();
    let fig = pairs_lattice(&semi_fig()).unwrap();
    assert!(is_isomorphic(&s3, fig.lattice()).unwrap().is_some());
    let ex = extract_system(&s3).unwrap();
    assert_eq!(ex.system.size(), 4);
    assert!(systems_isomorphic(&ex.system, &semi_fig()).is_some());
}

#[test]
fn non_sd_lattices_are_refused() {
    assert_eq!(extract_system(&m3()).unwrap_err().code(), "not_semidistributive");
    let (g, to) = ext_fig();
    let ext = PairsLattice::of_relation(g, to, 1 << 10).unwrap();
    assert!(!is_semidistributive(ext.lattice()).is_sd());
    assert_eq!(ftfsdl_roundtrip(ext.lattice()).unwrap_err().code(), "not_semidistributive");
}

#[test]
fn classical_families_round_trip() {
    for n in 1..=5 {
        let l = weak_order_sn(n).unwrap();
        assert!(is_semidistributive(&l).is_sd());
        assert_eq!(ftfsdl_roundtrip(&l).unwrap().size, l.size());
    }
    for n in 1..=5 {
        assert_eq!(ftfsdl_roundtrip(&tamari(n).unwrap()).unwrap().size, tamari(n).unwrap().size());
    }
}

#[test]
fn extracted_systems_are_isomorphic_under_relabeling() {
    let l = tamari(4).unwrap();
    let perm: Vec<usize> = (0..l.size()).rev().collect();
    let relabeled = l.permute(&perm);
    let a = extract_system(&l).unwrap().system;
    let b = extract_system(&relabeled).unwrap().system;
    assert!(systems_isomorphic(&a, &b).is_some());
}

#[test]
fn non_lattices_are_rejected() {
    // Two maximal elements.
    let err = Lattice::from_covers(3, &[(0, 1), (0, 2)]).unwrap_err();
    assert_eq!(err.code(), "not_a_lattice");
    let err = Lattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]).unwrap_err();
    assert_eq!(err.code(), "not_a_partial_order");
}
