mod common;

use std::collections::HashSet;

use common::*;
use semidist::congruence::{
    brute_congruences, con_lattice, con_lattice_capped, forcing_preorder, principal_congruence, quotient_in, verify_forcing_preorder,
    DEFAULT_CONGRUENCE_CAP,
};
use semidist::generators::{boolean, chain};
use semidist::*;

fn congruence_count(l: &Lattice) -> usize {
    brute_congruences(l, DEFAULT_CONGRUENCE_CAP).unwrap().len()
}

fn edges(sys: &FactSystem, r: &Relation) -> Vec<String> {
    r.arrows().map(|(x, y)| format!("{}{}", sys.label(x), sys.label(y))).collect()
}

#[test]
fn semi_fig_forcing_edges() {
    let sys = semi_fig();
    let f = directly_forces(&sys);
    assert_eq!(edges(&sys, &f.squig), ["12", "13", "42", "43"]);
    assert!(is_congruence_uniform(&sys));
}

#[test]
fn semi_fig_images() {
    let sys = semi_fig();
    let g = sys.ground().clone();
    let (i, c) = image_coimage(&sys, 1, 2).unwrap();
    assert_eq!((show(&g, &i), show(&g, &c)), ("4".into(), "4".into()));
    let (i, c) = image_coimage(&sys, 2, 1).unwrap();
    assert_eq!((show(&g, &i), show(&g, &c)), ("1".into(), "1".into()));
    assert_eq!(image_coimage(&sys, 0, 3).unwrap_err().code(), "no_arrow");
}

#[test]
fn semi_fig_restrictions_and_quotients() {
    let sys = semi_fig();
    let g = sys.ground().clone();
    match restrict_system(&sys, &set(&g, "23")).unwrap_err() {
        Error::NotAForcingUpset { forcer, forced } => assert_eq!((forcer, forced), (0, 1)),
        other => panic!("{other:?}"),
    }
    let r = restrict_system(&sys, &set(&g, "14")).unwrap();
    assert_eq!(r.to(), &Relation::identity(2));
    let q = quotient(&sys, &set(&g, "14")).unwrap();
    assert_eq!(q.quotient.size(), 4);
    assert!(is_isomorphic(q.quotient.lattice(), &boolean(2).unwrap()).unwrap().is_some());
    assert_eq!(quotient(&sys, &sys.full_set()).unwrap().partition.block_count(), 6);
    assert_eq!(quotient(&sys, &sys.empty_set()).unwrap().partition.block_count(), 1);
}

#[test]
fn small_congruence_counts() {
    let sys = semi_fig();
    let con = con_lattice(&sys).unwrap();
    let mut downs: Vec<String> = con.downsets.iter().map(|d| show(sys.ground(), d)).collect();
    downs.sort();
    assert_eq!(downs, ["", "123", "1234", "2", "23", "234", "3"]);
    assert_eq!(congruence_count(&boolean(2).unwrap()), 4);
    assert_eq!(congruence_count(&chain(3).unwrap()), 4);
    let m3 = Lattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
    assert_eq!(congruence_count(&m3), 2);
    let id = system_from_relation(GroundSet::unlabeled(3), Relation::identity(3)).unwrap();
    assert_eq!(con_lattice(&id).unwrap().size(), 8);
}

#[test]
fn congruence_lattices_are_distributive_and_match_the_oracle() {
    let mut checked = 0;
    for (name, sys) in corpus_systems() {
        let Ok(con) = con_lattice_capped(&sys, 2048) else { continue };
        checked += 1;
        assert!(con.lattice.is_distributive(), "{name}");
        let pairs = pairs_lattice(&sys).unwrap();
        if pairs.size() <= 20 {
            assert_eq!(con.size(), congruence_count(pairs.lattice()), "{name}");
        }
    }
    assert!(checked >= 60, "{checked}");
}

#[test]
fn transitive_forcing_is_the_lattice_forcing_order() {
    for (name, sys) in corpus_systems() {
        let pairs = pairs_lattice(&sys).unwrap();
        assert!(verify_forcing_preorder(&sys, &pairs), "{name}");
    }
}

#[test]
fn quotients_are_sd_and_monotone() {
    for (name, sys) in corpus_systems().into_iter().filter(|(_, s)| s.size() <= 8) {
        let pairs = pairs_lattice(&sys).unwrap();
        let con = con_lattice(&sys).unwrap();
        let specs: Vec<_> = (0..con.size()).map(|i| quotient_in(&sys, &pairs, &con.upset(i)).unwrap()).collect();
        for a in &specs {
            assert!(is_semidistributive(a.quotient.lattice()).is_sd(), "{name}");
            for b in &specs {
                if a.upset.is_subset(&b.upset) {
                    assert!(b.partition.refines(&a.partition), "{name}: larger upset must give a finer congruence");
                }
            }
        }
    }
}

#[test]
fn contracting_a_cover_is_contracting_its_label() {
    for (name, sys) in corpus_systems() {
        let pairs = pairs_lattice(&sys).unwrap();
        let l = pairs.lattice();
        if l.size() > 20 {
            continue;
        }
        for theta in brute_congruences(l, DEFAULT_CONGRUENCE_CAP).unwrap() {
            for x in pairs.torsion_sets() {
                let data = cov(&sys, x).unwrap();
                for (&c, d) in data.cov.iter().zip(&data.lower_covers) {
                    let cover = theta.same_block(pairs.index_of(d).unwrap(), pairs.index_of(x).unwrap());
                    let label = theta.same_block(pairs.index_of(&t_star(&sys, c)).unwrap(), pairs.principal(c));
                    assert_eq!(cover, label, "{name}");
                }
            }
        }
    }
}

#[test]
fn distributive_systems_have_trivial_forcing() {
    let sys = extract_system(&boolean(3).unwrap()).unwrap().system;
    assert_eq!(directly_forces(&sys).squig, Relation::identity(3));
    assert_eq!(forcing_preorder(&sys), Relation::identity(3));
}

/// An SD lattice that is not congruence-uniform, confirmed on the lattice
/// side: two join-irreducibles generate the same principal congruence.
#[test]
fn semidistributive_but_not_congruence_uniform() {
    let sys = load("sd_not_cu.json").as_system().unwrap();
    let pairs = pairs_lattice(&sys).unwrap();
    let l = pairs.lattice();
    assert_eq!(l.size(), 29);
    assert!(is_semidistributive(l).is_sd());
    assert!(!is_congruence_uniform(&sys));
    assert!(!directly_forces(&sys).squig.is_acyclic_ignoring_loops());
    let principal: HashSet<Partition> = l.join_irreducibles().iter().map(|&j| principal_congruence(l, l.lower_covers(j)[0], j)).collect();
    assert!(principal.len() < l.join_irreducibles().len());
    assert_eq!(con_lattice(&sys).unwrap().size(), congruence_count(l));
    assert!(!classify_lattice(l).unwrap().congruence_uniform);
}

#[test]
fn no_small_lattice_is_sd_without_being_cu() {
    for (name, l) in semidist::generators::standard_corpus().unwrap() {
        if is_semidistributive(&l).is_sd() {
            assert!(classify_lattice(&l).unwrap().congruence_uniform, "{name}");
        }
    }
}
