//! Law checks shared by the property suite and the acceptance runner.
//! Each returns the number of instances checked and panics on a counterexample.

#![allow(dead_code)]

use semidist::covers::{cov, t_of, t_star};
use semidist::generators::{random_system, Lcg};
use semidist::pairs::closed_sets;
use semidist::*;

pub fn random_reflexive(rng: &mut Lcg, max_n: usize) -> Relation {
    let n = 1 + rng.below(max_n);
    let density = 1 + rng.below(6) as u32;
    let mut r = Relation::identity(n);
    for x in 0..n {
        for y in 0..n {
            if rng.chance(density, 8) {
                r.set(x, y, true);
            }
        }
    }
    r
}

pub fn random_preorder(rng: &mut Lcg, n: usize) -> Relation {
    let mut r = Relation::identity(n);
    for x in 0..n {
        for y in 0..n {
            if rng.chance(1, 5) {
                r.set(x, y, true);
            }
        }
    }
    r.reflexive_transitive_closure()
}

pub fn check_fact_mult_laws(to: &Relation) {
    let (onto, into) = fact(to).unwrap();
    assert!(mult(&onto, &into).unwrap().is_subrelation(to), "Mult(Fact(R)) ⊆ R fails for {to:?}");
}

pub fn check_mult_fact_laws(onto: &Relation, into: &Relation) {
    let m = mult(onto, into).unwrap();
    let (o2, i2) = fact(&m).unwrap();
    assert!(onto.is_subrelation(&o2) && into.is_subrelation(&i2), "Fact(Mult) ⊇ pair fails");
    assert_eq!(mult(&o2, &i2).unwrap(), m, "Mult(Fact(Mult)) = Mult fails");
}

/// Systems of 2..=7 elements grown from consecutive seeds.
pub fn systems(count: u64) -> impl Iterator<Item = FactSystem> {
    (0..count).map(|seed| random_system(2 + (seed % 6) as usize, seed))
}

pub fn fact_mult_calculus(count: u64) -> usize {
    let mut rng = Lcg::new(1);
    for _ in 0..count {
        check_fact_mult_laws(&random_reflexive(&mut rng, 8));
    }
    let mut rng = Lcg::new(2);
    for _ in 0..count {
        let n = 1 + rng.below(7);
        let (onto, into) = (random_preorder(&mut rng, n), random_preorder(&mut rng, n));
        check_mult_fact_laws(&onto, &into);
        let m = mult(&onto, &into).unwrap();
        let bigger = onto.union(&random_preorder(&mut rng, n)).reflexive_transitive_closure();
        assert!(m.is_subrelation(&mult(&bigger, &into).unwrap()), "Mult not monotone in the first argument");
        let bigger = into.union(&random_preorder(&mut rng, n)).reflexive_transitive_closure();
        assert!(m.is_subrelation(&mult(&onto, &bigger).unwrap()), "Mult not monotone in the second argument");
    }
    2 * count as usize
}

pub fn downsets_and_upsets(count: u64) -> usize {
    let mut rng = Lcg::new(3);
    for sys in systems(count) {
        for x in closed_sets(sys.to(), 1 << 16).unwrap() {
            assert!(sys.onto().is_downset(&x), "closed set {x:?} is not an onto-downset");
        }
        let n = sys.size();
        for _ in 0..8 {
            let s = BitSet::from_indices(n, (0..n).filter(|_| rng.chance(1, 2)));
            assert!(sys.into_rel().is_upset(&sys.perp_right(&s)), "perp of {s:?} is not an into-upset");
        }
    }
    count as usize
}

pub fn two_acyclic_consequences(count: u64) -> usize {
    for sys in systems(count) {
        let n = sys.size();
        for x in 0..n {
            for y in 0..n {
                if sys.to().get(x, y) && sys.into_rel().get(y, x) {
                    assert_eq!(x, y, "x -> y >-> x with x != y");
                }
                if sys.onto().get(x, y) && sys.to().get(y, x) {
                    assert_eq!(x, y, "x ->> y -> x with x != y");
                }
            }
        }
    }
    count as usize
}

pub fn cover_identities(count: u64) -> usize {
    for sys in systems(count) {
        for x in closed_sets(sys.to(), 1 << 16).unwrap() {
            let data = cov(&sys, &x).unwrap();
            for (&c, d) in data.cov.iter().zip(&data.lower_covers) {
                let t = t_of(&sys, c);
                assert_eq!(d.intersection(&t), t_star(&sys, c), "Del ∧ T(c) != T_*(c)");
                assert_eq!(sys.closure(&d.union(&t)), x, "Del ∨ T(c) != X");
            }
        }
    }
    count as usize
}

pub fn image_forcing(count: u64) -> usize {
    for sys in systems(count) {
        let f = directly_forces(&sys);
        for (x, z) in sys.to().pairs() {
            let (images, coimages) = image_coimage(&sys, x, z).unwrap();
            assert!(!images.is_empty() && !coimages.is_empty());
            assert!(images.iter().all(|y| f.forces(y, z)), "image of {x}->{z} does not force {z}");
            assert!(coimages.iter().all(|y| f.forces(y, x)), "co-image of {x}->{z} does not force {x}");
        }
    }
    count as usize
}

pub fn load(name: &str) -> Document {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    Document::parse(&std::fs::read_to_string(&path).expect("data file")).expect("document parses")
}

pub fn semi_fig() -> FactSystem {
    load("semi_fig.json").as_system().unwrap()
}

/// Ground set and relation of the extremal figure, which is not a system.
pub fn ext_fig() -> (GroundSet, Relation) {
    load("ext_fig.json").as_system_doc().unwrap().relation().unwrap()
}

/// Label set, e.g. `set(&sys, "24")` for labels 2 and 4.
pub fn set(ground: &GroundSet, labels: &str) -> BitSet {
    BitSet::from_indices(ground.size(), labels.chars().map(|c| ground.index_of(&c.to_string()).expect("label")))
}

pub fn show(ground: &GroundSet, s: &BitSet) -> String {
    s.iter().map(|i| ground.label(i)).collect()
}

/// Extracted systems of the semidistributive lattices of the standard corpus.
pub fn corpus_systems() -> Vec<(String, FactSystem)> {
    semidist::generators::standard_corpus()
        .unwrap()
        .into_iter()
        .filter(|(_, l)| is_semidistributive(l).is_sd())
        .map(|(name, l)| (name, extract_system(&l).unwrap().system))
        .collect()
}
