//! Orthogonality, the closure operator and the lattice of maximal orthogonal pairs.

use std::collections::{HashMap, VecDeque};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::relation::{GroundSet, Relation};
use crate::system::FactSystem;

/// Default cap on the number of closed sets enumerated.
pub const DEFAULT_PAIRS_CAP: usize = 1 << 20;

/// Largest ground set for which the subset-scan oracle is allowed.
pub const BRUTE_SCAN_LIMIT: usize = 20;

/// `X^⊥ = {y : x -/-> y for all x in X}`.
pub fn perp_right(to: &Relation, set: &BitSet) -> BitSet {
    to.image_of_set(set).complement()
}

/// `^⊥Y = {x : x -/-> y for all y in Y}`.
pub fn perp_left(to: &Relation, set: &BitSet) -> BitSet {
    to.preimage_of_set(set).complement()
}

/// `^⊥(X^⊥)`.
pub fn closure(to: &Relation, set: &BitSet) -> BitSet {
    perp_left(to, &perp_right(to, set))
}

pub fn is_closed(to: &Relation, set: &BitSet) -> bool {
    &closure(to, set) == set
}

/// A maximal orthogonal pair `(X, Y)` with `Y = X^⊥` and `X = ^⊥Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthoPair {
    pub torsion: BitSet,
    pub free: BitSet,
}

impl OrthoPair {
    /// The pair generated by an arbitrary subset.
    pub fn generated_by(to: &Relation, set: &BitSet) -> OrthoPair {
        let free = perp_right(to, set);
        OrthoPair { torsion: perp_left(to, &free), free }
    }

    /// The pair with the given closed torsion part.
    pub fn from_closed(to: &Relation, torsion: BitSet) -> Result<OrthoPair> {
        let free = perp_right(to, &torsion);
        if perp_left(to, &free) != torsion {
            return Err(Error::NotClosed);
        }
        Ok(OrthoPair { torsion, free })
    }
}

/// All closed sets of `to`, sorted by size then lexicographically.
///
/// Closed sets are generated from `closure(∅)` by repeatedly joining with
/// single elements; every closed set is the closure of its elements, so this
/// reaches all of them.
pub fn closed_sets(to: &Relation, cap: usize) -> Result<Vec<BitSet>> {
    let n = to.size();
    let start = closure(to, &BitSet::new(n));
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), ());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for e in x.complement().iter() {
            let y = closure(to, &x.with(e));
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(Error::SizeLimitExceeded { what: "closed sets", limit: cap });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut sets: Vec<BitSet> = seen.into_keys().collect();
    sort_sets(&mut sets);
    Ok(sets)
}

/// Subset-scan oracle: every fixpoint of the closure operator.
pub fn brute_closed_sets(to: &Relation) -> Result<Vec<BitSet>> {
    let n = to.size();
    if n > BRUTE_SCAN_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "subset scan ground set", limit: BRUTE_SCAN_LIMIT });
    }
    let mut sets = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let s = BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if is_closed(to, &s) {
            sets.push(s);
        }
    }
    sort_sets(&mut sets);
    Ok(sets)
}

fn sort_sets(sets: &mut [BitSet]) {
    sets.sort_by_cached_key(|s| (s.count(), s.to_vec()));
}

/// The lattice `Pairs(to)` of maximal orthogonal pairs, ordered by torsion containment.
///
/// Index 0 is the bottom and the last index the top.
#[derive(Clone, Debug)]
pub struct PairsLattice {
    ground: GroundSet,
    to: Relation,
    pairs: Vec<OrthoPair>,
    index: HashMap<BitSet, usize>,
    lattice: Lattice,
}

/// `Pairs` of a validated system with the default cap.
pub fn pairs_lattice(sys: &FactSystem) -> Result<PairsLattice> {
    PairsLattice::of_relation(sys.ground().clone(), sys.to().clone(), DEFAULT_PAIRS_CAP)
}

impl PairsLattice {
    /// `Pairs` of an arbitrary relation; it need not come from a factorization system.
    pub fn of_relation(ground: GroundSet, to: Relation, cap: usize) -> Result<PairsLattice> {
        if ground.size() != to.size() {
            return Err(Error::DimensionMismatch { expected: ground.size(), found: to.size() });
        }
        let sets = closed_sets(&to, cap)?;
        let pairs: Vec<OrthoPair> = sets.into_iter().map(|t| OrthoPair { free: perp_right(&to, &t), torsion: t }).collect();
        let m = pairs.len();
        let rows = (0..m).map(|i| BitSet::from_indices(m, (i..m).filter(|&j| pairs[i].torsion.is_subset(&pairs[j].torsion)))).collect();
        let lattice = Lattice::from_leq(&Relation::from_rows(rows))?;
        let index = pairs.iter().enumerate().map(|(i, p)| (p.torsion.clone(), i)).collect();
        Ok(PairsLattice { ground, to, pairs, index, lattice })
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn to(&self) -> &Relation {
        &self.to
    }

    pub fn pairs(&self) -> &[OrthoPair] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> &OrthoPair {
        &self.pairs[i]
    }

    pub fn torsion(&self, i: usize) -> &BitSet {
        &self.pairs[i].torsion
    }

    pub fn free(&self, i: usize) -> &BitSet {
        &self.pairs[i].free
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    /// Index of the pair with this torsion part, if it is closed.
    pub fn index_of(&self, torsion: &BitSet) -> Option<usize> {
        self.index.get(torsion).copied()
    }

    /// Index of the pair generated by an arbitrary subset.
    pub fn index_of_closure(&self, set: &BitSet) -> usize {
        self.index[&closure(&self.to, set)]
    }

    /// Index of `(T(x), T(x)^⊥)`, the pair generated by a single element.
    pub fn principal(&self, x: usize) -> usize {
        self.index_of_closure(&BitSet::singleton(self.ground.size(), x))
    }

    pub fn torsion_sets(&self) -> Vec<&BitSet> {
        self.pairs.iter().map(|p| &p.torsion).collect()
    }
}

impl FactSystem {
    pub fn perp_right(&self, set: &BitSet) -> BitSet {
        perp_right(self.to(), set)
    }

    pub fn perp_left(&self, set: &BitSet) -> BitSet {
        perp_left(self.to(), set)
    }

    pub fn closure(&self, set: &BitSet) -> BitSet {
        closure(self.to(), set)
    }

    pub fn is_closed(&self, set: &BitSet) -> bool {
        is_closed(self.to(), set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::tests::{hexagon_system, path_relation};

    fn set(items: &[usize]) -> BitSet {
        BitSet::from_indices(4, items.iter().map(|i| i - 1))
    }

    #[test]
    fn perps_on_hexagon() {
        let s = hexagon_system();
        assert_eq!(s.perp_right(&set(&[2])), set(&[1]));
        assert_eq!(s.perp_right(&set(&[])), set(&[1, 2, 3, 4]));
        assert_eq!(s.perp_right(&set(&[1, 2, 3, 4])), set(&[]));
        assert_eq!(s.closure(&set(&[2])), set(&[2, 4]));
        assert_eq!(s.closure(&set(&[])), set(&[]));
        assert_eq!(s.closure(&set(&[1, 4])), set(&[1, 2, 3, 4]));
    }

    #[test]
    fn hexagon_has_six_pairs() {
        let p = pairs_lattice(&hexagon_system()).unwrap();
        let expected = [set(&[]), set(&[1]), set(&[4]), set(&[1, 3]), set(&[2, 4]), set(&[1, 2, 3, 4])];
        assert_eq!(p.size(), 6);
        assert_eq!(p.torsion_sets(), expected.iter().collect::<Vec<_>>());
        assert_eq!(p.lattice().bottom(), 0);
        assert_eq!(p.lattice().top(), 5);
        assert_eq!(brute_closed_sets(p.to()).unwrap(), expected.to_vec());
    }

    #[test]
    fn path_relation_has_nine_closed_sets() {
        let p = PairsLattice::of_relation(GroundSet::unlabeled(4), path_relation(), DEFAULT_PAIRS_CAP).unwrap();
        assert_eq!(p.size(), 9);
        let expected =
            [set(&[]), set(&[1]), set(&[2]), set(&[4]), set(&[1, 2]), set(&[1, 4]), set(&[3, 4]), set(&[2, 3, 4]), set(&[1, 2, 3, 4])];
        assert_eq!(p.torsion_sets(), expected.iter().collect::<Vec<_>>());
    }

    #[test]
    fn empty_ground_gives_one_pair() {
        let p = PairsLattice::of_relation(GroundSet::unlabeled(0), Relation::empty(0), 10).unwrap();
        assert_eq!(p.size(), 1);
        assert!(p.pair(0).torsion.is_empty() && p.pair(0).free.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let err = PairsLattice::of_relation(GroundSet::unlabeled(4), Relation::identity(4), 5).unwrap_err();
        assert!(matches!(err, Error::SizeLimitExceeded { .. }));
    }

    #[test]
    fn dual_pairs_are_reversed() {
        let s = hexagon_system();
        let p = pairs_lattice(&s).unwrap();
        let d = pairs_lattice(&s.op_dual()).unwrap();
        assert_eq!(p.size(), d.size());
        for pair in p.pairs() {
            let i = d.index_of(&pair.free).expect("free part closed in dual");
            assert_eq!(d.free(i), &pair.torsion);
        }
    }
}
