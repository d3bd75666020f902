//! Direct forcing, quotients by forcing upsets, and congruence lattices.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::pairs::{pairs_lattice, PairsLattice, DEFAULT_PAIRS_CAP};
use crate::relation::Relation;
use crate::system::{validate_system, FactSystem};

/// Default cap on the number of forcing downsets enumerated.
pub const DEFAULT_DOWNSET_CAP: usize = 1 << 22;

/// Default cap on the number of congruences found by the brute-force oracle.
pub const DEFAULT_CONGRUENCE_CAP: usize = 1 << 16;

/// Which clause of the definition produced a forcing edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForcingTag {
    /// `x` is `->>`-minimal in `F(y)`.
    OntoMinimalInF,
    /// `x` is `>->`-maximal in `T(y)`.
    IntoMaximalInT,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingRelation {
    pub squig: Relation,
    pub transitive_closure: Relation,
    /// Non-loop edges `(x, y)` with the clause that fired.
    pub witnesses: Vec<(usize, usize, ForcingTag)>,
}

impl ForcingRelation {
    pub fn forces(&self, x: usize, y: usize) -> bool {
        self.squig.get(x, y)
    }
}

pub fn directly_forces(sys: &FactSystem) -> ForcingRelation {
    let n = sys.size();
    let mut squig = Relation::identity(n);
    let mut witnesses = Vec::new();
    for y in 0..n {
        let f = sys.into_rel().preimage(y);
        let t = sys.onto().image(y);
        for x in 0..n {
            let in_f = f.contains(x) && sys.is_onto_minimal_in(f, x);
            let in_t = t.contains(x) && sys.is_into_maximal_in(t, x);
            let tag = match (in_f, in_t) {
                (true, true) => ForcingTag::Both,
                (true, false) => ForcingTag::OntoMinimalInF,
                (false, true) => ForcingTag::IntoMaximalInT,
                (false, false) => continue,
            };
            squig.set(x, y, true);
            if x != y {
                witnesses.push((x, y, tag));
            }
        }
    }
    witnesses.sort_by_key(|&(x, y, _)| (x, y));
    let transitive_closure = squig.reflexive_transitive_closure();
    ForcingRelation { squig, transitive_closure, witnesses }
}

/// Images (`->>`-minimal) and co-images (`>->`-maximal) of `{y : x ->> y >-> z}`.
pub fn image_coimage(sys: &FactSystem, x: usize, z: usize) -> Result<(BitSet, BitSet)> {
    if !sys.to().get(x, z) {
        return Err(Error::NoArrow { from: x, to: z });
    }
    let middle = sys.onto().image(x).intersection(sys.into_rel().preimage(z));
    let images = BitSet::from_indices(sys.size(), middle.iter().filter(|&y| sys.is_onto_minimal_in(&middle, y)));
    let coimages = sys.into_maximal_elements(&middle);
    Ok((images, coimages))
}

/// First `(arrow source, arrow target, middle element)` where an image fails
/// to force the target or a co-image fails to force the source.
pub fn image_forcing_violation(sys: &FactSystem, forcing: &ForcingRelation) -> Option<(usize, usize, usize)> {
    for (x, z) in sys.to().pairs() {
        let (images, coimages) = image_coimage(sys, x, z).expect("arrow exists");
        if images.is_empty() || coimages.is_empty() {
            return Some((x, z, usize::MAX));
        }
        if let Some(y) = images.iter().find(|&y| !forcing.forces(y, z)) {
            return Some((x, z, y));
        }
        if let Some(y) = coimages.iter().find(|&y| !forcing.forces(y, x)) {
            return Some((x, z, y));
        }
    }
    None
}

/// `Ok` when `set` is closed upward under forcing.
pub fn check_forcing_upset(forcing: &ForcingRelation, set: &BitSet) -> Result<()> {
    for y in set.iter() {
        if let Some(x) = forcing.squig.preimage(y).difference(set).first() {
            return Err(Error::NotAForcingUpset { forcer: x, forced: y });
        }
    }
    Ok(())
}

/// Restriction of all three relations to a forcing upset.
pub fn restrict_system(sys: &FactSystem, upset: &BitSet) -> Result<FactSystem> {
    check_forcing_upset(&directly_forces(sys), upset)?;
    restrict_unchecked(sys, upset)
}

fn restrict_unchecked(sys: &FactSystem, upset: &BitSet) -> Result<FactSystem> {
    let (ground, to, onto, into) = sys.restrict_unchecked(&upset.to_vec());
    validate_system(ground, to, onto, into)
}

/// A partition of `0..n`, with `labels[x]` the least member of the block of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Partition {
        Partition { labels: (0..n).collect() }
    }

    /// Partition whose blocks are the fibers of `key`.
    pub fn from_key<K: std::hash::Hash + Eq>(keys: &[K]) -> Partition {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let labels = keys.iter().enumerate().map(|(x, k)| *first.entry(k).or_insert(x)).collect();
        Partition { labels }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn block_label(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (x, &l) in self.labels.iter().enumerate() {
            map.entry(l).or_default().push(x);
        }
        map.into_values().collect()
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().enumerate().filter(|&(x, &l)| x == l).count()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.size()).all(|x| other.same_block(x, self.labels[x]))
    }
}

/// The quotient of `Pairs` induced by a forcing upset.
#[derive(Clone, Debug)]
pub struct CongruenceSpec {
    pub upset: BitSet,
    pub restricted: FactSystem,
    /// Blocks of `Pairs(->)`, indexed as in the pairs lattice of the full system.
    pub partition: Partition,
    pub quotient: PairsLattice,
    /// `map[i]` is the quotient pair that pair `i` lands on.
    pub map: Vec<usize>,
}

pub fn quotient(sys: &FactSystem, upset: &BitSet) -> Result<CongruenceSpec> {
    quotient_in(sys, &pairs_lattice(sys)?, upset)
}

/// As [`quotient`], reusing an already built pairs lattice of `sys`.
///
/// The map `(X, Y) ↦ (X ∩ U, Y ∩ U)` is checked to be onto, to have intervals
/// as fibers and to preserve meets and joins.
pub fn quotient_in(sys: &FactSystem, pairs: &PairsLattice, upset: &BitSet) -> Result<CongruenceSpec> {
    check_forcing_upset(&directly_forces(sys), upset)?;
    let restricted = restrict_unchecked(sys, upset)?;
    let quotient = PairsLattice::of_relation(restricted.ground().clone(), restricted.to().clone(), DEFAULT_PAIRS_CAP)?;
    let keep = upset.to_vec();
    let mut map = Vec::with_capacity(pairs.size());
    for p in pairs.pairs() {
        let t = p.torsion.project(&keep);
        let f = p.free.project(&keep);
        let q = quotient.index_of(&t).ok_or_else(|| Error::Internal("restricted torsion set is not closed".into()))?;
        if quotient.free(q) != &f {
            return Err(Error::Internal("restricted pair is not orthogonal-maximal".into()));
        }
        map.push(q);
    }
    let fail = |m: &str| Err(Error::Internal(m.to_string()));
    let mut hit = vec![false; quotient.size()];
    map.iter().for_each(|&q| hit[q] = true);
    if hit.contains(&false) {
        return fail("quotient map is not surjective");
    }
    let l = pairs.lattice();
    let ql = quotient.lattice();
    for a in 0..l.size() {
        for b in 0..l.size() {
            if map[l.meet(a, b)] != ql.meet(map[a], map[b]) || map[l.join(a, b)] != ql.join(map[a], map[b]) {
                return fail("quotient map is not a lattice homomorphism");
            }
        }
    }
    let partition = Partition::from_key(&map);
    for block in partition.blocks() {
        if !is_interval(l, &block) {
            return fail("congruence block is not an interval");
        }
    }
    Ok(CongruenceSpec { upset: upset.clone(), restricted, partition, quotient, map })
}

fn is_interval(l: &Lattice, block: &[usize]) -> bool {
    let lo = l.meet_all(block.iter().copied());
    let hi = l.join_all(block.iter().copied());
    let members: HashSet<usize> = block.iter().copied().collect();
    members.contains(&lo) && members.contains(&hi) && (0..l.size()).filter(|&x| l.leq(lo, x) && l.leq(x, hi)).all(|x| members.contains(&x))
}

/// All downsets of a preorder (`x` in `D` and `x R y` give `y` in `D`), sorted.
pub fn downsets(rel: &Relation, cap: usize) -> Result<Vec<BitSet>> {
    let closed = rel.reflexive_transitive_closure();
    let n = rel.size();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(BitSet::new(n));
    queue.push_back(BitSet::new(n));
    while let Some(d) = queue.pop_front() {
        for x in d.complement().iter() {
            let e = d.union(closed.image(x));
            if !seen.contains(&e) {
                if seen.len() >= cap {
                    return Err(Error::SizeLimitExceeded { what: "forcing downsets", limit: cap });
                }
                seen.insert(e.clone());
                queue.push_back(e);
            }
        }
    }
    let mut v: Vec<BitSet> = seen.into_iter().collect();
    v.sort_by_cached_key(|s| (s.count(), s.to_vec()));
    Ok(v)
}

/// Congruences of `Pairs(->)` as forcing downsets ordered by containment.
///
/// A downset `D` lists the elements whose join-irreducible covers are
/// contracted; the matching quotient keeps the upset `Ша \ D`.
#[derive(Clone, Debug)]
pub struct ConLattice {
    pub lattice: Lattice,
    pub downsets: Vec<BitSet>,
}

impl ConLattice {
    pub fn size(&self) -> usize {
        self.downsets.len()
    }

    /// The forcing upset kept by the quotient for congruence `i`.
    pub fn upset(&self, i: usize) -> BitSet {
        self.downsets[i].complement()
    }
}

pub fn con_lattice(sys: &FactSystem) -> Result<ConLattice> {
    con_lattice_capped(sys, DEFAULT_DOWNSET_CAP)
}

pub fn con_lattice_capped(sys: &FactSystem, cap: usize) -> Result<ConLattice> {
    let forcing = directly_forces(sys);
    let downsets = downsets(&forcing.squig, cap)?;
    let index: HashMap<&BitSet, usize> = downsets.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let m = downsets.len();
    // Closure under union and intersection certifies a distributive lattice of sets.
    for a in 0..m {
        for b in a + 1..m {
            if !index.contains_key(&downsets[a].union(&downsets[b])) || !index.contains_key(&downsets[a].intersection(&downsets[b])) {
                return Err(Error::Internal("forcing downsets not closed under union and intersection".into()));
            }
        }
    }
    let rows = (0..m).map(|i| BitSet::from_indices(m, (i..m).filter(|&j| downsets[i].is_subset(&downsets[j])))).collect();
    let lattice = Lattice::from_leq(&Relation::from_rows(rows))?;
    Ok(ConLattice { lattice, downsets })
}

/// Transitive closure of forcing; `x` above `y` means contracting `x` forces `y`.
pub fn forcing_preorder(sys: &FactSystem) -> Relation {
    directly_forces(sys).transitive_closure
}

/// Union-find over lattice elements for congruence closure.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn from_partition(p: &Partition) -> UnionFind {
        UnionFind { parent: p.labels.clone() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Smallest congruence containing `base` and identifying each pair in `extra`.
pub fn congruence_closure(l: &Lattice, base: &Partition, extra: &[(usize, usize)]) -> Partition {
    let n = l.size();
    let mut uf = UnionFind::from_partition(base);
    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in extra {
        if uf.union(a, b) {
            work.push_back((a, b));
        }
    }
    // Pairs already identified by `base` are compatible if `base` is a congruence.
    while let Some((a, b)) = work.pop_front() {
        for u in 0..n {
            for (c, d) in [(l.join(a, u), l.join(b, u)), (l.meet(a, u), l.meet(b, u))] {
                if uf.union(c, d) {
                    work.push_back((c, d));
                }
            }
        }
    }
    let labels = (0..n).map(|x| uf.find(x)).collect();
    Partition { labels }
}

/// The principal congruence generated by a single pair.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Partition {
    congruence_closure(l, &Partition::discrete(l.size()), &[(a, b)])
}

/// Every congruence of `l`, found by closing the discrete congruence under
/// contraction of covers one at a time. Sorted by block count, descending.
pub fn brute_congruences(l: &Lattice, cap: usize) -> Result<Vec<Partition>> {
    let covers = l.cover_edges();
    let start = Partition::discrete(l.size());
    let mut seen: HashSet<Partition> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        for &(a, b) in &covers {
            if p.same_block(a, b) {
                continue;
            }
            let q = congruence_closure(l, &p, &[(a, b)]);
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return Err(Error::SizeLimitExceeded { what: "congruences", limit: cap });
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    let mut v: Vec<Partition> = seen.into_iter().collect();
    v.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
    Ok(v)
}

/// Definitional test: an equivalence compatible with meet and join.
pub fn is_congruence(l: &Lattice, p: &Partition) -> bool {
    let n = l.size();
    if p.size() != n {
        return false;
    }
    for a in 0..n {
        let b = p.block_label(a);
        if a == b {
            continue;
        }
        for u in 0..n {
            if !p.same_block(l.join(a, u), l.join(b, u)) || !p.same_block(l.meet(a, u), l.meet(b, u)) {
                return false;
            }
        }
    }
    true
}

/// `Pairs(->)` is congruence uniform iff forcing has no cycle through two distinct elements.
pub fn is_congruence_uniform(sys: &FactSystem) -> bool {
    directly_forces(sys).squig.is_acyclic_ignoring_loops()
}

/// Compare transitive forcing on the ground set with the lattice forcing order on
/// join-irreducibles: `x` forces `y` iff `con(T_*(x), T(x))` contracts `T_*(y) ⋖ T(y)`.
pub fn verify_forcing_preorder(sys: &FactSystem, pairs: &PairsLattice) -> bool {
    let pre = forcing_preorder(sys);
    let l = pairs.lattice();
    let n = sys.size();
    let covers: Vec<(usize, usize)> = (0..n)
        .map(|x| {
            let j = pairs.principal(x);
            (l.lower_covers(j)[0], j)
        })
        .collect();
    (0..n).all(|x| {
        let theta = principal_congruence(l, covers[x].0, covers[x].1);
        (0..n).all(|y| pre.get(x, y) == theta.same_block(covers[y].0, covers[y].1))
    })
}
