//! Interval systems, doubling, and the distributive, general (two-set) and
//! extremal specializations.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::congruence::is_congruence_uniform;
use crate::error::{Error, Result};
use crate::irreducibles::{extract_system, is_semidistributive, RoundtripReport};
use crate::lattice::Lattice;
use crate::pairs::{PairsLattice, DEFAULT_PAIRS_CAP};
use crate::relation::{fact, mult, GroundSet, Relation};
use crate::system::{diagnose, system_from_relation, validate_system, Diagnostics, FactSystem};

/// The system on `X2 ∩ Y1` whose pairs lattice is the interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct IntervalSystem {
    pub system: FactSystem,
    /// `ground[i]` is the element of the original ground set at index `i`.
    pub ground: Vec<usize>,
    /// Interval elements (pair indices of the original lattice) and their images.
    pub correspondence: Vec<(usize, usize)>,
}

/// Build and verify the interval system for pair indices `lo <= hi`.
pub fn interval_system(sys: &FactSystem, pairs: &PairsLattice, lo: usize, hi: usize) -> Result<IntervalSystem> {
    let l = pairs.lattice();
    for i in [lo, hi] {
        if i >= l.size() {
            return Err(Error::OutOfRange { index: i, size: l.size() });
        }
    }
    if !l.leq(lo, hi) {
        return Err(Error::NotComparable { lo, hi });
    }
    let y1 = pairs.free(lo);
    let x2 = pairs.torsion(hi);
    let keep = x2.intersection(y1).to_vec();
    let system = system_from_relation(sys.ground().restrict(&keep), sys.to().restrict(&keep))?;
    let sub = PairsLattice::of_relation(system.ground().clone(), system.to().clone(), DEFAULT_PAIRS_CAP)?;
    let members: Vec<usize> = (0..l.size()).filter(|&z| l.leq(lo, z) && l.leq(z, hi)).collect();
    if members.len() != sub.size() {
        return Err(Error::Internal(format!("interval has {} elements, interval system {}", members.len(), sub.size())));
    }
    let mut correspondence = Vec::with_capacity(members.len());
    let mut hit = vec![false; sub.size()];
    for &z in &members {
        let u = pairs.torsion(z).intersection(y1).project(&keep);
        let v = pairs.free(z).intersection(x2).project(&keep);
        let w = sub.index_of(&u).filter(|&w| sub.free(w) == &v);
        let Some(w) = w else {
            return Err(Error::Internal(format!("pair {z} does not restrict to a pair")));
        };
        if std::mem::replace(&mut hit[w], true) {
            return Err(Error::Internal("interval map is not injective".into()));
        }
        correspondence.push((z, w));
    }
    for &(a, wa) in &correspondence {
        for &(b, wb) in &correspondence {
            if l.leq(a, b) != sub.lattice().leq(wa, wb) {
                return Err(Error::Internal("interval map does not preserve order".into()));
            }
        }
    }
    Ok(IntervalSystem { system, ground: keep, correspondence })
}

/// A doubled lattice and where each element came from.
#[derive(Clone, Debug)]
pub struct DoubledLattice {
    pub lattice: Lattice,
    /// `(original element, level)`: level 0 outside the interval, 1 or 2 inside.
    pub origin: Vec<(usize, u8)>,
}

/// `L[I]` for the interval `I = [lo, hi]`.
///
/// Elements are numbered by original index, with the two copies of an
/// interval element adjacent (level 1 first).
pub fn double_lattice(l: &Lattice, lo: usize, hi: usize) -> Result<DoubledLattice> {
    for i in [lo, hi] {
        if i >= l.size() {
            return Err(Error::OutOfRange { index: i, size: l.size() });
        }
    }
    if !l.leq(lo, hi) {
        return Err(Error::NotComparable { lo, hi });
    }
    let in_interval = |x: usize| l.leq(lo, x) && l.leq(x, hi);
    let mut origin = Vec::new();
    for x in 0..l.size() {
        if in_interval(x) {
            origin.push((x, 1));
            origin.push((x, 2));
        } else {
            origin.push((x, 0));
        }
    }
    let m = origin.len();
    let rows = origin
        .iter()
        .map(|&(a, i)| {
            BitSet::from_indices(
                m,
                origin.iter().enumerate().filter(|&(_, &(b, j))| l.leq(a, b) && (i == 0 || j == 0 || i <= j)).map(|(k, _)| k),
            )
        })
        .collect();
    let lattice = Lattice::from_leq(&Relation::from_rows(rows))?;
    Ok(DoubledLattice { lattice, origin })
}

fn fresh_label(ground: &GroundSet) -> String {
    let mut label = "a".to_string();
    while ground.index_of(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Add one element `a` (the last index) realizing the doubling of `[lo, hi]`.
///
/// `->` gains `x -> a` for `x` outside `X2` and `a -> y` for `y` outside `Y1`;
/// `->>` gains `a ->> y` for `y` in `X1` and `x ->> a` for `x` outside `X2`
/// with `x ->> X1`; `>->` gains `x >-> a` for `x` in `Y2` and `a >-> y` for
/// `y` outside `Y1` with `Y2 >-> y`.
pub fn double_system(sys: &FactSystem, lo: &crate::pairs::OrthoPair, hi: &crate::pairs::OrthoPair) -> Result<FactSystem> {
    if !lo.torsion.is_subset(&hi.torsion) {
        return Err(Error::NotComparable { lo: 0, hi: 1 });
    }
    let n = sys.size();
    let a = n;
    let (x1, y1, x2, y2) = (&lo.torsion, &lo.free, &hi.torsion, &hi.free);
    let extend = |r: &Relation| {
        let mut out = Relation::empty(n + 1);
        for (x, y) in r.pairs() {
            out.set(x, y, true);
        }
        out.set(a, a, true);
        out
    };
    let mut to = extend(sys.to());
    let mut onto = extend(sys.onto());
    let mut into = extend(sys.into_rel());
    for x in 0..n {
        if !x2.contains(x) {
            to.set(x, a, true);
            if x1.is_subset(sys.onto().image(x)) {
                onto.set(x, a, true);
            }
        }
        if !y1.contains(x) {
            to.set(a, x, true);
            if y2.is_subset(sys.into_rel().preimage(x)) {
                into.set(a, x, true);
            }
        }
        if x1.contains(x) {
            onto.set(a, x, true);
        }
        if y2.contains(x) {
            into.set(x, a, true);
        }
    }
    let ground = sys.ground().with_extra(fresh_label(sys.ground()))?;
    validate_system(ground, to, onto, into)
}

/// The five conditions characterizing the distributive case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistReport {
    pub pairs_distributive: bool,
    pub to_partial_order: bool,
    pub onto_eq_into: bool,
    pub to_eq_onto: bool,
    pub to_eq_into: bool,
}

impl DistReport {
    pub fn all_agree(&self) -> bool {
        let v = [self.to_partial_order, self.onto_eq_into, self.to_eq_onto, self.to_eq_into];
        v.iter().all(|&b| b == self.pairs_distributive)
    }
}

pub fn dist_char(sys: &FactSystem, pairs: &PairsLattice) -> DistReport {
    DistReport {
        pairs_distributive: pairs.lattice().is_distributive(),
        to_partial_order: sys.to().is_partial_order(),
        onto_eq_into: sys.onto() == sys.into_rel(),
        to_eq_onto: sys.to() == sys.onto(),
        to_eq_into: sys.to() == sys.into_rel(),
    }
}

/// A relation from a left set to a right set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSetRelation {
    pub left: GroundSet,
    pub right: GroundSet,
    /// `rows[x]` is the set of right elements `y` with `x -> y`.
    pub rows: Vec<BitSet>,
}

impl TwoSetRelation {
    pub fn new(left: GroundSet, right: GroundSet, rows: Vec<BitSet>) -> Result<TwoSetRelation> {
        if rows.len() != left.size() {
            return Err(Error::DimensionMismatch { expected: left.size(), found: rows.len() });
        }
        if let Some(r) = rows.iter().find(|r| r.universe() != right.size()) {
            return Err(Error::DimensionMismatch { expected: right.size(), found: r.universe() });
        }
        Ok(TwoSetRelation { left, right, rows })
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    fn column(&self, y: usize) -> BitSet {
        BitSet::from_indices(self.left.size(), (0..self.left.size()).filter(|&x| self.get(x, y)))
    }

    /// `X^⊥` on the right.
    pub fn perp_right(&self, set: &BitSet) -> BitSet {
        let mut hit = BitSet::new(self.right.size());
        for x in set.iter() {
            hit.union_with(&self.rows[x]);
        }
        hit.complement()
    }

    /// `^⊥Y` on the left.
    pub fn perp_left(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.left.size(), (0..self.left.size()).filter(|&x| !self.rows[x].intersects(set)))
    }

    pub fn closure(&self, set: &BitSet) -> BitSet {
        self.perp_left(&self.perp_right(set))
    }

    /// `(->>` on the left, `>->` on the right`)`.
    pub fn fact(&self) -> (Relation, Relation) {
        let (p, q) = (self.left.size(), self.right.size());
        let onto = Relation::from_rows(
            (0..p).map(|a| BitSet::from_indices(p, (0..p).filter(|&b| self.rows[b].is_subset(&self.rows[a])))).collect(),
        );
        let cols: Vec<BitSet> = (0..q).map(|y| self.column(y)).collect();
        let into = Relation::from_rows((0..q).map(|a| BitSet::from_indices(q, (0..q).filter(|&b| cols[a].is_subset(&cols[b])))).collect());
        (onto, into)
    }

    /// Every left element has a right companion and every right element a left companion.
    pub fn is_companionable(&self) -> bool {
        let (onto, into) = self.fact();
        let right_ok =
            (0..self.left.size()).all(|x| self.rows[x].iter().any(|y| onto.image(x).iter().all(|x2| x2 == x || !self.get(x2, y))));
        let left_ok = (0..self.right.size()).all(|y| {
            (0..self.left.size()).filter(|&x| self.get(x, y)).any(|x| into.preimage(y).iter().all(|y2| y2 == y || !self.get(x, y2)))
        });
        right_ok && left_ok
    }
}

/// `(JIrr(L), MIrr(L), ≰)`.
pub fn markowsky_system(l: &Lattice) -> TwoSetRelation {
    let j = l.join_irreducibles();
    let m = l.meet_irreducibles();
    let rows = j.iter().map(|&a| BitSet::from_indices(m.len(), (0..m.len()).filter(|&b| !l.leq(a, m[b])))).collect();
    let label = |v: &[usize]| GroundSet::labeled(v.iter().map(|x| x.to_string())).expect("distinct labels");
    TwoSetRelation { left: label(&j), right: label(&m), rows }
}

/// Maximal orthogonal pairs of a two-set relation, sorted like [`PairsLattice`].
#[derive(Clone, Debug)]
pub struct TwoSetPairs {
    pub pairs: Vec<(BitSet, BitSet)>,
    pub lattice: Lattice,
    index: HashMap<BitSet, usize>,
}

impl TwoSetPairs {
    pub fn index_of(&self, left: &BitSet) -> Option<usize> {
        self.index.get(left).copied()
    }
}

pub fn two_set_pairs(rel: &TwoSetRelation, cap: usize) -> Result<TwoSetPairs> {
    let p = rel.left.size();
    let start = rel.closure(&BitSet::new(p));
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for e in x.complement().iter() {
            let y = rel.closure(&x.with(e));
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::SizeLimitExceeded { what: "two-set pairs", limit: cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut sets: Vec<BitSet> = seen.into_iter().collect();
    sets.sort_by_cached_key(|s| (s.count(), s.to_vec()));
    let k = sets.len();
    let rows = (0..k).map(|i| BitSet::from_indices(k, (i..k).filter(|&j| sets[i].is_subset(&sets[j])))).collect();
    let lattice = Lattice::from_leq(&Relation::from_rows(rows))?;
    let index = sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let pairs = sets.into_iter().map(|s| (rel.perp_right(&s), s)).map(|(f, s)| (s, f)).collect();
    Ok(TwoSetPairs { pairs, lattice, index })
}

/// Verify `x ↦ ({j <= x}, {m >= x})` is an isomorphism `L -> Pairs(≰)` with
/// inverse `(X, Y) ↦ ⋁X = ⋀Y`, and that the relation is companionable.
pub fn markowsky_roundtrip(l: &Lattice) -> Result<RoundtripReport> {
    let rel = markowsky_system(l);
    if !rel.is_companionable() {
        return Err(Error::IsomorphismFailure("markowsky relation is not companionable".into()));
    }
    let tp = two_set_pairs(&rel, DEFAULT_PAIRS_CAP)?;
    let j = l.join_irreducibles();
    let m = l.meet_irreducibles();
    let n = l.size();
    if tp.pairs.len() != n {
        return Err(Error::IsomorphismFailure(format!("{} pairs for {n} elements", tp.pairs.len())));
    }
    let mut correspondence = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for x in 0..n {
        let left = BitSet::from_indices(j.len(), (0..j.len()).filter(|&a| l.leq(j[a], x)));
        let right = BitSet::from_indices(m.len(), (0..m.len()).filter(|&b| l.leq(x, m[b])));
        let Some(p) = tp.index_of(&left).filter(|&p| tp.pairs[p].1 == right) else {
            return Err(Error::IsomorphismFailure(format!("element {x} is not sent to a pair")));
        };
        if std::mem::replace(&mut hit[p], true) {
            return Err(Error::IsomorphismFailure("map is not injective".into()));
        }
        if l.join_all(left.iter().map(|a| j[a])) != x || l.meet_all(right.iter().map(|b| m[b])) != x {
            return Err(Error::IsomorphismFailure(format!("inverse fails at {x}")));
        }
        correspondence.push(p);
    }
    for x in 0..n {
        for y in 0..n {
            if l.leq(x, y) != tp.lattice.leq(correspondence[x], correspondence[y]) {
                return Err(Error::IsomorphismFailure("order not preserved".into()));
            }
        }
    }
    Ok(RoundtripReport { size: n, correspondence })
}

/// The bijection `μ : JIrr -> MIrr` with `j ≰ μ(j)` and the induced relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FtfelMu {
    /// `(j, μ(j))` in order of `j`.
    pub mu: Vec<(usize, usize)>,
    /// `->^μ` on join-irreducible positions: `a -> b` iff `j_a ≰ μ(j_b)`.
    #[serde(skip)]
    pub relation: Relation,
    pub acyclic: bool,
    /// No other bijection makes `->^μ` reflexive.
    pub unique: bool,
}

/// Find a reflexive `μ` by augmenting-path matching on the `j ≰ m` graph.
pub fn ftfel_mu(l: &Lattice) -> Option<FtfelMu> {
    let j = l.join_irreducibles();
    let m = l.meet_irreducibles();
    let k = j.len();
    if m.len() != k {
        return None;
    }
    let adj: Vec<Vec<usize>> = j.iter().map(|&a| (0..k).filter(|&b| !l.leq(a, m[b])).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; k];
    fn augment(a: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &b in &adj[a] {
            if std::mem::replace(&mut seen[b], true) {
                continue;
            }
            if owner[b].is_none_or(|c| augment(c, adj, owner, seen)) {
                owner[b] = Some(a);
                return true;
            }
        }
        false
    }
    for a in 0..k {
        if !augment(a, &adj, &mut owner, &mut vec![false; k]) {
            return None;
        }
    }
    let mut mu_pos = vec![0; k];
    for (b, o) in owner.iter().enumerate() {
        mu_pos[o.expect("perfect matching")] = b;
    }
    let relation = Relation::from_pairs(k, (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).filter(|&(a, b)| !l.leq(j[a], m[mu_pos[b]])));
    // Another reflexive bijection exists iff ->^μ has a cycle through distinct elements.
    let acyclic = relation.is_acyclic_ignoring_loops();
    Some(FtfelMu { mu: (0..k).map(|a| (j[a], m[mu_pos[a]])).collect(), relation, acyclic, unique: acyclic })
}

/// Chain length versus irreducible counts, with `μ` when extremal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalCertificate {
    pub chain: Vec<usize>,
    pub chain_length: usize,
    pub n_jirr: usize,
    pub n_mirr: usize,
    pub extremal: bool,
    pub mu: Option<FtfelMu>,
}

pub fn extremal_analysis(l: &Lattice) -> ExtremalCertificate {
    let chain = l.longest_chain();
    let chain_length = chain.len() - 1;
    let n_jirr = l.join_irreducibles().len();
    let n_mirr = l.meet_irreducibles().len();
    let extremal = chain_length == n_jirr && chain_length == n_mirr;
    let mu = if extremal { ftfel_mu(l) } else { None };
    ExtremalCertificate { chain, chain_length, n_jirr, n_mirr, extremal, mu }
}

/// Lattice-level classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub size: usize,
    pub distributive: bool,
    pub join_sd: bool,
    pub meet_sd: bool,
    pub semidistributive: bool,
    pub congruence_uniform: bool,
    pub extremal: bool,
    /// Extremal and semidistributive.
    pub trim_candidate: bool,
}

pub fn classify_lattice(l: &Lattice) -> Result<LatticeReport> {
    let sd = is_semidistributive(l);
    let semidistributive = sd.is_sd();
    let congruence_uniform = semidistributive && is_congruence_uniform(&extract_system(l)?.system);
    let extremal = extremal_analysis(l).extremal;
    Ok(LatticeReport {
        size: l.size(),
        distributive: l.is_distributive(),
        join_sd: sd.join_sd,
        meet_sd: sd.meet_sd,
        semidistributive,
        congruence_uniform,
        extremal,
        trim_candidate: extremal && semidistributive,
    })
}

/// Classification of a relation `->` together with `Pairs(->)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    /// Axioms checked with `(->>, >->) = Fact(->)`.
    pub axioms: Diagnostics,
    pub two_acyclic: bool,
    pub acyclic_reflexive: bool,
    pub mult_fact_recovers_to: bool,
    pub lattice: LatticeReport,
    /// For acyclic reflexive `->`: SD iff `-> = Mult(Fact(->))`.
    pub semidistributive_criterion_holds: Option<bool>,
    /// For two-acyclic systems: extremal iff `->` acyclic reflexive.
    pub extremal_criterion_holds: Option<bool>,
}

pub fn classify_relation(ground: &GroundSet, to: &Relation) -> Result<SystemReport> {
    let (onto, into) = fact(to)?;
    let axioms = diagnose(to, &onto, &into);
    let two_acyclic = axioms.is_valid();
    let acyclic_reflexive = to.is_acyclic_reflexive();
    let mult_fact_recovers_to = &mult(&onto, &into)? == to;
    let pairs = PairsLattice::of_relation(ground.clone(), to.clone(), DEFAULT_PAIRS_CAP)?;
    let lattice = classify_lattice(pairs.lattice())?;
    let semidistributive_criterion_holds = acyclic_reflexive.then_some(lattice.semidistributive == mult_fact_recovers_to);
    let extremal_criterion_holds = two_acyclic.then_some(lattice.extremal == acyclic_reflexive);
    Ok(SystemReport {
        axioms,
        two_acyclic,
        acyclic_reflexive,
        mult_fact_recovers_to,
        lattice,
        semidistributive_criterion_holds,
        extremal_criterion_holds,
    })
}

/// All intervals `(lo, hi)` with `lo <= hi`.
pub fn all_intervals(l: &Lattice) -> Vec<(usize, usize)> {
    let n = l.size();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| l.leq(a, b)).collect()
}
