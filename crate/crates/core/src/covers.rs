//! Lower covers via `Del`/`Cov`, canonical join representations and the
//! canonical join complex.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::pairs::{closure, PairsLattice};
use crate::relation::fact;
use crate::system::FactSystem;

/// `T(x) = {x' : x ->> x'}`.
pub fn t_of(sys: &FactSystem, x: usize) -> BitSet {
    sys.onto().image(x).clone()
}

/// `T(x) \ {x}`.
pub fn t_star(sys: &FactSystem, x: usize) -> BitSet {
    sys.onto().image(x).without(x)
}

/// `F(x) = {x' : x' >-> x}`.
pub fn f_of(sys: &FactSystem, x: usize) -> BitSet {
    sys.into_rel().preimage(x).clone()
}

/// `F(x) \ {x}`.
pub fn f_star(sys: &FactSystem, x: usize) -> BitSet {
    sys.into_rel().preimage(x).without(x)
}

/// `Del(X, c) = X \ {x : x ->> c}`; not closed in general.
pub fn del(sys: &FactSystem, set: &BitSet, c: usize) -> Result<BitSet> {
    if !set.contains(c) {
        return Err(Error::ElementNotInSet { element: c });
    }
    Ok(set.difference(sys.onto().preimage(c)))
}

/// The lower covers of a closed set, one per element of `Cov(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverData {
    pub closed_set: BitSet,
    pub cov: Vec<usize>,
    /// `lower_covers[i] = Del(X, cov[i])`.
    pub lower_covers: Vec<BitSet>,
}

/// `Cov(X)` as the `->>`-maximal elements among the `>->`-maximal elements of `X`,
/// re-checked against the definition (`Del(X, c)` closed and generating `X` with `c`).
pub fn cov(sys: &FactSystem, set: &BitSet) -> Result<CoverData> {
    if !sys.is_closed(set) {
        return Err(Error::NotClosed);
    }
    let candidates = sys.into_maximal_elements(set);
    let cov: Vec<usize> = sys.onto_maximal_elements(&candidates).to_vec();
    let mut lower_covers = Vec::with_capacity(cov.len());
    for &c in &cov {
        let d = del(sys, set, c)?;
        if !sys.is_closed(&d) || &sys.closure(&d.with(c)) != set {
            return Err(Error::Internal(format!("element {c} fails the definition of Cov")));
        }
        lower_covers.push(d);
    }
    Ok(CoverData { closed_set: set.clone(), cov, lower_covers })
}

/// `Cov(X)` as the `>->'`-maximal elements of `X`, where `>->'` comes from
/// `Fact` of `->` restricted to `X`. Diagnostic only; recomputes `Fact`.
pub fn cov_via_restricted_fact(sys: &FactSystem, set: &BitSet) -> Result<BitSet> {
    if !sys.is_closed(set) {
        return Err(Error::NotClosed);
    }
    let keep = set.to_vec();
    let (_, into) = fact(&sys.to().restrict(&keep))?;
    let k = keep.len();
    let all = BitSet::full(k);
    let maximal = (0..k).filter(|&c| !into.preimage(c).without(c).intersects(&all)).map(|c| keep[c]);
    Ok(BitSet::from_indices(sys.size(), maximal))
}

/// `{T(c) : c in Cov(X)}`, checked to join to `X` and to form an antichain.
pub fn canonical_join_rep(sys: &FactSystem, set: &BitSet) -> Result<Vec<BitSet>> {
    let data = cov(sys, set)?;
    let rep: Vec<BitSet> = data.cov.iter().map(|&c| t_of(sys, c)).collect();
    let union = rep.iter().fold(sys.empty_set(), |acc, t| acc.union(t));
    if &sys.closure(&union) != set {
        return Err(Error::Internal("canonical join representation does not join to X".into()));
    }
    for (i, a) in rep.iter().enumerate() {
        for (j, b) in rep.iter().enumerate() {
            if i != j && a.is_subset(b) {
                return Err(Error::Internal("canonical join representation is not an antichain".into()));
            }
        }
    }
    // Any join representation must meet each T(c) above Del(X, c).
    for (&c, d) in data.cov.iter().zip(&data.lower_covers) {
        if d.contains(c) {
            return Err(Error::Internal(format!("Del(X, {c}) still contains {c}")));
        }
    }
    Ok(rep)
}

/// `S ≤≤ S'`: every element of `S` lies below some element of `S'`.
pub fn refines(l: &Lattice, s: &[usize], s_prime: &[usize]) -> bool {
    s.iter().all(|&a| s_prime.iter().any(|&b| l.leq(a, b)))
}

/// Canonical join representation of `x` computed from the lattice alone.
///
/// A join-irreducible `j <= x` is forced when the join-irreducibles below `x`
/// that are not above `j` fail to join to `x`; every joining set then contains
/// an element above `j`. A canonical representation exists exactly when the
/// maximal forced elements join to `x`, and it is that set.
pub fn brute_cjr(l: &Lattice, x: usize) -> Option<Vec<usize>> {
    let below: Vec<usize> = l.join_irreducibles().into_iter().filter(|&j| l.leq(j, x)).collect();
    let forced: Vec<usize> = below.iter().copied().filter(|&j| l.join_all(below.iter().copied().filter(|&i| !l.leq(j, i))) != x).collect();
    let maximal: Vec<usize> = forced.iter().copied().filter(|&j| !forced.iter().any(|&k| k != j && l.leq(j, k))).collect();
    (l.join_all(maximal.iter().copied()) == x).then_some(maximal)
}

/// Largest number of join-irreducibles below an element for [`brute_cjr_enumerate`].
pub const ENUMERATE_LIMIT: usize = 16;

/// Literal definition: the `≤≤`-minimum among all antichains of
/// join-irreducibles joining to `x`. Exponential; for cross-checking.
pub fn brute_cjr_enumerate(l: &Lattice, x: usize) -> Result<Option<Vec<usize>>> {
    let below: Vec<usize> = l.join_irreducibles().into_iter().filter(|&j| l.leq(j, x)).collect();
    let k = below.len();
    if k > ENUMERATE_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "join representations", limit: ENUMERATE_LIMIT });
    }
    let mut joining: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << k) {
        let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| below[i]).collect();
        let antichain = s.iter().all(|&a| s.iter().all(|&b| a == b || !l.leq(a, b)));
        if antichain && l.join_all(s.iter().copied()) == x {
            joining.push(s);
        }
    }
    Ok(joining.iter().find(|s| joining.iter().all(|t| refines(l, s, t))).cloned())
}

/// Canonical join complex: vertices are the ground set, edges the pairs with
/// no arrow either way. Faces are the cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CJComplex {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CJComplex {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// `S` is a face iff all its 2-subsets are edges.
    pub fn is_face(&self, set: &BitSet) -> bool {
        let v = set.to_vec();
        v.iter().enumerate().all(|(i, &a)| v[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

pub fn cj_complex(sys: &FactSystem) -> CJComplex {
    let n = sys.size();
    let to = sys.to();
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !to.get(a, b) && !to.get(b, a)).collect();
    CJComplex { vertices: n, edges }
}

/// Whether `{T(x) : x in S}` is the canonical join representation of its join,
/// decided by the lattice-only oracle.
pub fn joins_canonically(pairs: &PairsLattice, set: &BitSet) -> bool {
    let elems: Vec<usize> = set.iter().map(|x| pairs.principal(x)).collect();
    let l = pairs.lattice();
    let x = l.join_all(elems.iter().copied());
    let mut sorted = elems.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != elems.len() {
        return false;
    }
    match brute_cjr(l, x) {
        Some(mut rep) => {
            rep.sort_unstable();
            rep == sorted
        }
        None => false,
    }
}

/// Check the complex against the oracle on every vertex pair; for SD systems
/// flagness then determines all faces.
pub fn verify_cj_complex(complex: &CJComplex, pairs: &PairsLattice) -> bool {
    let n = complex.vertices;
    (0..n).all(|a| (a + 1..n).all(|b| complex.has_edge(a, b) == joins_canonically(pairs, &BitSet::from_indices(n, [a, b]))))
}

/// Lower covers of closed `X` read off the Hasse diagram of `Pairs`.
pub fn hasse_lower_covers(pairs: &PairsLattice, set: &BitSet) -> Result<Vec<BitSet>> {
    let i = pairs.index_of(set).ok_or(Error::NotClosed)?;
    let mut v: Vec<BitSet> = pairs.lattice().lower_covers(i).iter().map(|&j| pairs.torsion(j).clone()).collect();
    v.sort();
    Ok(v)
}

/// The `Del` identities for a `>->`-maximal `c` in closed `X` with `Y = X^⊥`:
/// `X \ {x ->> c} = X \ {x -> c} = ^⊥(Y ∪ {c})`.
pub fn del_identities_hold(sys: &FactSystem, set: &BitSet, c: usize) -> bool {
    let Ok(d) = del(sys, set, c) else { return false };
    let via_to = set.difference(sys.to().preimage(c));
    let via_perp = sys.perp_left(&sys.perp_right(set).with(c));
    d == via_to && d == via_perp
}

/// `Del(X, c) ∧ T(c) = T_*(c)` and `Del(X, c) ∨ T(c) = X` for every `c` in `Cov(X)`.
pub fn cov_meet_join_identities_hold(sys: &FactSystem, set: &BitSet) -> Result<bool> {
    let data = cov(sys, set)?;
    Ok(data.cov.iter().zip(&data.lower_covers).all(|(&c, d)| {
        let t = t_of(sys, c);
        d.intersection(&t) == t_star(sys, c) && &closure(sys.to(), &d.union(&t)) == set
    }))
}
