//! Irreducibles, the κ maps, semidistributivity and the passage from a
//! semidistributive lattice to its factorization system on join-irreducibles.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::pairs::{pairs_lattice, PairsLattice};
use crate::relation::{GroundSet, Relation};
use crate::system::{validate_system, FactSystem};

/// Join- and meet-irreducibles with their unique lower/upper covers and κ maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleData {
    pub jirr: Vec<usize>,
    pub mirr: Vec<usize>,
    /// `j -> j_*` for each join-irreducible.
    pub j_star: BTreeMap<usize, usize>,
    /// `m -> m^*` for each meet-irreducible.
    pub m_star: BTreeMap<usize, usize>,
    /// `κ(j)`, or `None` where `{x : j ∧ x = j_*}` has no maximum.
    pub kappa: BTreeMap<usize, Option<usize>>,
    /// `κ^d(m)`, or `None` where `{x : m ∨ x = m^*}` has no minimum.
    pub kappa_d: BTreeMap<usize, Option<usize>>,
}

impl IrreducibleData {
    pub fn kappa_total(&self) -> bool {
        self.kappa.values().all(Option::is_some)
    }

    pub fn kappa_d_total(&self) -> bool {
        self.kappa_d.values().all(Option::is_some)
    }

    /// κ(j), panicking if undefined; only for semidistributive lattices.
    pub fn kappa_of(&self, j: usize) -> usize {
        self.kappa[&j].expect("kappa defined")
    }

    pub fn kappa_d_of(&self, m: usize) -> usize {
        self.kappa_d[&m].expect("kappa^d defined")
    }
}

/// Unique greatest element of `set`, if any.
fn maximum(l: &Lattice, set: &BitSet) -> Option<usize> {
    set.iter().find(|&x| set.is_subset(l.down(x)))
}

fn minimum(l: &Lattice, set: &BitSet) -> Option<usize> {
    set.iter().find(|&x| set.is_subset(l.up(x)))
}

pub fn irreducibles(l: &Lattice) -> IrreducibleData {
    let n = l.size();
    let jirr = l.join_irreducibles();
    let mirr = l.meet_irreducibles();
    let j_star: BTreeMap<usize, usize> = jirr.iter().map(|&j| (j, l.lower_covers(j)[0])).collect();
    let m_star: BTreeMap<usize, usize> = mirr.iter().map(|&m| (m, l.upper_covers(m)[0])).collect();
    let kappa = jirr
        .iter()
        .map(|&j| {
            let s = BitSet::from_indices(n, (0..n).filter(|&x| l.meet(j, x) == j_star[&j]));
            (j, maximum(l, &s))
        })
        .collect();
    let kappa_d = mirr
        .iter()
        .map(|&m| {
            let s = BitSet::from_indices(n, (0..n).filter(|&x| l.join(m, x) == m_star[&m]));
            (m, minimum(l, &s))
        })
        .collect();
    IrreducibleData { jirr, mirr, j_star, m_star, kappa, kappa_d }
}

/// Outcome of the definitional semidistributivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdReport {
    pub join_sd: bool,
    pub meet_sd: bool,
    /// `(x, y, z)` with `x ∨ y = x ∨ z` but `x ∨ (y ∧ z) != x ∨ y`.
    pub join_witness: Option<(usize, usize, usize)>,
    /// `(x, y, z)` with `x ∧ y = x ∧ z` but `x ∧ (y ∨ z) != x ∧ y`.
    pub meet_witness: Option<(usize, usize, usize)>,
    /// Meet-SD agrees with totality of κ and join-SD with totality of κ^d.
    pub kappa_agrees: bool,
}

impl SdReport {
    pub fn is_sd(&self) -> bool {
        self.join_sd && self.meet_sd
    }
}

/// Join semidistributivity witness.
///
/// For fixed `x`, the law says each class `{y : x ∨ y = v}` is closed under
/// meets, so it suffices to test the meet of each whole class.
fn join_sd_witness(l: &Lattice) -> Option<(usize, usize, usize)> {
    let n = l.size();
    let mut class_meet = vec![usize::MAX; n];
    for x in 0..n {
        class_meet.iter_mut().for_each(|c| *c = usize::MAX);
        for y in 0..n {
            let v = l.join(x, y);
            class_meet[v] = if class_meet[v] == usize::MAX { y } else { l.meet(class_meet[v], y) };
        }
        for (v, &m) in class_meet.iter().enumerate() {
            if m != usize::MAX && l.join(x, m) != v {
                let class: Vec<usize> = (0..n).filter(|&y| l.join(x, y) == v).collect();
                for (i, &y) in class.iter().enumerate() {
                    for &z in &class[i + 1..] {
                        if l.join(x, l.meet(y, z)) != v {
                            return Some((x, y, z));
                        }
                    }
                }
                unreachable!("a class that is not meet-closed has a failing pair");
            }
        }
    }
    None
}

pub fn is_semidistributive(l: &Lattice) -> SdReport {
    let join_witness = join_sd_witness(l);
    let meet_witness = join_sd_witness(&l.dual());
    let join_sd = join_witness.is_none();
    let meet_sd = meet_witness.is_none();
    let data = irreducibles(l);
    let kappa_agrees = data.kappa_total() == meet_sd && data.kappa_d_total() == join_sd;
    SdReport { join_sd, meet_sd, join_witness, meet_witness, kappa_agrees }
}

/// The system `(JIrr(L), ->_L, ->>_L, >->_L)` with the lattice element behind each index.
#[derive(Clone, Debug)]
pub struct ExtractedSystem {
    pub system: FactSystem,
    /// `jirr[i]` is the lattice element at system index `i`.
    pub jirr: Vec<usize>,
    pub data: IrreducibleData,
}

/// Extract the factorization system of a semidistributive lattice.
///
/// `i -> j` iff `i ≰ κ(j)`, `i ->> j` iff `i >= j`, `i >-> j` iff `κ(i) >= κ(j)`.
/// The alternative arrow test `i ∨ j_* >= j` is checked against the first.
pub fn extract_system(l: &Lattice) -> Result<ExtractedSystem> {
    let data = irreducibles(l);
    if !data.kappa_total() || !data.kappa_d_total() {
        return Err(Error::NotSemidistributive);
    }
    let jirr = data.jirr.clone();
    let k = jirr.len();
    let mut to = Relation::empty(k);
    let mut onto = Relation::empty(k);
    let mut into = Relation::empty(k);
    for (a, &i) in jirr.iter().enumerate() {
        for (b, &j) in jirr.iter().enumerate() {
            let arrow = !l.leq(i, data.kappa_of(j));
            if arrow != l.leq(j, l.join(i, data.j_star[&j])) {
                return Err(Error::Internal(format!("arrow criteria disagree on ({i}, {j})")));
            }
            to.set(a, b, arrow);
            onto.set(a, b, l.leq(j, i));
            into.set(a, b, l.leq(data.kappa_of(j), data.kappa_of(i)));
        }
    }
    let ground = GroundSet::labeled(jirr.iter().map(|j| j.to_string()))?;
    let system = validate_system(ground, to, onto, into)?;
    Ok(ExtractedSystem { system, jirr, data })
}

/// Explicit isomorphism `L -> Pairs(->_L)` produced by [`ftfsdl_roundtrip`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub size: usize,
    /// `correspondence[x]` is the index of the pair matched with lattice element `x`.
    pub correspondence: Vec<usize>,
}

/// Verify that `x ↦ ({j ≤ x}, κ^d({m ≥ x}))` is an isomorphism onto `Pairs(->_L)`
/// with inverse `(X, Y) ↦ ⋁X = ⋀κ(Y)`.
pub fn ftfsdl_roundtrip(l: &Lattice) -> Result<RoundtripReport> {
    let ex = extract_system(l)?;
    let pairs = pairs_lattice(&ex.system)?;
    roundtrip_against(l, &ex, &pairs)
}

pub(crate) fn roundtrip_against(l: &Lattice, ex: &ExtractedSystem, pairs: &PairsLattice) -> Result<RoundtripReport> {
    let fail = |msg: String| Err(Error::IsomorphismFailure(msg));
    let n = l.size();
    let k = ex.jirr.len();
    if pairs.size() != n {
        return fail(format!("lattice has {n} elements but Pairs has {}", pairs.size()));
    }
    let position: BTreeMap<usize, usize> = ex.jirr.iter().enumerate().map(|(a, &j)| (j, a)).collect();
    let mut correspondence = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for x in 0..n {
        let torsion = BitSet::from_indices(k, ex.jirr.iter().enumerate().filter(|&(_, &j)| l.leq(j, x)).map(|(a, _)| a));
        let free = BitSet::from_indices(k, ex.data.mirr.iter().filter(|&&m| l.leq(x, m)).map(|&m| position[&ex.data.kappa_d_of(m)]));
        let Some(p) = pairs.index_of(&torsion) else {
            return fail(format!("element {x} maps to a non-closed set"));
        };
        if pairs.free(p) != &free {
            return fail(format!("element {x}: free part mismatch"));
        }
        if std::mem::replace(&mut used[p], true) {
            return fail(format!("element {x} collides with another element"));
        }
        let join = l.join_all(torsion.iter().map(|a| ex.jirr[a]));
        let meet = l.meet_all(free.iter().map(|a| ex.data.kappa_of(ex.jirr[a])));
        if join != x || meet != x {
            return fail(format!("inverse map sends pair of {x} to ({join}, {meet})"));
        }
        correspondence.push(p);
    }
    let pl = pairs.lattice();
    for x in 0..n {
        for y in 0..n {
            if l.leq(x, y) != pl.leq(correspondence[x], correspondence[y]) {
                return fail(format!("order not preserved at ({x}, {y})"));
            }
        }
    }
    Ok(RoundtripReport { size: n, correspondence })
}
