//! Finite binary relations on an indexed ground set, and the `fact` / `mult`
//! operators that pass between a reflexive relation and a pair of preorders.
//!
//! Order convention: whenever a relation is read as an order, an arrow
//! `x -> y` means `x >= y`. So a "downset" of a relation is a set `D` with
//! `x in D, x -> y  =>  y in D`, and an "upset" is closed the other way.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// The ground set: elements are the indices `0..size()`, labels are for display.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    /// Ground set whose labels are the decimal indices.
    pub fn unlabeled(size: usize) -> Self {
        GroundSet { labels: (0..size).map(|i| i.to_string()).collect() }
    }

    pub fn labeled<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidLabels(format!("duplicate label {l:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sub-ground-set on the listed indices, keeping their labels.
    pub fn restrict(&self, keep: &[usize]) -> GroundSet {
        GroundSet { labels: keep.iter().map(|&i| self.labels[i].clone()).collect() }
    }

    pub fn with_extra(&self, label: String) -> Result<GroundSet> {
        let mut labels = self.labels.clone();
        labels.push(label);
        GroundSet::labeled(labels)
    }
}

/// A binary relation on `0..n` stored as a boolean matrix with cached columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<(usize, usize)> = self.pairs().collect();
        f.debug_struct("Relation").field("n", &self.size()).field("pairs", &pairs).finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { rows: vec![BitSet::new(n); n], cols: vec![BitSet::new(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.set(x, y, true);
        }
        r
    }

    /// Identity plus the given pairs.
    pub fn reflexive_from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Relation::from_pairs(n, pairs);
        r.add_loops();
        r
    }

    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self> {
        let n = matrix.len();
        let mut r = Relation::empty(n);
        for (x, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (y, &v) in row.iter().enumerate() {
                if v {
                    r.set(x, y, true);
                }
            }
        }
        Ok(r)
    }

    pub fn from_rows(rows: Vec<BitSet>) -> Self {
        let n = rows.len();
        let mut cols = vec![BitSet::new(n); n];
        for (x, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.universe(), n);
            for y in row.iter() {
                cols[y].insert(x);
            }
        }
        Relation { rows, cols }
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.get(x, y)).collect()).collect()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.rows[x].set(y, value);
        self.cols[y].set(x, value);
    }

    pub fn add_loops(&mut self) {
        for i in 0..self.size() {
            self.set(i, i, true);
        }
    }

    /// `{y : x -> y}`.
    #[inline]
    pub fn image(&self, x: usize) -> &BitSet {
        &self.rows[x]
    }

    /// `{x : x -> y}`.
    #[inline]
    pub fn preimage(&self, y: usize) -> &BitSet {
        &self.cols[y]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    /// Pairs `x -> y` with `x != y`.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(|(x, y)| x != y)
    }

    /// Union of images of the members of `set`.
    pub fn image_of_set(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size());
        for x in set.iter() {
            out.union_with(&self.rows[x]);
        }
        out
    }

    pub fn preimage_of_set(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size());
        for y in set.iter() {
            out.union_with(&self.cols[y]);
        }
        out
    }

    pub fn first_non_loop(&self) -> Option<usize> {
        (0..self.size()).find(|&i| !self.get(i, i))
    }

    pub fn is_reflexive(&self) -> bool {
        self.first_non_loop().is_none()
    }

    /// A witness `(x, y, z)` with `x -> y -> z` but not `x -> z`.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.size() {
            let row = &self.rows[x];
            for y in row.iter() {
                if !self.rows[y].is_subset(row) {
                    let z = self.rows[y].difference(row).first().expect("nonempty difference");
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    /// A witness `x != y` with `x -> y -> x`.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        self.arrows().find(|&(x, y)| self.get(y, x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_witness().is_none()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_transitive() && self.is_antisymmetric()
    }

    pub fn is_subrelation(&self, other: &Relation) -> bool {
        self.size() == other.size() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation::from_rows(self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(b)).collect())
    }

    pub fn transpose(&self) -> Relation {
        Relation { rows: self.cols.clone(), cols: self.rows.clone() }
    }

    /// Reflexive-transitive closure, by Warshall's algorithm on bit rows.
    pub fn reflexive_transitive_closure(&self) -> Relation {
        let n = self.size();
        let mut rows = self.rows.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(i);
        }
        for k in 0..n {
            let rk = rows[k].clone();
            for row in rows.iter_mut() {
                if row.contains(k) {
                    row.union_with(&rk);
                }
            }
        }
        Relation::from_rows(rows)
    }

    /// True when the only directed cycles are loops.
    pub fn is_acyclic_ignoring_loops(&self) -> bool {
        self.cycle_witness().is_none()
    }

    /// Some `x != y` lying on a common directed cycle.
    pub fn cycle_witness(&self) -> Option<(usize, usize)> {
        self.reflexive_transitive_closure().antisymmetry_witness()
    }

    /// Reflexive and acyclic apart from loops.
    pub fn is_acyclic_reflexive(&self) -> bool {
        self.is_reflexive() && self.is_acyclic_ignoring_loops()
    }

    /// Restriction to `keep`, renumbered `0..keep.len()` in the listed order.
    pub fn restrict(&self, keep: &[usize]) -> Relation {
        let rows = keep.iter().map(|&x| self.rows[x].project(keep)).collect();
        Relation::from_rows(rows)
    }

    /// Relabel through a bijection: `x -> y` here becomes `perm[x] -> perm[y]`.
    pub fn permute(&self, perm: &[usize]) -> Relation {
        Relation::from_pairs(self.size(), self.pairs().map(|(x, y)| (perm[x], perm[y])))
    }

    pub fn is_downset(&self, set: &BitSet) -> bool {
        self.image_of_set(set).is_subset(set)
    }

    pub fn is_upset(&self, set: &BitSet) -> bool {
        self.preimage_of_set(set).is_subset(set)
    }
}

fn check_reflexive(rel: &Relation, name: &'static str) -> Result<()> {
    match rel.first_non_loop() {
        Some(element) => Err(Error::NonReflexive { relation: name, element }),
        None => Ok(()),
    }
}

/// Factor a reflexive relation into `(onto, into)`.
///
/// `x ->> y` iff every arrow out of `y` is also an arrow out of `x`;
/// `x >-> y` iff every arrow into `x` is also an arrow into `y`.
pub fn fact(to: &Relation) -> Result<(Relation, Relation)> {
    check_reflexive(to, "to")?;
    let n = to.size();
    let mut onto = Relation::empty(n);
    let mut into = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if to.image(y).is_subset(to.image(x)) {
                onto.set(x, y, true);
            }
            if to.preimage(x).is_subset(to.preimage(y)) {
                into.set(x, y, true);
            }
        }
    }
    Ok((onto, into))
}

/// Compose a pair of preorders: `x -> z` iff `x ->> y >-> z` for some `y`.
pub fn mult(onto: &Relation, into: &Relation) -> Result<Relation> {
    if onto.size() != into.size() {
        return Err(Error::DimensionMismatch { expected: onto.size(), found: into.size() });
    }
    check_reflexive(onto, "onto")?;
    check_reflexive(into, "into")?;
    let n = onto.size();
    let rows = (0..n)
        .map(|x| {
            let mut row = BitSet::new(n);
            for y in onto.image(x).iter() {
                row.union_with(into.image(y));
            }
            row
        })
        .collect();
    Ok(Relation::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Example relation whose closed sets form the hexagon lattice (1-based
    /// labels in the comments, 0-based indices in code).
    pub(crate) fn hexagon_to() -> Relation {
        // 1->2, 2->4, 3->1, 4->3, 2->3, 3->2
        Relation::reflexive_from_pairs(4, [(0, 1), (1, 3), (2, 0), (3, 2), (1, 2), (2, 1)])
    }

    fn brute_onto(to: &Relation, x: usize, y: usize) -> bool {
        (0..to.size()).all(|z| !to.get(y, z) || to.get(x, z))
    }

    fn brute_into(to: &Relation, x: usize, y: usize) -> bool {
        (0..to.size()).all(|z| !to.get(z, x) || to.get(z, y))
    }

    #[test]
    fn fact_of_hexagon_relation() {
        let (onto, into) = fact(&hexagon_to()).unwrap();
        assert_eq!(onto, Relation::reflexive_from_pairs(4, [(1, 3), (2, 0)]));
        assert_eq!(into, Relation::reflexive_from_pairs(4, [(0, 1), (3, 2)]));
    }

    #[test]
    fn fact_of_path_relation_matches_definition() {
        let to = Relation::reflexive_from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        let (onto, into) = fact(&to).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(onto.get(x, y), brute_onto(&to, x, y));
                assert_eq!(into.get(x, y), brute_into(&to, x, y));
            }
        }
        assert_eq!(onto, Relation::reflexive_from_pairs(4, [(2, 3)]));
        assert_eq!(into, Relation::reflexive_from_pairs(4, [(0, 1)]));
    }

    #[test]
    fn fact_and_mult_of_identity() {
        let id = Relation::identity(5);
        let (onto, into) = fact(&id).unwrap();
        assert_eq!(onto, id);
        assert_eq!(into, id);
        assert_eq!(mult(&id, &id).unwrap(), id);
    }

    #[test]
    fn fact_rejects_missing_loop() {
        let r = Relation::from_pairs(2, [(0, 0), (0, 1)]);
        assert!(matches!(fact(&r), Err(Error::NonReflexive { element: 1, .. })));
    }

    #[test]
    fn mult_recovers_hexagon_relation() {
        let to = hexagon_to();
        let (onto, into) = fact(&to).unwrap();
        let m = mult(&onto, &into).unwrap();
        assert_eq!(m, to);
        // 2 -> 3 factors through 4, and 3 -> 2 through 1.
        assert!(onto.get(1, 3) && into.get(3, 2));
        assert!(onto.get(2, 0) && into.get(0, 1));
    }

    #[test]
    fn mult_of_path_factorization_misses_middle_arrow() {
        let onto = Relation::reflexive_from_pairs(4, [(2, 3)]);
        let into = Relation::reflexive_from_pairs(4, [(0, 1)]);
        let m = mult(&onto, &into).unwrap();
        assert_eq!(m, Relation::reflexive_from_pairs(4, [(0, 1), (2, 3)]));
        assert!(!m.get(1, 2));
    }

    #[test]
    fn closure_and_cycles() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]);
        let c = r.reflexive_transitive_closure();
        assert!(c.get(0, 2) && c.is_partial_order());
        assert!(r.is_acyclic_ignoring_loops());
        assert!(!hexagon_to().is_acyclic_ignoring_loops());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GroundSet::labeled(["a", "b", "a"]).is_err());
        assert_eq!(GroundSet::labeled(["a", "b"]).unwrap().index_of("b"), Some(1));
    }
}
