//! Finite lattices given by their order, with eager meet and join tables.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::relation::Relation;

/// A finite lattice on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Build from an order relation where `leq.get(a, b)` means `a <= b`.
    pub fn from_leq(leq: &Relation) -> Result<Lattice> {
        let n = leq.size();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if let Some(element) = leq.first_non_loop() {
            return Err(Error::NotAPartialOrder { reason: "not reflexive", a: element, b: element });
        }
        if let Some((a, b)) = leq.antisymmetry_witness() {
            return Err(Error::NotAPartialOrder { reason: "not antisymmetric", a, b });
        }
        if let Some((a, b, _)) = leq.transitivity_witness() {
            return Err(Error::NotAPartialOrder { reason: "not transitive", a, b });
        }
        let up: Vec<BitSet> = (0..n).map(|x| leq.image(x).clone()).collect();
        let down: Vec<BitSet> = (0..n).map(|x| leq.preimage(x).clone()).collect();
        let meet = bound_table(&down, &up, "meet")?;
        let join = bound_table(&up, &down, "join")?;
        Ok(Self::assemble(up, down, meet, join))
    }

    /// Build from a boolean order matrix (`matrix[a][b]` iff `a <= b`).
    pub fn from_leq_matrix(matrix: &[Vec<bool>]) -> Result<Lattice> {
        Lattice::from_leq(&Relation::from_matrix(matrix)?)
    }

    /// Build from cover edges `(a, b)` meaning `a` is covered by `b`.
    pub fn from_covers(size: usize, edges: &[(usize, usize)]) -> Result<Lattice> {
        for &(a, b) in edges {
            for i in [a, b] {
                if i >= size {
                    return Err(Error::OutOfRange { index: i, size });
                }
            }
        }
        let leq = Relation::from_pairs(size, edges.iter().copied()).reflexive_transitive_closure();
        if let Some((a, b)) = leq.antisymmetry_witness() {
            return Err(Error::NotAPartialOrder { reason: "cover edges contain a cycle", a, b });
        }
        Lattice::from_leq(&leq)
    }

    fn assemble(up: Vec<BitSet>, down: Vec<BitSet>, meet: Vec<u32>, join: Vec<u32>) -> Lattice {
        let n = up.len();
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for x in 0..n {
            let strict = down[x].without(x);
            for y in strict.iter() {
                if up[y].intersection(&strict).count() == 1 {
                    lower_covers[x].push(y);
                    upper_covers[y].push(x);
                }
            }
        }
        let bottom = (0..n).find(|&x| up[x].is_full()).expect("lattice has a bottom");
        let top = (0..n).find(|&x| down[x].is_full()).expect("lattice has a top");
        Lattice { up, down, meet, join, upper_covers, lower_covers, bottom, top }
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b] as usize
    }

    /// Join of a family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `{y : x <= y}`.
    pub fn up(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`.
    pub fn down(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// All cover edges `(a, b)` with `a` covered by `b`, sorted.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = (0..self.size()).flat_map(|b| self.lower_covers[b].iter().map(move |&a| (a, b))).collect();
        edges.sort_unstable();
        edges
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lower_covers[b].contains(&a)
    }

    /// The order as a relation, `get(a, b)` iff `a <= b`.
    pub fn leq_relation(&self) -> Relation {
        Relation::from_rows(self.up.clone())
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.leq_relation().to_matrix()
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower_covers[x].len() == 1
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.upper_covers[x].len() == 1
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_join_irreducible(x)).collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_meet_irreducible(x)).collect()
    }

    /// Order dual on the same indices.
    pub fn dual(&self) -> Lattice {
        Lattice {
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Relabel: element `x` becomes `perm[x]`.
    pub fn permute(&self, perm: &[usize]) -> Lattice {
        Lattice::from_leq(&self.leq_relation().permute(perm)).expect("relabeling preserves lattices")
    }

    /// Indices sorted by a linear extension (size of the down-set, then index).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&x| (self.down[x].count(), x));
        order
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.size()];
        for x in self.linear_extension() {
            depth[x] = self.lower_covers[x].iter().map(|&y| depth[y] + 1).max().unwrap_or(0);
        }
        depth
    }

    /// Length of the longest chain from each element to the top.
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![0; self.size()];
        for x in self.linear_extension().into_iter().rev() {
            height[x] = self.upper_covers[x].iter().map(|&y| height[y] + 1).max().unwrap_or(0);
        }
        height
    }

    /// Longest maximal chain, bottom first.
    pub fn longest_chain(&self) -> Vec<usize> {
        let height = self.heights();
        let mut chain = vec![self.bottom];
        let mut x = self.bottom;
        while x != self.top {
            x = *self.upper_covers[x].iter().find(|&&y| height[y] + 1 == height[x]).expect("height witness");
            chain.push(x);
        }
        chain
    }

    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in y + 1..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// Least common upper bound table (or greatest lower bound with roles swapped).
fn bound_table(above: &[BitSet], below: &[BitSet], bound: &'static str) -> Result<Vec<u32>> {
    let n = above.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in a..n {
            let common = above[a].intersection(&above[b]);
            let best = common.iter().min_by_key(|&c| below[c].count());
            match best {
                Some(c) if common.is_subset(&above[c]) => {
                    table[a * n + b] = c as u32;
                    table[b * n + a] = c as u32;
                }
                _ => return Err(Error::NotALattice { a, b, bound }),
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn chain(n: usize) -> Lattice {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Lattice::from_covers(n, &edges).unwrap()
    }

    /// 0 bottom, 1..=3 atoms, 4 top.
    pub(crate) fn m3() -> Lattice {
        Lattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// 0 < 1 < 2 < 4 and 0 < 3 < 4.
    pub(crate) fn n5() -> Lattice {
        Lattice::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn two_chain_tables() {
        let l = chain(2);
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
        assert_eq!((l.bottom(), l.top()), (0, 1));
        assert_eq!(l.cover_edges(), vec![(0, 1)]);
    }

    #[test]
    fn missing_top_reports_incomparable_pair() {
        let err = Lattice::from_covers(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(err, Error::NotALattice { a: 1, b: 2, bound: "join" }));
    }

    #[test]
    fn bowtie_has_no_unique_join() {
        // 0,1 below both 2,3 plus bottom and top would be fine; without them it fails.
        let err = Lattice::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Lattice::from_covers(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder { .. }));
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(Lattice::from_covers(0, &[]), Err(Error::EmptyLattice)));
    }

    #[test]
    fn irreducibles_of_small_lattices() {
        assert_eq!(m3().join_irreducibles(), vec![1, 2, 3]);
        assert_eq!(n5().join_irreducibles(), vec![1, 2, 3]);
        assert_eq!(n5().meet_irreducibles(), vec![1, 2, 3]);
        assert_eq!(chain(4).join_irreducibles(), vec![1, 2, 3]);
    }

    #[test]
    fn chains_and_distributivity() {
        assert_eq!(n5().longest_chain(), vec![0, 1, 2, 4]);
        assert!(chain(5).is_distributive());
        assert!(!m3().is_distributive());
        assert!(!n5().is_distributive());
        let d = m3().dual();
        assert_eq!(d.bottom(), 4);
        assert_eq!(d.join(1, 2), 0);
    }

    #[test]
    fn every_element_is_join_of_irreducibles_below() {
        for l in [m3(), n5(), chain(4)] {
            let j = l.join_irreducibles();
            for x in 0..l.size() {
                assert_eq!(l.join_all(j.iter().copied().filter(|&i| l.leq(i, x))), x);
            }
        }
    }
}
