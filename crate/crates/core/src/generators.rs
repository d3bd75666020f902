//! Deterministic lattice families for tests, oracles and demos.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::congruence::downsets;
use crate::constructions::double_lattice;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::lattice::Lattice;
use crate::relation::{GroundSet, Relation};
use crate::system::{system_from_relation, FactSystem};

/// Linear congruential generator with Knuth's MMIX constants:
/// `state = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
/// each draw returning the high 32 bits of the new state.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw from `0..bound` by reduction modulo `bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u32() as u64 % bound as u64) as usize
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        self.next_u32() % den < num
    }
}

/// Chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<Lattice> {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice::from_covers(n, &edges)
}

/// Largest exponent accepted by [`boolean`].
pub const BOOLEAN_LIMIT: usize = 12;

/// Subsets of an `n`-set, element `s` being the bitmask of its members.
pub fn boolean(n: usize) -> Result<Lattice> {
    if n > BOOLEAN_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "boolean lattice rank", limit: BOOLEAN_LIMIT });
    }
    let size = 1usize << n;
    let rows = (0..size).map(|a| BitSet::from_indices(size, (0..size).filter(|&b| a & b == a))).collect();
    Lattice::from_leq(&Relation::from_rows(rows))
}

/// Order ideals of a poset under containment. `order.get(a, b)` means `a <= b`.
pub fn downsets_of(order: &Relation, cap: usize) -> Result<Lattice> {
    if !order.is_partial_order() {
        let (a, b) = order.antisymmetry_witness().unwrap_or((0, 0));
        return Err(Error::NotAPartialOrder { reason: "poset for downsets", a, b });
    }
    // With the transpose, "x in D and x R y" reads "everything below x is in D".
    let ideals = downsets(&order.transpose(), cap)?;
    let m = ideals.len();
    let rows = (0..m).map(|i| BitSet::from_indices(m, (0..m).filter(|&j| ideals[i].is_subset(&ideals[j])))).collect();
    Lattice::from_leq(&Relation::from_rows(rows))
}

/// Random naturally labeled poset: each pair `i < j` is related with
/// probability `num / den` before transitive closure. `get(a, b)` means `a <= b`.
pub fn random_poset(n: usize, num: u32, den: u32, seed: u64) -> Relation {
    let mut rng = Lcg::new(seed);
    let mut r = Relation::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(num, den) {
                r.set(i, j, true);
            }
        }
    }
    r.reflexive_transitive_closure()
}

/// Largest `n` accepted by [`weak_order_sn`].
pub const WEAK_ORDER_LIMIT: usize = 7;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Weak order on permutations of `0..n` by containment of inversion sets.
pub fn weak_order_sn(n: usize) -> Result<Lattice> {
    if n > WEAK_ORDER_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "weak order rank", limit: WEAK_ORDER_LIMIT });
    }
    let perms = permutations(n);
    let pair_index = |a: usize, b: usize| a * n + b;
    let inversions: Vec<BitSet> = perms
        .iter()
        .map(|p| {
            let mut pos = vec![0; n];
            p.iter().enumerate().for_each(|(i, &v)| pos[v] = i);
            BitSet::from_indices(
                n * n,
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| pos[a] > pos[b]).map(|(a, b)| pair_index(a, b)),
            )
        })
        .collect();
    let m = perms.len();
    let rows = (0..m).map(|i| BitSet::from_indices(m, (0..m).filter(|&j| inversions[i].is_subset(&inversions[j])))).collect();
    Lattice::from_leq(&Relation::from_rows(rows))
}

/// Largest `n` accepted by [`tamari`].
pub const TAMARI_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

fn trees(n: usize) -> Vec<Tree> {
    if n == 0 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 0..n {
        for l in trees(k) {
            for r in trees(n - 1 - k) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Trees reachable by one right rotation `(A B) C -> A (B C)` anywhere.
fn rotations(t: &Tree) -> Vec<Tree> {
    let Tree::Node(l, r) = t else { return Vec::new() };
    let mut out = Vec::new();
    if let Tree::Node(a, b) = l.as_ref() {
        out.push(Tree::Node(a.clone(), Box::new(Tree::Node(b.clone(), r.clone()))));
    }
    for l2 in rotations(l) {
        out.push(Tree::Node(Box::new(l2), r.clone()));
    }
    for r2 in rotations(r) {
        out.push(Tree::Node(l.clone(), Box::new(r2)));
    }
    out
}

/// Tamari lattice on binary trees with `n` internal nodes, ordered by right rotation.
pub fn tamari(n: usize) -> Result<Lattice> {
    if n > TAMARI_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "tamari rank", limit: TAMARI_LIMIT });
    }
    let all = trees(n);
    let index: HashMap<&Tree, usize> = all.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let edges: Vec<(usize, usize)> =
        all.iter().enumerate().flat_map(|(i, t)| rotations(t).into_iter().map(move |u| (i, u))).map(|(i, u)| (i, index[&u])).collect();
    Lattice::from_covers(all.len(), &edges)
}

/// Largest lattice produced by [`doubling_random`].
pub const DOUBLING_SIZE_LIMIT: usize = 4096;

/// Start from one element and double a pseudorandom interval `steps` times.
pub fn doubling_random(steps: usize, seed: u64) -> Result<Lattice> {
    let mut rng = Lcg::new(seed);
    let mut l = chain(1)?;
    for _ in 0..steps {
        let lo = rng.below(l.size());
        let above = l.up(lo).to_vec();
        let hi = above[rng.below(above.len())];
        l = double_lattice(&l, lo, hi)?.lattice;
        if l.size() > DOUBLING_SIZE_LIMIT {
            return Err(Error::SizeLimitExceeded { what: "doubling lattice size", limit: DOUBLING_SIZE_LIMIT });
        }
    }
    Ok(l)
}

/// Grow a two-acyclic system one element at a time: each new element gets
/// random arrows to and from the old ones and is kept only if
/// `Fact`/`Mult` still close up. Stops at `max_n` or after 200 failed tries.
pub fn random_system(max_n: usize, seed: u64) -> FactSystem {
    let mut rng = Lcg::new(seed);
    let mut sys = system_from_relation(GroundSet::unlabeled(0), Relation::identity(0)).expect("empty system is valid");
    'grow: while sys.size() < max_n {
        let n = sys.size();
        for _ in 0..200 {
            let density = 1 + rng.below(4) as u32;
            let mut to = Relation::identity(n + 1);
            for (x, y) in sys.to().pairs() {
                to.set(x, y, true);
            }
            for x in 0..n {
                to.set(x, n, rng.chance(density, 8));
                to.set(n, x, rng.chance(density, 8));
            }
            if let Ok(next) = system_from_relation(GroundSet::unlabeled(n + 1), to) {
                sys = next;
                continue 'grow;
            }
        }
        break;
    }
    sys
}

/// Largest size accepted by [`exhaustive_lattices`].
pub const EXHAUSTIVE_LIMIT: usize = 10;

/// Every naturally labeled poset on `m` elements, as down-set rows
/// (`rows[x]` = elements `<= x`). New elements take an order ideal of the
/// previous ones as their strict down-set, so each appears exactly once.
fn natural_posets(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for k in 0..m {
        let mut next = Vec::new();
        for p in &out {
            for ideal in ideals(p, k) {
                let mut q = p.clone();
                let mut row = ideal;
                row.push(k);
                q.push(row);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Order ideals of a poset on `0..k` given by down-set rows.
fn ideals(rows: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![false; k];
    fn go(x: usize, k: usize, rows: &[Vec<usize>], current: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if x == k {
            out.push((0..k).filter(|&i| current[i]).collect());
            return;
        }
        go(x + 1, k, rows, current, out);
        if rows[x].iter().all(|&y| y == x || current[y]) {
            current[x] = true;
            go(x + 1, k, rows, current, out);
            current[x] = false;
        }
    }
    go(0, k, rows, &mut current, &mut out);
    out
}

/// Per-element (down-set, up-set, lower covers, upper covers) sizes.
type Invariant = (usize, usize, usize, usize);

/// Every lattice with `n` elements up to isomorphism.
///
/// Interior posets on `n - 2` elements get a bottom and a top adjoined; the
/// lattices among them are deduplicated by an invariant bucket and an
/// isomorphism test within each bucket.
pub fn exhaustive_lattices(n: usize) -> Result<Vec<Lattice>> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "exhaustive lattice size", limit: EXHAUSTIVE_LIMIT });
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![chain(1)?]),
        _ => {}
    }
    let m = n - 2;
    let mut buckets: HashMap<Vec<Invariant>, Vec<usize>> = HashMap::new();
    let mut found: Vec<Lattice> = Vec::new();
    for poset in natural_posets(m) {
        // 0 is the bottom, 1..=m the interior, n-1 the top.
        let mut r = Relation::identity(n);
        for x in 0..n {
            r.set(0, x, true);
            r.set(x, n - 1, true);
        }
        for (x, row) in poset.iter().enumerate() {
            for &y in row {
                r.set(y + 1, x + 1, true);
            }
        }
        let Ok(l) = Lattice::from_leq(&r) else { continue };
        let mut key: Vec<_> =
            (0..n).map(|x| (l.down(x).count(), l.up(x).count(), l.lower_covers(x).len(), l.upper_covers(x).len())).collect();
        key.sort_unstable();
        let bucket = buckets.entry(key).or_default();
        let mut duplicate = false;
        for &i in bucket.iter() {
            if is_isomorphic(&found[i], &l)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            bucket.push(found.len());
            found.push(l);
        }
    }
    Ok(found)
}

/// Named lattices used by the acceptance suite and the CLI demos.
pub fn standard_corpus() -> Result<Vec<(String, Lattice)>> {
    let mut out = Vec::new();
    for n in 1..=7 {
        for (i, l) in exhaustive_lattices(n)?.into_iter().enumerate() {
            out.push((format!("exhaustive_{n}_{i}"), l));
        }
    }
    for n in 3..=5 {
        out.push((format!("weak_order_{n}"), weak_order_sn(n)?));
    }
    for n in 2..=5 {
        out.push((format!("tamari_{n}"), tamari(n)?));
    }
    for n in 1..=4 {
        out.push((format!("boolean_{n}"), boolean(n)?));
    }
    for seed in 0..20 {
        out.push((format!("doubling_{seed}"), doubling_random(8, seed)?));
    }
    Ok(out)
}
