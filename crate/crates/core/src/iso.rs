//! Isomorphism search for lattices and factorization systems.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::system::FactSystem;

/// Largest lattice accepted by [`is_isomorphic`].
pub const ISO_SIZE_LIMIT: usize = 8192;

type Invariant = (usize, usize, usize, usize, usize, usize, usize, usize);

fn invariants(l: &Lattice) -> Vec<Invariant> {
    let depth = l.depths();
    let height = l.heights();
    let jirr = l.join_irreducibles();
    let mirr = l.meet_irreducibles();
    (0..l.size())
        .map(|x| {
            (
                l.down(x).count(),
                l.up(x).count(),
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
                depth[x],
                height[x],
                jirr.iter().filter(|&&j| l.leq(j, x)).count(),
                mirr.iter().filter(|&&m| l.leq(x, m)).count(),
            )
        })
        .collect()
}

/// Find a lattice isomorphism `a -> b`, returned as `phi[x]`.
///
/// Join-irreducibles are matched by backtracking; each leaf is extended to all
/// elements via `x ↦ ⋁{phi(j) : j <= x}` and verified as an order isomorphism.
pub fn is_isomorphic(a: &Lattice, b: &Lattice) -> Result<Option<Vec<usize>>> {
    for l in [a, b] {
        if l.size() > ISO_SIZE_LIMIT {
            return Err(Error::SizeLimitExceeded { what: "isomorphism search", limit: ISO_SIZE_LIMIT });
        }
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let ia = invariants(a);
    let ib = invariants(b);
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut ja = a.join_irreducibles();
    ja.sort_by_key(|&j| (a.down(j).count(), j));
    let jb = b.join_irreducibles();
    let mut search = Search { a, b, ia: &ia, ib: &ib, ja: &ja, jb: &jb, assigned: Vec::new(), used: vec![false; b.size()] };
    Ok(search.run())
}

struct Search<'a> {
    a: &'a Lattice,
    b: &'a Lattice,
    ia: &'a [Invariant],
    ib: &'a [Invariant],
    ja: &'a [usize],
    jb: &'a [usize],
    assigned: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<Vec<usize>> {
        let depth = self.assigned.len();
        if depth == self.ja.len() {
            return self.extend();
        }
        let j = self.ja[depth];
        for &c in self.jb {
            if self.used[c] || self.ia[j] != self.ib[c] || !self.consistent(j, c) {
                continue;
            }
            self.used[c] = true;
            self.assigned.push(c);
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.assigned.pop();
            self.used[c] = false;
        }
        None
    }

    fn consistent(&self, j: usize, c: usize) -> bool {
        self.ja.iter().zip(&self.assigned).all(|(&k, &d)| {
            self.a.leq(k, j) == self.b.leq(d, c)
                && self.a.leq(j, k) == self.b.leq(c, d)
                && self.ia[self.a.join(j, k)] == self.ib[self.b.join(c, d)]
        })
    }

    fn extend(&self) -> Option<Vec<usize>> {
        let (a, b) = (self.a, self.b);
        let n = a.size();
        let mut phi = vec![0; n];
        let mut hit = vec![false; n];
        for (x, slot) in phi.iter_mut().enumerate() {
            let y = b.join_all(self.ja.iter().zip(&self.assigned).filter(|&(&j, _)| a.leq(j, x)).map(|(_, &d)| d));
            if std::mem::replace(&mut hit[y], true) {
                return None;
            }
            *slot = y;
        }
        for x in 0..n {
            for y in 0..n {
                if a.leq(x, y) != b.leq(phi[x], phi[y]) {
                    return None;
                }
            }
        }
        Some(phi)
    }
}

/// Find a bijection `phi` of ground sets carrying all three relations of `a` onto `b`.
pub fn systems_isomorphic(a: &FactSystem, b: &FactSystem) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let profile = |s: &FactSystem, x: usize| [s.to(), s.onto(), s.into_rel()].map(|r| (r.image(x).count(), r.preimage(x).count()));
    let pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let mut phi = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        a: &FactSystem,
        b: &FactSystem,
        pa: &[[(usize, usize); 3]],
        pb: &[[(usize, usize); 3]],
        phi: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let x = phi.len();
        if x == a.size() {
            return true;
        }
        for c in 0..b.size() {
            if used[c] || pa[x] != pb[c] {
                continue;
            }
            let ok = (0..=x).all(|y| {
                let d = if y == x { c } else { phi[y] };
                [(a.to(), b.to()), (a.onto(), b.onto()), (a.into_rel(), b.into_rel())]
                    .iter()
                    .all(|(ra, rb)| ra.get(x, y) == rb.get(c, d) && ra.get(y, x) == rb.get(d, c))
            });
            if !ok {
                continue;
            }
            used[c] = true;
            phi.push(c);
            if go(a, b, pa, pb, phi, used) {
                return true;
            }
            phi.pop();
            used[c] = false;
        }
        false
    }
    go(a, b, &pa, &pb, &mut phi, &mut used).then_some(phi)
}
