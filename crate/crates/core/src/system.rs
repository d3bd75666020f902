//! Validated factorization systems `(ground, to, onto, into)`.

use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::relation::{fact, mult, GroundSet, Relation};

/// Which of the three relations a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arrow {
    To,
    Onto,
    Into,
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arrow::To => "to",
            Arrow::Onto => "onto",
            Arrow::Into => "into",
        })
    }
}

/// One violated axiom with a minimal witness (element indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Reflexivity {
        relation: Arrow,
        element: usize,
    },
    Transitivity {
        relation: Arrow,
        witness: (usize, usize, usize),
    },
    /// `Fact(to)` disagrees with the supplied relation at `pair`; `expected` is the `Fact` value.
    FactEquality {
        relation: Arrow,
        pair: (usize, usize),
        expected: bool,
    },
    /// `Mult(onto, into)` disagrees with `to` at `pair`; `expected` is the `to` value.
    MultEquality {
        pair: (usize, usize),
        expected: bool,
    },
    OrderCondition {
        relation: Arrow,
        pair: (usize, usize),
    },
    /// `x ->> y >-> x` with `x != y`.
    Brick {
        pair: (usize, usize),
    },
    /// Condition (ii) or (iii) of the poset-only characterization.
    PosetCharacterization {
        relation: Arrow,
        pair: (usize, usize),
        expected: bool,
    },
}

/// Validation report for the five axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub reflexive: bool,
    pub preorders: bool,
    pub fact_equality: bool,
    pub mult_equality: bool,
    pub order_condition: bool,
    pub brick_condition: bool,
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when `Mult(onto, into) = to` failed.
    pub fn mult_witness(&self) -> Option<(usize, usize)> {
        self.violations.iter().find_map(|v| match v {
            Violation::MultEquality { pair, .. } => Some(*pair),
            _ => None,
        })
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{v:?}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A two-acyclic factorization system. Construction always validates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactSystem {
    ground: GroundSet,
    to: Relation,
    onto: Relation,
    into: Relation,
}

fn first_mismatch(a: &Relation, b: &Relation) -> Option<(usize, usize, bool)> {
    let n = a.size();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| a.get(x, y) != b.get(x, y)).map(|(x, y)| (x, y, b.get(x, y)))
}

/// Check all axioms without building a system.
pub fn diagnose(to: &Relation, onto: &Relation, into: &Relation) -> Diagnostics {
    let mut d = Diagnostics::default();
    let named = [(Arrow::To, to), (Arrow::Onto, onto), (Arrow::Into, into)];
    for (name, rel) in named {
        if let Some(element) = rel.first_non_loop() {
            d.violations.push(Violation::Reflexivity { relation: name, element });
        }
    }
    d.reflexive = d.violations.is_empty();
    for (name, rel) in [(Arrow::Onto, onto), (Arrow::Into, into)] {
        if let Some(witness) = rel.transitivity_witness() {
            d.violations.push(Violation::Transitivity { relation: name, witness });
        }
    }
    d.preorders = !d.violations.iter().any(|v| matches!(v, Violation::Transitivity { .. }));

    if d.reflexive {
        let (f_onto, f_into) = fact(to).expect("reflexive");
        let before = d.violations.len();
        for (name, given, computed) in [(Arrow::Onto, onto, &f_onto), (Arrow::Into, into, &f_into)] {
            if let Some((x, y, expected)) = first_mismatch(given, computed) {
                d.violations.push(Violation::FactEquality { relation: name, pair: (x, y), expected });
            }
        }
        d.fact_equality = d.violations.len() == before;

        let product = mult(onto, into).expect("reflexive");
        match first_mismatch(&product, to) {
            Some((x, y, expected)) => d.violations.push(Violation::MultEquality { pair: (x, y), expected }),
            None => d.mult_equality = true,
        }
    }

    let before = d.violations.len();
    for (name, rel) in [(Arrow::Onto, onto), (Arrow::Into, into)] {
        if let Some(pair) = rel.antisymmetry_witness() {
            d.violations.push(Violation::OrderCondition { relation: name, pair });
        }
    }
    d.order_condition = d.violations.len() == before;

    match brick_witness(onto, into) {
        Some(pair) => d.violations.push(Violation::Brick { pair }),
        None => d.brick_condition = true,
    }
    d
}

fn brick_witness(onto: &Relation, into: &Relation) -> Option<(usize, usize)> {
    onto.arrows().find(|&(x, y)| into.get(y, x))
}

/// Validate `(ground, to, onto, into)` as a two-acyclic factorization system.
pub fn validate_system(ground: GroundSet, to: Relation, onto: Relation, into: Relation) -> Result<FactSystem> {
    let n = ground.size();
    for r in [&to, &onto, &into] {
        if r.size() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.size() });
        }
    }
    let d = diagnose(&to, &onto, &into);
    if d.is_valid() {
        Ok(FactSystem { ground, to, onto, into })
    } else {
        Err(Error::InvalidSystem(Box::new(d)))
    }
}

/// Build a system from `to` alone, with `(onto, into) = fact(to)`.
pub fn system_from_relation(ground: GroundSet, to: Relation) -> Result<FactSystem> {
    let (onto, into) = fact(&to)?;
    validate_system(ground, to, onto, into)
}

fn down_closure(rel: &Relation, set: &BitSet) -> BitSet {
    rel.image_of_set(set)
}

fn up_closure(rel: &Relation, set: &BitSet) -> BitSet {
    rel.preimage_of_set(set)
}

/// Build a system from two partial orders, checking the poset-only conditions:
/// (i) no brick violation, (ii) `x ->> y` iff `down_into down_onto {y}` is
/// contained in `down_into down_onto {x}`, (iii) the dual for `into`.
pub fn system_from_posets(ground: GroundSet, onto: Relation, into: Relation) -> Result<FactSystem> {
    let n = ground.size();
    for r in [&onto, &into] {
        if r.size() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.size() });
        }
    }
    let mut d = Diagnostics::default();
    for (name, rel) in [(Arrow::Onto, &onto), (Arrow::Into, &into)] {
        if let Some(element) = rel.first_non_loop() {
            d.violations.push(Violation::Reflexivity { relation: name, element });
        }
        if let Some(witness) = rel.transitivity_witness() {
            d.violations.push(Violation::Transitivity { relation: name, witness });
        }
        if let Some(pair) = rel.antisymmetry_witness() {
            d.violations.push(Violation::OrderCondition { relation: name, pair });
        }
    }
    if !d.violations.is_empty() {
        return Err(Error::InvalidSystem(Box::new(d)));
    }
    d.reflexive = true;
    d.preorders = true;
    d.order_condition = true;

    // (i) x >-> y and y ->> x for distinct x, y.
    match into.arrows().find(|&(x, y)| onto.get(y, x)) {
        Some((x, y)) => d.violations.push(Violation::Brick { pair: (y, x) }),
        None => d.brick_condition = true,
    }
    let reach_down: Vec<BitSet> = (0..n).map(|x| down_closure(&into, &down_closure(&onto, &BitSet::singleton(n, x)))).collect();
    let reach_up: Vec<BitSet> = (0..n).map(|x| up_closure(&onto, &up_closure(&into, &BitSet::singleton(n, x)))).collect();
    'ii: for x in 0..n {
        for y in 0..n {
            let expected = reach_down[y].is_subset(&reach_down[x]);
            if onto.get(x, y) != expected {
                d.violations.push(Violation::PosetCharacterization { relation: Arrow::Onto, pair: (x, y), expected });
                break 'ii;
            }
        }
    }
    'iii: for x in 0..n {
        for y in 0..n {
            let expected = reach_up[x].is_subset(&reach_up[y]);
            if into.get(x, y) != expected {
                d.violations.push(Violation::PosetCharacterization { relation: Arrow::Into, pair: (x, y), expected });
                break 'iii;
            }
        }
    }
    if !d.violations.is_empty() {
        return Err(Error::InvalidSystem(Box::new(d)));
    }
    let to = mult(&onto, &into)?;
    d.fact_equality = true;
    d.mult_equality = true;
    let system = validate_system(ground, to, onto, into)?;
    Ok(system)
}

impl FactSystem {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn to(&self) -> &Relation {
        &self.to
    }

    pub fn onto(&self) -> &Relation {
        &self.onto
    }

    /// The `into` relation; named to avoid clashing with `Into::into`.
    pub fn into_rel(&self) -> &Relation {
        &self.into
    }

    pub fn label(&self, i: usize) -> &str {
        self.ground.label(i)
    }

    /// Arrow-reversed system `(to^op, into^op, onto^op)`.
    pub fn op_dual(&self) -> FactSystem {
        validate_system(self.ground.clone(), self.to.transpose(), self.into.transpose(), self.onto.transpose())
            .expect("the dual of a two-acyclic factorization system is one")
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.size())
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.size())
    }

    // Direction helpers. An arrow x R y reads as x >= y, so "R-maximal in S"
    // means no other member of S points at the element, and "R-minimal" means
    // the element points at no other member.

    /// No `x` in `set \ {c}` with `x >-> c`.
    pub fn is_into_maximal_in(&self, set: &BitSet, c: usize) -> bool {
        !self.into.preimage(c).without(c).intersects(set)
    }

    /// No `x` in `set \ {c}` with `x ->> c`.
    pub fn is_onto_maximal_in(&self, set: &BitSet, c: usize) -> bool {
        !self.onto.preimage(c).without(c).intersects(set)
    }

    /// No `x` in `set \ {c}` with `c ->> x`.
    pub fn is_onto_minimal_in(&self, set: &BitSet, c: usize) -> bool {
        !self.onto.image(c).without(c).intersects(set)
    }

    pub fn into_maximal_elements(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.size(), set.iter().filter(|&c| self.is_into_maximal_in(set, c)))
    }

    pub fn onto_maximal_elements(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.size(), set.iter().filter(|&c| self.is_onto_maximal_in(set, c)))
    }

    /// Restrict every relation to `keep` (no validation).
    pub(crate) fn restrict_unchecked(&self, keep: &[usize]) -> (GroundSet, Relation, Relation, Relation) {
        (self.ground.restrict(keep), self.to.restrict(keep), self.onto.restrict(keep), self.into.restrict(keep))
    }
}
