//! Graphviz output. Loops are never drawn.
//!
//! Lattices: Hasse diagram, bottom at the bottom; join-irreducibles are
//! boxes, meet-irreducibles are bold, elements that are both get both.
//! Systems: every non-loop `->` arrow once. `->>` arrows get a double head
//! and `>->` arrows a tail hook, so plain arrows are those in neither.

use std::fmt::Write;

use crate::error::Result;
use crate::io::{Document, Payload};
use crate::lattice::Lattice;
use crate::relation::{fact, GroundSet, Relation};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn lattice_dot(l: &Lattice, labels: Option<&[String]>) -> String {
    let name = |i: usize| labels.map_or_else(|| i.to_string(), |ls| ls[i].clone());
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    for x in 0..l.size() {
        let mut attrs = vec![format!("label={}", quote(&name(x)))];
        if l.is_join_irreducible(x) {
            attrs.push("shape=box".into());
        }
        if l.is_meet_irreducible(x) {
            attrs.push("style=bold".into());
        }
        writeln!(out, "  n{x} [{}];", attrs.join(", ")).unwrap();
    }
    for (a, b) in l.cover_edges() {
        writeln!(out, "  n{a} -> n{b} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn system_dot(ground: &GroundSet, to: &Relation, onto: &Relation, into: &Relation) -> String {
    let mut out = String::from("digraph system {\n  node [shape=circle];\n");
    for x in 0..ground.size() {
        writeln!(out, "  n{x} [label={}];", quote(ground.label(x))).unwrap();
    }
    for (x, y) in to.arrows() {
        let kind = match (onto.get(x, y), into.get(x, y)) {
            (true, true) => "onto+into",
            (true, false) => "onto",
            (false, true) => "into",
            (false, false) => "to",
        };
        let mut attrs = vec![format!("class={}", quote(kind))];
        if onto.get(x, y) {
            attrs.push("arrowhead=normalnormal".into());
        }
        if into.get(x, y) {
            attrs.push("dir=both, arrowtail=curve".into());
        }
        writeln!(out, "  n{x} -> n{y} [{}];", attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Lattice or system document to DOT. For systems without explicit
/// `onto`/`into`, the decorations come from `Fact(->)`.
pub fn render_dot(doc: &Document) -> Result<String> {
    match &doc.payload {
        Payload::Lattice(d) => Ok(lattice_dot(&d.lattice()?, d.labels.as_deref())),
        Payload::System(d) => {
            let (g, to) = d.relation()?;
            let (onto, into) = match d.onto_into()? {
                Some(p) => p,
                None => fact(&to)?,
            };
            Ok(system_dot(&g, &to, &onto, &into))
        }
        _ => Err(doc.mismatch("lattice or system")),
    }
}
