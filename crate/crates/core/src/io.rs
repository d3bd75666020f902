//! JSON documents: `{"kind": .., "payload": .., "meta": ..}`.
//!
//! Element references in system and two-set payloads are labels (strings).
//! Lattice payloads use indices `0..size`. A bare payload without the
//! envelope is accepted and its kind is inferred from its keys.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bitset::BitSet;
use crate::constructions::TwoSetRelation;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::relation::{GroundSet, Relation};
use crate::system::{system_from_relation, validate_system, FactSystem};

pub const TOOL: &str = concat!("semidist ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default = "default_tool")]
    pub tool: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn default_tool() -> String {
    TOOL.to_string()
}

impl Default for Meta {
    fn default() -> Self {
        Meta { tool: default_tool(), generator: None, seed: None }
    }
}

impl Meta {
    pub fn generated(generator: impl Into<String>, seed: Option<u64>) -> Meta {
        Meta { generator: Some(generator.into()), seed, ..Meta::default() }
    }
}

pub type Arrow = (String, String);

/// `to` lists non-loop arrows; loops are implied. `onto`/`into` are optional
/// and, when present, are validated against `to` instead of being derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub ground: Vec<String>,
    pub to: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub onto: Option<Vec<Arrow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub into: Option<Vec<Arrow>>,
}

fn arrows_of(ground: &GroundSet, rel: &Relation) -> Vec<Arrow> {
    rel.arrows().map(|(x, y)| (ground.label(x).to_string(), ground.label(y).to_string())).collect()
}

fn relation_of(ground: &GroundSet, arrows: &[Arrow]) -> Result<Relation> {
    let find = |l: &str| ground.index_of(l).ok_or_else(|| Error::InvalidLabels(format!("unknown label {l:?}")));
    let mut r = Relation::identity(ground.size());
    for (a, b) in arrows {
        r.set(find(a)?, find(b)?, true);
    }
    Ok(r)
}

impl SystemDoc {
    pub fn from_system(sys: &FactSystem) -> SystemDoc {
        let g = sys.ground();
        SystemDoc {
            ground: g.labels().to_vec(),
            to: arrows_of(g, sys.to()),
            onto: Some(arrows_of(g, sys.onto())),
            into: Some(arrows_of(g, sys.into_rel())),
        }
    }

    pub fn from_relation(ground: &GroundSet, to: &Relation) -> SystemDoc {
        SystemDoc { ground: ground.labels().to_vec(), to: arrows_of(ground, to), onto: None, into: None }
    }

    pub fn ground_set(&self) -> Result<GroundSet> {
        GroundSet::labeled(self.ground.iter().cloned())
    }

    /// The reflexive relation `->`, without checking any axiom.
    pub fn relation(&self) -> Result<(GroundSet, Relation)> {
        let g = self.ground_set()?;
        let to = relation_of(&g, &self.to)?;
        Ok((g, to))
    }

    pub fn onto_into(&self) -> Result<Option<(Relation, Relation)>> {
        let g = self.ground_set()?;
        match (&self.onto, &self.into) {
            (Some(o), Some(i)) => Ok(Some((relation_of(&g, o)?, relation_of(&g, i)?))),
            (None, None) => Ok(None),
            _ => Err(Error::Parse("`onto` and `into` must be given together".into())),
        }
    }

    pub fn system(&self) -> Result<FactSystem> {
        let (g, to) = self.relation()?;
        match self.onto_into()? {
            Some((onto, into)) => validate_system(g, to, onto, into),
            None => system_from_relation(g, to),
        }
    }
}

/// Lattice on `0..size` given by cover pairs `a ⋖ b` or order pairs `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(usize, usize)>>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &Lattice, labels: Option<Vec<String>>) -> LatticeDoc {
        LatticeDoc { size: l.size(), labels, covers: Some(l.cover_edges()), leq: None }
    }

    pub fn lattice(&self) -> Result<Lattice> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.size {
                return Err(Error::DimensionMismatch { expected: self.size, found: labels.len() });
            }
        }
        match (&self.covers, &self.leq) {
            (Some(c), None) => Lattice::from_covers(self.size, c),
            (None, Some(pairs)) => {
                if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= self.size || b >= self.size) {
                    return Err(Error::OutOfRange { index: a.max(b), size: self.size });
                }
                let r = Relation::reflexive_from_pairs(self.size, pairs.iter().copied());
                Lattice::from_leq(&r.reflexive_transitive_closure())
            }
            _ => Err(Error::Parse("lattice payload needs exactly one of `covers` or `leq`".into())),
        }
    }
}

/// Relation between two labelled sets; `to` lists `(left, right)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoSetDoc {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub to: Vec<Arrow>,
}

impl TwoSetDoc {
    pub fn from_relation(rel: &TwoSetRelation) -> TwoSetDoc {
        let to = (0..rel.left.size())
            .flat_map(|x| rel.rows[x].iter().map(move |y| (x, y)))
            .map(|(x, y)| (rel.left.label(x).to_string(), rel.right.label(y).to_string()))
            .collect();
        TwoSetDoc { left: rel.left.labels().to_vec(), right: rel.right.labels().to_vec(), to }
    }

    pub fn relation(&self) -> Result<TwoSetRelation> {
        let left = GroundSet::labeled(self.left.iter().cloned())?;
        let right = GroundSet::labeled(self.right.iter().cloned())?;
        let mut rows = vec![BitSet::new(right.size()); left.size()];
        for (a, b) in &self.to {
            let x = left.index_of(a).ok_or_else(|| Error::InvalidLabels(format!("unknown left label {a:?}")))?;
            let y = right.index_of(b).ok_or_else(|| Error::InvalidLabels(format!("unknown right label {b:?}")))?;
            rows[x].insert(y);
        }
        TwoSetRelation::new(left, right, rows)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Lattice(LatticeDoc),
    System(SystemDoc),
    TwoSet(TwoSetDoc),
    Report(Value),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Lattice(_) => "lattice",
            Payload::System(_) => "system",
            Payload::TwoSet(_) => "two_set_relation",
            Payload::Report(_) => "report",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub payload: Payload,
    pub meta: Meta,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: String,
    payload: Value,
    #[serde(default)]
    meta: Meta,
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize infallibly")
}

impl Document {
    pub fn new(payload: Payload) -> Document {
        Document { payload, meta: Meta::default() }
    }

    pub fn lattice(l: &Lattice) -> Document {
        Document::new(Payload::Lattice(LatticeDoc::from_lattice(l, None)))
    }

    pub fn system(sys: &FactSystem) -> Document {
        Document::new(Payload::System(SystemDoc::from_system(sys)))
    }

    pub fn report<T: Serialize>(report: &T) -> Document {
        Document::new(Payload::Report(to_value(report)))
    }

    pub fn with_meta(mut self, meta: Meta) -> Document {
        self.meta = meta;
        self
    }

    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }

    pub fn parse(text: &str) -> Result<Document> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let is_envelope = value.as_object().is_some_and(|o| o.contains_key("kind"));
        if !is_envelope {
            return Ok(Document::new(Self::infer(value)?));
        }
        let env: Envelope = from_value(value)?;
        let payload = match env.kind.as_str() {
            "lattice" => Payload::Lattice(from_value(env.payload)?),
            "system" => Payload::System(from_value(env.payload)?),
            "two_set_relation" => Payload::TwoSet(from_value(env.payload)?),
            "report" => Payload::Report(env.payload),
            other => return Err(Error::Parse(format!("unknown document kind {other:?}"))),
        };
        Ok(Document { payload, meta: env.meta })
    }

    fn infer(value: Value) -> Result<Payload> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("document must be a JSON object".into()))?;
        if obj.contains_key("left") {
            Ok(Payload::TwoSet(from_value(value)?))
        } else if obj.contains_key("ground") {
            Ok(Payload::System(from_value(value)?))
        } else if obj.contains_key("size") {
            Ok(Payload::Lattice(from_value(value)?))
        } else {
            Err(Error::Parse("cannot infer document kind from keys".into()))
        }
    }

    /// Canonical text: two-space indented JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let payload = match &self.payload {
            Payload::Lattice(d) => to_value(d),
            Payload::System(d) => to_value(d),
            Payload::TwoSet(d) => to_value(d),
            Payload::Report(v) => v.clone(),
        };
        let env = Envelope { kind: self.kind().to_string(), payload, meta: self.meta.clone() };
        let mut s = serde_json::to_string_pretty(&env).expect("documents serialize infallibly");
        s.push('\n');
        s
    }

    pub fn as_lattice(&self) -> Result<Lattice> {
        match &self.payload {
            Payload::Lattice(d) => d.lattice(),
            _ => Err(self.mismatch("lattice")),
        }
    }

    pub fn as_system_doc(&self) -> Result<&SystemDoc> {
        match &self.payload {
            Payload::System(d) => Ok(d),
            _ => Err(self.mismatch("system")),
        }
    }

    pub fn as_system(&self) -> Result<FactSystem> {
        self.as_system_doc()?.system()
    }

    pub fn as_two_set(&self) -> Result<TwoSetRelation> {
        match &self.payload {
            Payload::TwoSet(d) => d.relation(),
            _ => Err(self.mismatch("two_set_relation")),
        }
    }

    pub fn mismatch(&self, expected: &'static str) -> Error {
        Error::KindMismatch { expected, found: self.kind().to_string() }
    }
}
