use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semidist::congruence::{brute_congruences, con_lattice_capped, downsets, forcing_preorder, DEFAULT_DOWNSET_CAP};
use semidist::constructions::{two_set_pairs, TwoSetRelation};
use semidist::generators;
use semidist::io::{LatticeDoc, Meta, Payload, SystemDoc, TwoSetDoc};
use semidist::pairs::{PairsLattice, DEFAULT_PAIRS_CAP};
use semidist::*;

#[derive(Parser)]
#[command(name = "semidist", version, about = "Semidistributive lattices and factorization systems")]
struct Cli {
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Upper bound on enumerated closed sets, congruences or lattice sizes.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the factorization system axioms, or parse a lattice.
    Validate { input: PathBuf },
    /// Maximal orthogonal pairs of a relation or two-set relation.
    Pairs {
        input: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// Factorization system of a semidistributive lattice.
    Extract { input: PathBuf },
    /// Lattice -> system -> pairs lattice, with a verified isomorphism.
    Roundtrip { input: PathBuf },
    /// Lower covers of closed sets via Cov/Del.
    Covers {
        input: PathBuf,
        /// Comma-separated labels of a closed set; all closed sets if omitted.
        #[arg(long)]
        set: Option<String>,
    },
    /// Canonical join representations of closed sets.
    Cjr {
        input: PathBuf,
        #[arg(long)]
        set: Option<String>,
    },
    /// Edges of the canonical join complex.
    Cjcomplex { input: PathBuf },
    /// Direct forcing edges and the forcing preorder.
    Forcing { input: PathBuf },
    /// Quotient for a forcing upset, or a summary of all quotients.
    Quotients {
        input: PathBuf,
        #[arg(long)]
        upset: Option<String>,
    },
    /// Congruence lattice from forcing downsets.
    Con {
        input: PathBuf,
        /// Also count congruences directly on the pairs lattice.
        #[arg(long)]
        brute: bool,
    },
    /// Interval system between two closed sets.
    Interval {
        input: PathBuf,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Double an interval: closed sets for systems, element indices for lattices.
    Double {
        input: PathBuf,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Lattice -> two-set relation, or two-set relation -> lattice.
    Markowsky { input: PathBuf },
    /// Chain length, irreducible counts and the bijection μ.
    Extremal { input: PathBuf },
    /// Distributive / semidistributive / congruence-uniform / extremal report.
    Classify { input: PathBuf },
    /// Emit a generated lattice.
    Generate {
        kind: GenKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Graphviz rendering of a lattice or system.
    Render { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum GenKind {
    Chain,
    Boolean,
    WeakOrderSn,
    Tamari,
    DoublingRandom,
    Exhaustive,
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<String, Failure>;

fn read_doc(path: &PathBuf) -> std::result::Result<Document, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    Ok(Document::parse(&text)?)
}

struct Ctx {
    seed: u64,
    cap: Option<usize>,
    format: Format,
}

impl Ctx {
    fn pairs_cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_PAIRS_CAP)
    }

    fn emit(&self, value: Value) -> String {
        match self.format {
            Format::Json => Document::new(Payload::Report(value)).to_json(),
            Format::Text => text_lines(&value, ""),
        }
    }

    fn pairs_of_relation(&self, ground: GroundSet, to: Relation) -> Result<PairsLattice> {
        PairsLattice::of_relation(ground, to, self.pairs_cap())
    }

    fn pairs(&self, sys: &FactSystem) -> Result<PairsLattice> {
        self.pairs_of_relation(sys.ground().clone(), sys.to().clone())
    }
}

fn text_lines(v: &Value, prefix: &str) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match x {
                    Value::Object(_) => text_lines(x, &key),
                    _ => format!("{key}: {}\n", scalar(x)),
                }
            })
            .collect(),
        _ => format!("{}\n", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Bool(true) => "✓".into(),
        Value::Bool(false) => "✗".into(),
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

fn labels(ground: &GroundSet, set: &BitSet) -> Vec<String> {
    set.iter().map(|i| ground.label(i).to_string()).collect()
}

fn parse_set(ground: &GroundSet, text: &str) -> Result<BitSet> {
    let mut set = BitSet::new(ground.size());
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "{}") {
        let i = ground.index_of(item).ok_or_else(|| Error::InvalidLabels(format!("unknown label {item:?}")))?;
        set.insert(i);
    }
    Ok(set)
}

fn parse_index(text: &str, size: usize) -> Result<usize> {
    let i: usize = text.trim().parse().map_err(|_| Error::Parse(format!("expected an element index, got {text:?}")))?;
    if i >= size {
        return Err(Error::OutOfRange { index: i, size });
    }
    Ok(i)
}

fn closed_set(sys: &FactSystem, text: &str) -> Result<BitSet> {
    let set = parse_set(sys.ground(), text)?;
    if sys.closure(&set) != set {
        return Err(Error::NotClosed);
    }
    Ok(set)
}

fn target_sets(ctx: &Ctx, sys: &FactSystem, set: &Option<String>) -> Result<Vec<BitSet>> {
    match set {
        Some(s) => Ok(vec![closed_set(sys, s)?]),
        None => Ok(ctx.pairs(sys)?.torsion_sets().into_iter().cloned().collect()),
    }
}

/// The pairs lattice for system documents, the lattice itself otherwise.
fn lattice_of(ctx: &Ctx, doc: &Document) -> Result<Lattice> {
    match &doc.payload {
        Payload::Lattice(d) => d.lattice(),
        Payload::System(d) => {
            let (g, to) = d.relation()?;
            Ok(ctx.pairs_of_relation(g, to)?.into_lattice())
        }
        Payload::TwoSet(d) => Ok(two_set_pairs(&d.relation()?, ctx.pairs_cap())?.lattice),
        Payload::Report(_) => Err(doc.mismatch("lattice, system or two_set_relation")),
    }
}

fn validate(ctx: &Ctx, doc: &Document) -> Out {
    match &doc.payload {
        Payload::System(d) => {
            let (_, to) = d.relation()?;
            let (onto, into) = match d.onto_into()? {
                Some(p) => p,
                None => fact(&to)?,
            };
            let diag = system::diagnose(&to, &onto, &into);
            if !diag.is_valid() {
                return Err(Error::InvalidSystem(Box::new(diag)).into());
            }
            Ok(ctx.emit(json!({ "valid": true, "size": to.size() })))
        }
        Payload::Lattice(d) => {
            let l = d.lattice()?;
            Ok(ctx.emit(json!({ "valid": true, "size": l.size() })))
        }
        Payload::TwoSet(d) => {
            let r = d.relation()?;
            Ok(ctx.emit(json!({ "valid": true, "companionable": r.is_companionable() })))
        }
        Payload::Report(_) => Err(doc.mismatch("lattice, system or two_set_relation").into()),
    }
}

fn pairs_cmd(ctx: &Ctx, doc: &Document, count: bool) -> Out {
    let (n, list): (usize, Vec<Value>) = match &doc.payload {
        Payload::System(d) => {
            let (g, to) = d.relation()?;
            let p = ctx.pairs_of_relation(g.clone(), to)?;
            let list = p.pairs().iter().map(|q| json!({ "torsion": labels(&g, &q.torsion), "free": labels(&g, &q.free) })).collect();
            (p.size(), list)
        }
        Payload::TwoSet(d) => {
            let r = d.relation()?;
            let p = two_set_pairs(&r, ctx.pairs_cap())?;
            let list = p.pairs.iter().map(|(x, y)| json!({ "left": labels(&r.left, x), "right": labels(&r.right, y) })).collect();
            (p.pairs.len(), list)
        }
        _ => return Err(doc.mismatch("system or two_set_relation").into()),
    };
    if count {
        return Ok(format!("{n}\n"));
    }
    let l = lattice_of(ctx, doc)?;
    Ok(ctx.emit(json!({ "size": n, "pairs": list, "covers": l.cover_edges() })))
}

fn extract(doc: &Document) -> Out {
    let l = doc.as_lattice()?;
    let ex = extract_system(&l)?;
    Ok(Document::system(&ex.system).to_json())
}

fn roundtrip(ctx: &Ctx, doc: &Document) -> Out {
    let l = lattice_of(ctx, doc)?;
    let report = ftfsdl_roundtrip(&l)?;
    match ctx.format {
        Format::Text => Ok(format!("isomorphism verified: {} elements\n", report.size)),
        Format::Json => Ok(ctx.emit(json!({
            "message": format!("isomorphism verified: {} elements", report.size),
            "correspondence": report.correspondence,
        }))),
    }
}

fn covers_cmd(ctx: &Ctx, doc: &Document, set: &Option<String>) -> Out {
    let sys = doc.as_system()?;
    let g = sys.ground();
    let mut rows = Vec::new();
    for x in target_sets(ctx, &sys, set)? {
        let c = cov(&sys, &x)?;
        let lower: Vec<_> = c.lower_covers.iter().map(|d| labels(g, d)).collect();
        rows.push(json!({ "set": labels(g, &x), "cov": c.cov.iter().map(|&i| g.label(i)).collect::<Vec<_>>(), "lower_covers": lower }));
    }
    Ok(ctx.emit(json!({ "covers": rows })))
}

fn cjr_cmd(ctx: &Ctx, doc: &Document, set: &Option<String>) -> Out {
    let sys = doc.as_system()?;
    let g = sys.ground();
    let mut rows = Vec::new();
    for x in target_sets(ctx, &sys, set)? {
        let rep: Vec<_> = canonical_join_rep(&sys, &x)?.iter().map(|t| labels(g, t)).collect();
        rows.push(json!({ "set": labels(g, &x), "cjr": rep }));
    }
    Ok(ctx.emit(json!({ "cjr": rows })))
}

fn cjcomplex_cmd(ctx: &Ctx, doc: &Document) -> Out {
    let sys = doc.as_system()?;
    let c = cj_complex(&sys);
    let edges: Vec<_> = c.edges.iter().map(|&(a, b)| [sys.label(a), sys.label(b)]).collect();
    Ok(ctx.emit(json!({ "vertices": sys.ground().labels(), "edges": edges })))
}

fn forcing_cmd(ctx: &Ctx, doc: &Document) -> Out {
    let sys = doc.as_system()?;
    let f = directly_forces(&sys);
    let edges: Vec<_> = f.witnesses.iter().map(|&(x, y, tag)| json!({ "from": sys.label(x), "to": sys.label(y), "clause": tag })).collect();
    let pre = forcing_preorder(&sys);
    let preorder: Vec<_> = pre.arrows().map(|(x, y)| [sys.label(x), sys.label(y)]).collect();
    Ok(ctx.emit(json!({
        "edges": edges,
        "preorder": preorder,
        "congruence_uniform": is_congruence_uniform(&sys),
    })))
}

fn quotients_cmd(ctx: &Ctx, doc: &Document, upset: &Option<String>) -> Out {
    let sys = doc.as_system()?;
    let g = sys.ground();
    match upset {
        Some(text) => {
            let u = parse_set(g, text)?;
            let q = quotient(&sys, &u)?;
            let sys_doc = SystemDoc::from_system(&q.restricted);
            Ok(ctx.emit(json!({
                "upset": labels(g, &u),
                "quotient_size": q.quotient.size(),
                "blocks": q.partition.blocks(),
                "map": q.map,
                "restricted": serde_json::to_value(sys_doc).expect("serializable"),
            })))
        }
        None => {
            let cap = ctx.cap.unwrap_or(DEFAULT_DOWNSET_CAP);
            let pre = forcing_preorder(&sys);
            let mut rows = Vec::new();
            for d in downsets(&pre, cap)? {
                let u = d.complement();
                let q = quotient(&sys, &u)?;
                rows.push(json!({ "upset": labels(g, &u), "quotient_size": q.quotient.size() }));
            }
            Ok(ctx.emit(json!({ "count": rows.len(), "quotients": rows })))
        }
    }
}

fn con_cmd(ctx: &Ctx, doc: &Document, brute: bool) -> Out {
    let sys = doc.as_system()?;
    let con = con_lattice_capped(&sys, ctx.cap.unwrap_or(DEFAULT_DOWNSET_CAP))?;
    let downsets: Vec<_> = con.downsets.iter().map(|d| labels(sys.ground(), d)).collect();
    let mut out = json!({ "size": con.size(), "downsets": downsets, "covers": con.lattice.cover_edges() });
    if brute {
        let p = ctx.pairs(&sys)?;
        let n = brute_congruences(p.lattice(), ctx.cap.unwrap_or(congruence::DEFAULT_CONGRUENCE_CAP))?.len();
        out["brute_force_size"] = json!(n);
        out["agree"] = json!(n == con.size());
    }
    Ok(ctx.emit(out))
}

fn interval_cmd(ctx: &Ctx, doc: &Document, lo: &str, hi: &str) -> Out {
    let sys = doc.as_system()?;
    let p = ctx.pairs(&sys)?;
    let (a, b) = (closed_set(&sys, lo)?, closed_set(&sys, hi)?);
    let (i, j) = (p.index_of(&a).ok_or(Error::NotClosed)?, p.index_of(&b).ok_or(Error::NotClosed)?);
    let iv = constructions::interval_system(&sys, &p, i, j)?;
    Ok(Document::system(&iv.system).to_json())
}

fn double_cmd(ctx: &Ctx, doc: &Document, lo: &str, hi: &str) -> Out {
    match &doc.payload {
        Payload::Lattice(d) => {
            let l = d.lattice()?;
            let (i, j) = (parse_index(lo, l.size())?, parse_index(hi, l.size())?);
            Ok(Document::lattice(&double_lattice(&l, i, j)?.lattice).to_json())
        }
        Payload::System(_) => {
            let sys = doc.as_system()?;
            let (a, b) = (closed_set(&sys, lo)?, closed_set(&sys, hi)?);
            if !a.is_subset(&b) {
                let p = ctx.pairs(&sys)?;
                let idx = |s: &BitSet| p.index_of(s).ok_or(Error::NotClosed);
                return Err(Error::NotComparable { lo: idx(&a)?, hi: idx(&b)? }.into());
            }
            let (x, y) = (OrthoPair::from_closed(sys.to(), a)?, OrthoPair::from_closed(sys.to(), b)?);
            Ok(Document::system(&double_system(&sys, &x, &y)?).to_json())
        }
        _ => Err(doc.mismatch("lattice or system").into()),
    }
}

fn markowsky_cmd(ctx: &Ctx, doc: &Document) -> Out {
    match &doc.payload {
        Payload::Lattice(d) => {
            let l = d.lattice()?;
            markowsky_roundtrip(&l)?;
            Ok(Document::new(Payload::TwoSet(TwoSetDoc::from_relation(&markowsky_system(&l)))).to_json())
        }
        Payload::TwoSet(d) => {
            let r: TwoSetRelation = d.relation()?;
            let p = two_set_pairs(&r, ctx.pairs_cap())?;
            Ok(Document::new(Payload::Lattice(LatticeDoc::from_lattice(&p.lattice, None))).to_json())
        }
        _ => Err(doc.mismatch("lattice or two_set_relation").into()),
    }
}

fn extremal_cmd(ctx: &Ctx, doc: &Document) -> Out {
    let l = lattice_of(ctx, doc)?;
    let cert = extremal_analysis(&l);
    Ok(ctx.emit(serde_json::to_value(cert).expect("serializable")))
}

fn classify_cmd(ctx: &Ctx, doc: &Document) -> Out {
    let v = match &doc.payload {
        Payload::System(d) => {
            let (g, to) = d.relation()?;
            serde_json::to_value(classify_relation(&g, &to)?)
        }
        _ => serde_json::to_value(classify_lattice(&lattice_of(ctx, doc)?)?),
    };
    Ok(ctx.emit(v.expect("serializable")))
}

fn generate(ctx: &Ctx, kind: GenKind, n: usize, steps: usize) -> Out {
    let (name, seed, l) = match kind {
        GenKind::Chain => ("chain", None, generators::chain(n)?),
        GenKind::Boolean => ("boolean", None, generators::boolean(n)?),
        GenKind::WeakOrderSn => ("weak_order_sn", None, generators::weak_order_sn(n)?),
        GenKind::Tamari => ("tamari", None, generators::tamari(n)?),
        GenKind::DoublingRandom => ("doubling_random", Some(ctx.seed), generators::doubling_random(steps, ctx.seed)?),
        GenKind::Exhaustive => {
            let all = generators::exhaustive_lattices(n)?;
            let docs: Vec<_> = all.iter().map(|l| serde_json::to_value(LatticeDoc::from_lattice(l, None)).expect("serializable")).collect();
            let doc = Document::new(Payload::Report(json!({ "n": n, "count": all.len(), "lattices": docs })))
                .with_meta(Meta::generated("exhaustive_lattices", None));
            return Ok(doc.to_json());
        }
    };
    let gen = match kind {
        GenKind::DoublingRandom => format!("{name}(steps={steps})"),
        _ => format!("{name}(n={n})"),
    };
    Ok(Document::lattice(&l).with_meta(Meta::generated(gen, seed)).to_json())
}

fn run(cli: &Cli) -> Out {
    let ctx = Ctx { seed: cli.seed, cap: cli.cap, format: cli.format };
    match &cli.command {
        Command::Validate { input } => validate(&ctx, &read_doc(input)?),
        Command::Pairs { input, count } => pairs_cmd(&ctx, &read_doc(input)?, *count),
        Command::Extract { input } => extract(&read_doc(input)?),
        Command::Roundtrip { input } => roundtrip(&ctx, &read_doc(input)?),
        Command::Covers { input, set } => covers_cmd(&ctx, &read_doc(input)?, set),
        Command::Cjr { input, set } => cjr_cmd(&ctx, &read_doc(input)?, set),
        Command::Cjcomplex { input } => cjcomplex_cmd(&ctx, &read_doc(input)?),
        Command::Forcing { input } => forcing_cmd(&ctx, &read_doc(input)?),
        Command::Quotients { input, upset } => quotients_cmd(&ctx, &read_doc(input)?, upset),
        Command::Con { input, brute } => con_cmd(&ctx, &read_doc(input)?, *brute),
        Command::Interval { input, lo, hi } => interval_cmd(&ctx, &read_doc(input)?, lo, hi),
        Command::Double { input, lo, hi } => double_cmd(&ctx, &read_doc(input)?, lo, hi),
        Command::Markowsky { input } => markowsky_cmd(&ctx, &read_doc(input)?),
        Command::Extremal { input } => extremal_cmd(&ctx, &read_doc(input)?),
        Command::Classify { input } => classify_cmd(&ctx, &read_doc(input)?),
        Command::Generate { kind, n, steps, output } => {
            let text = generate(&ctx, *kind, *n, *steps)?;
            match output {
                Some(path) => {
                    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Render { input } => Ok(render_dot(&read_doc(input)?)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            if out.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, message) = match f {
                Failure::Domain(e) => (e.code(), e.to_string()),
                Failure::Io(m) => ("io_error", m),
            };
            eprintln!("{}", json!({ "error": { "code": code, "message": message } }));
            ExitCode::from(1)
        }
    }
}
