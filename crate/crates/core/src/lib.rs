//! Finite semidistributive lattices and two-acyclic factorization systems.
//!
//! Relations are boolean matrices over `0..n`. An arrow `x R y` is read as
//! `x >= y` throughout, so "maximal" and "minimal" refer to that direction.

pub mod bitset;
pub mod congruence;
pub mod constructions;
pub mod covers;
pub mod dot;
pub mod error;
pub mod generators;
pub mod io;
pub mod irreducibles;
pub mod iso;
pub mod lattice;
pub mod pairs;
pub mod relation;
pub mod system;

pub use bitset::BitSet;
pub use congruence::{
    brute_congruences, con_lattice, directly_forces, image_coimage, is_congruence, is_congruence_uniform, quotient, restrict_system,
    ConLattice, CongruenceSpec, ForcingRelation, Partition,
};
pub use constructions::{
    classify_lattice, classify_relation, dist_char, double_lattice, double_system, extremal_analysis, ftfel_mu, interval_system,
    markowsky_roundtrip, markowsky_system, two_set_pairs, ExtremalCertificate, LatticeReport, SystemReport, TwoSetRelation,
};
pub use covers::{brute_cjr, canonical_join_rep, cj_complex, cov, del, f_of, f_star, refines, t_of, t_star, CJComplex, CoverData};
pub use dot::render_dot;
pub use error::{Error, Result};
pub use io::{Document, Meta, Payload};
pub use irreducibles::{
    extract_system, ftfsdl_roundtrip, irreducibles, is_semidistributive, ExtractedSystem, IrreducibleData, RoundtripReport, SdReport,
};
pub use iso::{is_isomorphic, systems_isomorphic};
pub use lattice::Lattice;
pub use pairs::{closure, pairs_lattice, perp_left, perp_right, OrthoPair, PairsLattice};
pub use relation::{fact, mult, GroundSet, Relation};
pub use system::{system_from_posets, system_from_relation, validate_system, Diagnostics, FactSystem, Violation};
