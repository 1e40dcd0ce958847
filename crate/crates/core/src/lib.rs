//! Combinatorics of string algebras: strings and bands, prime bands,
//! bridge quivers, hammock operators and rank classification of graph maps.

pub mod bands;
pub mod bridges;
pub mod error;
pub mod fixtures;
pub mod hammocks;
pub mod oracle;
pub mod presentation;
pub mod ranks;
pub mod words;

pub use bands::{Band, BandFreeCatalog};
pub use bridges::{
    AlgebraClassification, BridgeArrow, BridgeKind, BridgeVertex, ExtendabilityWitness,
    ExtendedBridgeQuiver, MetaBand, OrderMode, PathSpec,
};
pub use error::{Error, Result};
pub use hammocks::{
    ExpansionResult, ExpansionStatus, HammockRef, IntervalReport, Op, Side, TorsionReport,
};
pub use oracle::{OracleBudget, OracleReport};
pub use presentation::{
    derive_signs, parse_presentation, validate_string_algebra, Arrow, Axiom, QuiverPresentation,
    Sign, SignAssignment, ValidationReport, Violation,
};
pub use ranks::{
    BbVia, GraphMapDescriptor, Rank, RankClass, RankWitness, RecursiveSystemWitness, StableRank,
    StableRankEstimate,
};
pub use words::{
    SignData, StringAlgebra, SubstringKind, SubstringWitness, Syllable, Word, WordView,
};
