//! A symbolic workbench for small coloured operads.
//!
//! Everything is finite and exact: structures live either in finite sets
//! (`FinSet`) or in finite-dimensional vector spaces over the rationals
//! (`VectQ`), and every axiom of every structure can be checked by exhaustive
//! evaluation within an explicit arity/vertex/word truncation.
//!
//! The main constructions:
//!
//! * [`symseq`] — coloured symmetric sequences, the Hadamard tensor and the
//!   composite product;
//! * [`operad`] — operads with axiom checkers, Hadamard products, colour
//!   pullbacks, free and presented operads, and a small builtin zoo;
//! * [`segment`] / [`bv`] — segments, Hopf segments and the Boardman–Vogt
//!   construction with its functoriality and oplax structure;
//! * [`hopf`] / [`planar`] — Hopf structures, comodules, and the equivalence
//!   between planar operads and `uAs`-comodules;
//! * [`algebra`] — algebras and coalgebras over operads, tensor products of
//!   algebras over a Hopf operad, and the convolution algebra.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `owb` binary exposes the file-based check/build/report interface.

pub mod algebra;
pub mod bv;
pub mod enrich;
pub mod hopf;
pub mod io;
pub mod operad;
pub mod perms;
pub mod planar;
pub mod report;
pub mod segment;
pub mod symseq;
pub mod trees;

pub use enrich::{Colour, Elem, Map, Obj, Tag};
pub use report::{Finding, Report};

/// Errors shared by the whole workbench.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("enrichment tag mismatch: {0}")]
    TagMismatch(String),
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("colour mismatch: {0}")]
    ColourMismatch(String),
    #[error("bad edge: {0}")]
    BadEdge(String),
    #[error("bad vertex: {0}")]
    BadVertex(String),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("not a comodule: {0}")]
    NotAComodule(String),
    #[error("malformed structure: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
