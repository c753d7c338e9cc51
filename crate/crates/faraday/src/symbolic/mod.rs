//! Symbolic layer: parse multivector expressions, canonicalize them over an
//! exact polynomial ring, and check identities from corpus files.

pub mod corpus;
pub mod eval;
pub mod parser;
pub mod poly;

pub use corpus::{
    parse_corpus, run_corpus, CaseOutcome, CorpusReport, IdentityCase, IDENTITY_CORPUS,
    NEGATIVE_CONTROL_CORPUS,
};
pub use eval::{canonicalize, verify_identity, IdentityCheck, SymbolKind, SymbolTable};
pub use parser::{parse, Expr};
pub use poly::Poly;

use crate::algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolicError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol '{0}': declare it as a scalar or vector")]
    UnknownSymbol(String),
    #[error("'{0}' is reserved (generator or pseudoscalar name)")]
    ReservedName(String),
    #[error("symbol '{0}' declared twice")]
    DuplicateSymbol(String),
    #[error("generator '{name}' out of range: this signature has {dim} generators")]
    BadGenerator { name: String, dim: u32 },
    #[error("vector symbol '{0}' needs a four-dimensional signature")]
    NeedsFourDims(String),
    #[error("grade {grade} out of range: maximum grade here is {dim}")]
    BadGrade { grade: u32, dim: u32 },
    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
