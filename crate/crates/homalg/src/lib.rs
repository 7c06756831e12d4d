//! Exact homological computations for finite-dimensional graded bound
//! quiver algebras: minimal projective resolutions, global-dimension
//! verdicts, Yoneda Ext algebras, idempotent corner algebras and
//! Cartan/Euler determinant reductions, plus a harness that checks the
//! corresponding theorems on generated instance families.

pub mod algebra;
pub mod cache;
pub mod cartan;
pub mod ext;
pub mod harness;
pub mod linalg;
pub mod module;
pub mod quiver;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown idempotent label `{0}`")]
    UnknownLabel(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("not certified finite-dimensional: no zero graded piece up to degree cap {0}")]
    NotFiniteDimensional(usize),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("bound error: {0}")]
    Bound(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
