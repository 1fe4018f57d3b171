//! Exact linear algebra over arbitrary-precision integers and over `Z[b, c]`.
//!
//! Everything here is exact. Determinants use fraction-free Bareiss
//! elimination, which only ever performs divisions that are known to be exact
//! in an integral domain.

mod bareiss;
mod matrix;
mod poly;
mod polymatrix;
mod trees;

pub use bareiss::{bareiss_det, ExactRing};
pub use matrix::{det_bareiss, smith_normal_form, IntMatrix};
pub use poly::{Monomial, PolyZ};
pub use polymatrix::{poly_det, PolyMatrix};
pub use trees::{signed_tree_sum, spanning_tree_count, TREE_SUM_MAX_EDGES};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("exact division failed: {0}")]
    ExactDivisionFailure(String),
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("spanning-tree enumeration budget exceeded: {edges} edges (max {max})")]
    TooLarge { edges: usize, max: usize },
    #[error("graph is not connected")]
    Disconnected,
}
