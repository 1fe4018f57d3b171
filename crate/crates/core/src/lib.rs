//! Exact computations on link diagrams through their signed Tait graphs.
//!
//! * [`tait`]: signed Tait graphs, smoothings, Goeritz matrices.
//! * [`iso`]: canonical labelling and isomorphism of signed multigraphs.
//! * [`linalg`]: Bareiss determinants over `Z` and `Z[b, c]`, Smith normal form,
//!   and a spanning-tree oracle.
//! * [`families`]: pretzel links and the three-parameter family `L(a: e1, e2, e3)`.
//! * [`certify`]: search for quasi-alternating certificates.
//! * [`verify`]: independent checking of certificates.
//! * [`pd`]: planar-diagram codes to Tait graphs.
//! * [`cli`]: the `goeritz` command-line tool.

pub mod certify;
pub mod cli;
pub mod families;
pub mod iso;
pub mod pd;
pub mod linalg;
pub mod tait;
pub mod verify;

pub use linalg::{det_bareiss, poly_det, signed_tree_sum, smith_normal_form, IntMatrix, PolyMatrix, PolyZ};
pub use tait::{Edge, EdgeId, GraphError, ResolutionOutcome, Sign, SignedTaitGraph};
