//! Critical groups of arithmetical structures on multigraphs.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: exact integer matrix kernels (determinants, minor GCDs
//!   `D_k` / `D_k*`, Chio condensation, Smith normal form).
//! - [`graph`]: multigraphs, arithmetical structures `(d, r)`, the matrix
//!   `L = diag(d) - A`, critical groups and the Keyes-Reiter vertex operation.
//! - [`enumerate`]: bounded brute-force enumeration of structures.
//! - [`verify`]: executable divisibility statements, conjecture checkers and
//!   the seeded fuzz harness.
//! - [`io`] and [`cli`]: JSON file formats and the command-line front end.
//!
//! All arithmetic is exact; nothing in the library can overflow silently.

pub mod cli;
pub mod enumerate;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod verify;

pub use enumerate::{enumerate_structures, sample_structure, EnumerationQuery};
pub use graph::{
    critical_group, keyes_reiter_operation, laplacian_structure, matrix_l,
    operation_matrix_consistency, validate_structure, ArithmeticalStructure, CriticalGroup,
    GraphError, Multigraph, OperationOutcome,
};
pub use linalg::{IntegerMatrix, LinalgError, MinorGcdProfile, MinorSpec, SnfResult};
