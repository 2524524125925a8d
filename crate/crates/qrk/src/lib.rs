//! Exact-arithmetic toolkit for rank functions on quiver representations.
//!
//! The library computes, over the rationals or a prime field:
//!
//! - the largest epimorphic subrepresentation and the smallest "absorbing"
//!   kernel subrepresentation of a representation, and from them a global
//!   rank that is independent of the vertex it is read at;
//! - rank functions pulled back and pushed forward along quiver morphisms,
//!   composed into chains;
//! - rank-locus predicates and exhaustive or sampled censuses of whole
//!   representation spaces over small finite fields;
//! - interval decompositions for equioriented type A quivers;
//! - quiver Grassmannians by exhaustive subspace enumeration, and the
//!   string-module strata of the Kronecker quiver.
//!
//! Everything is exact: no floating point anywhere, and every canonical
//! form (reduced row echelon bases, lowest-terms rationals) is unique, so
//! results are reproducible bit for bit.

pub mod error;
pub mod field;
pub mod matrix;
pub mod parse;
pub mod quiver;
pub mod rank;
pub mod rep;
pub mod subspace;

/// Default cap on the number of points an exhaustive enumeration may visit.
/// Overridden by the `QRK_BUDGET` environment variable where noted.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// Entry point used by the `qrk` binary; returns the process exit code.
pub fn run() -> i32 {
    0
}
