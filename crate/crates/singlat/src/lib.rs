//! Exact lattice-theoretic invariants of negative-definite plumbing trees.
//!
//! A plumbing graph is a finite tree whose vertices carry Euler numbers
//! (self-intersections); it spans a lattice `L = Z<E_v>` with the associated
//! intersection form, together with the dual lattice `L'` and the Lipman cone
//! `S'`. On top of this arithmetic the crate computes, always in exact
//! rational arithmetic:
//!
//! - the minimal (fundamental) cycle `Z_min`, the canonical cycle `Z_K`, the
//!   dual basis `E*_v`, class representatives `r_h` and `s_h` ([`laufer`],
//!   [`lattice`]);
//! - ellipticity, the minimally elliptic cycle `C`, and both elliptic
//!   sequences — Yau's `{D_j}` with its `F_k` cycles, and the `{B_j}`
//!   sequence with pre-term `s_[Z_K]` ([`elliptic`]);
//! - the path invariant `Pam`, by exact shortest-path search over the
//!   lattice box, plus the explicit cost-`l+1` witness path ([`path`]);
//! - coefficients of the topological Poincaré series, counting functions,
//!   dual periodic constants, and the modified Seiberg-Witten invariant via
//!   the surgery recursion ([`zeta`]);
//! - a cross-verification harness for the identity
//!   `m+1 = l+1 = Pam = sw̄` on elliptic graphs ([`report`]).
//!
//! The `singlat` binary exposes all of this on the command line; see the
//! repository README for the file format and command reference.

pub mod corpus;
pub mod cycle;
pub mod elliptic;
pub mod error;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod laufer;
pub mod path;
pub mod report;
pub mod zeta;

pub use cycle::{DiscriminantClass, RationalCycle};
pub use error::{Error, Result};
pub use graph::PlumbingGraph;
pub use lattice::Lattice;

/// Default cap on the number of lattice states a path search may allocate.
///
/// Exceeding the cap is a hard [`Error::Budget`]; results are never
/// approximated. The `singlat` CLI overrides it with `--max-states` or the
/// `SINGLAT_MAX_STATES` environment variable.
pub const DEFAULT_MAX_STATES: u64 = 50_000_000;
