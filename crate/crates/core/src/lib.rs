//! Exact tools for the maximum number of length-`k` paths in planar graphs.
//!
//! The crate is `no_std` with `alloc`. The default `parallel` feature pulls in
//! `std` and rayon, and spreads path counting and triangulation enumeration
//! over a thread pool; results never depend on the schedule.
//!
//! Layout:
//! - [`graph`]: simple undirected graphs with a bit-matrix next to sorted
//!   neighbor lists.
//! - [`canon`]: canonical labelling for isomorphism deduplication (n ≤ 16).
//! - [`paths`]: exact path counting and the P₄ upper-bound chain.
//! - [`degseq`]: the degree-sequence relaxation, its exchange moves and the
//!   cube bound.
//! - [`maximize`]: exact branch-and-bound maximisation of the relaxation.
//! - [`constructions`]: the extremal families and the conjectured growth.
//! - [`enumerate`]: triangulations by diagonal flips and `f(n, P_k)`.
//! - [`planarity`]: brute-force Kuratowski oracle used to validate enumeration.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod canon;
pub mod constructions;
pub mod degseq;
pub mod enumerate;
mod error;
pub mod graph;
pub mod maximize;
pub mod paths;
pub mod planarity;

pub use canon::{canonical_form, CanonicalForm, CANON_LIMIT};
pub use constructions::{blown_cycle, conjectured_value, double_apex, leading_fit, Join, LeadingFit, Parity};
pub use degseq::{DegSeq, PrefixMode, RelaxationSet, Trichotomy};
pub use enumerate::{all_triangulations, f_exact, Catalog, Triangulation};
pub use error::Error;
pub use graph::Graph;
pub use maximize::{maximize, MaximizeResult};
pub use paths::{count_paths, p4_codegree_bound, p4_min_bound};

pub type Result<T, E = Error> = core::result::Result<T, E>;
