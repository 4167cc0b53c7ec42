//! Near-factorizations of finite abelian groups.
//!
//! A pair of subsets `(S, T)` of a finite group `G` (written additively here)
//! is a *λ-fold near-factorization* when every non-identity element of `G`
//! can be written as `s + t` with `s ∈ S`, `t ∈ T` in exactly λ ways, while
//! the identity has no such representation.  Equivalently, in the group ring
//! `ℤ[G]`, `S · T = λ(G − e)`.
//!
//! The crate provides:
//!
//! * exact group-ring arithmetic and verification ([`ring`]),
//! * groups in invariant-factor form with automorphisms and canonical-form
//!   pruning ([`group`]),
//! * the unique-mate solver: given `S`, recover the unique `(T, λ)` if one
//!   exists ([`mate`]),
//! * classical constructions: difference sets, partial difference sets,
//!   de Bruijn-style near-factorizations, product and iterated half-set
//!   constructions, and a verified built-in catalog ([`constructions`]),
//! * necessary-condition filters for parameter feasibility ([`filters`]),
//! * exhaustive search and nonexistence certification ([`search`]),
//! * table reproduction for orders up to 50 ([`tables`]),
//! * catalog file I/O ([`catalog`]) and a command-line front end ([`cli`]).

pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod filters;
pub mod group;
pub mod mate;
pub mod ring;
pub mod search;
pub mod tables;

pub use group::{Group, Subset, Transformation};
pub use ring::{NearFactorization, RingElem};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("elements belong to different groups")]
    MixedGroups,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
