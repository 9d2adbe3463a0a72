//! Order-theoretic toolkit for finite partial order relations on small
//! carriers.
//!
//! The crate is organized around one invariant-checked value type,
//! [`Relation`], and four layers on top of it:
//!
//! * [`relation`] — the primitives: restriction, dual, direct and ordinal
//!   sums, down-/up-sets, lower and upper ends, maximal points, convexity
//!   and convex hulls, transitive hulls.
//! * [`enumeration`] — exhaustive generation of every labeled poset on a
//!   carrier, canonical forms under role-preserving isomorphism, Hasse
//!   covers, and the slow cross-check oracle the fast generator is tested
//!   against.
//! * [`families`] — membership predicates and enumerators for the relation
//!   families cut out by a carrier split (upper ends, convex induced parts,
//!   pinned maxima, hull-spanning extensions), monotone maps into lower-end
//!   lattices, and the partition check that decomposes the induced-part
//!   families by hull-spanning blocks.
//! * [`bijections`] — the structure maps between those families: `phi` from
//!   monotone maps to relations, the self-inverse half-dualization `tau`,
//!   the apex-dropping bijection `sigma` with its explicit inverse, and a
//!   count comparison (`theorem_count_check`) that enumerates both sides of
//!   the equinumerosity claim independently.
//!
//! [`text`] and [`dot`] hold the plain-text relation format and Graphviz
//! export used by the CLI.
//!
//! Everything is deterministic and every value is immutable after
//! construction; all operations are pure functions safe to share across
//! threads.

#![forbid(unsafe_code)]

pub mod bijections;
pub mod dot;
pub mod enumeration;
pub mod families;
pub mod relation;
pub mod text;

pub use relation::{ElemSet, Relation, RelationError, SplitContext, MAX_ELEMENTS};
