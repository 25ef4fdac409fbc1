//! Finite n-ary groups.
//!
//! An n-ary group is a set with one associative n-place operation in which
//! every equation with a single unknown is solvable. This crate builds such
//! groups from ordinary groups, verifies the axioms exhaustively at small
//! scale, and computes the standard structural invariants: skew elements,
//! the Post covering group, retracts, subgroup lattices, normality
//! predicates, centers, normalizers, units and idempotents.
//!
//! Elements are dense indices `0..k`. Every operation is deterministic, so
//! reports are reproducible bit for bit.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod axioms;
pub mod binary;
pub mod constructions;
pub mod element;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod permutations;
pub mod post_cover;
pub mod retract;
pub mod structure;
pub mod subgroups;

pub use binary::{BinaryGroupTable, PermutationMap};
pub use element::{ElemSet, ElementId};
pub use error::{Error, Result};
pub use group::{CanonicalClass, NaryGroup, Verification, Word};
pub use groupoid::{Backing, Limits, NaryGroupoid};
pub use post_cover::{CoverElement, PostCover};
pub use retract::Retract;
pub use subgroups::SubgroupSet;
