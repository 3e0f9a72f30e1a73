//! Computational group theory at desk scale.
//!
//! The crate is organized by the kind of object being computed with:
//!
//! - [`perm`]: permutations of `{1..n}` and their cycle structure.
//! - [`fingroup`]: finite groups as multiplication tables, with subgroup,
//!   conjugacy, Sylow, series and automorphism machinery.
//! - [`constructions`]: named groups, products and a small spec language.
//! - [`gaction`]: group actions, orbits and Burnside counting.
//! - [`abelian`]: integer matrices, stacked bases and invariant factors.
//! - [`freegrp`]: free-group words, Schreier transversals and rewriting.
//! - [`matgrp`]: elementary-matrix decompositions and finite matrix groups.

pub mod abelian;
pub mod constructions;
pub mod fingroup;
pub mod gaction;
pub mod freegrp;
pub mod matgrp;
pub mod perm;
