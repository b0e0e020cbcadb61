//! Finite skew braces, their isoclinism classes, and finite involutive
//! set-theoretic solutions of the Yang–Baxter equation.

// Cayley-table code reads best with explicit indices.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod brace;
pub mod catalog;
pub mod census;
pub mod group;
pub mod holomorph;
pub mod isoclinism;
pub mod perm;
mod search;
pub mod ybe;
