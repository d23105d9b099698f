//! Stabilization of skew tableaux under jeu de taquin.
//!
//! `T^(k)` glues `k - 1` shifted copies of a standard skew tableau `T` to
//! itself; `T` stabilizes at `k` when every entry of the last copy stays in
//! its row during rectification. This crate computes that index and checks
//! the combinatorics behind the bound `stab(T) <= r`: Greene invariants,
//! lattice-path families in the matrix `M(q, T)`, and the path surgeries
//! that never decrease the number of letters a family can carry.

pub mod enumerate;
pub mod error;
pub mod greene;
pub mod jdt;
pub mod lattice;
pub mod lemmas;
pub mod perm;
pub mod random;
pub mod stab;
pub mod tableau;

pub use error::{Error, Result};
pub use tableau::{Letter, Shape, SkewTableau, Word};
