//! Exact computations for cluster characters attached to reduced words.
//!
//! The crate covers word combinatorics for symmetric Kac–Moody data, seeds and
//! their mutations, modules over quivers with relations, the Frobenius category
//! `C_w` with its modules `V_i` and `W_i`, point counts of flag varieties and
//! quiver Grassmannians over prime fields, evaluation of the functions `φ_X` on
//! the chart `x_i(t)`, the Chamber Ansatz, cluster characters, generic bases and
//! the twist automorphism.

pub mod arith;
pub mod chamber;
pub mod character;
pub mod counting;
pub mod cw;
pub mod error;
pub mod generic;
pub mod rep;
pub mod scenario;
pub mod report;
pub mod seed;
pub mod twist;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
