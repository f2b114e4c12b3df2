//! Modules over quivers with relations.

pub mod fdalg;
pub mod filtration;
pub mod hom;
pub mod module;
pub mod quiver;

pub use fdalg::FdAlgebra;
pub use hom::{Ext1, Morphism};
pub use module::{Rep, SubSpaces};
pub use quiver::{Arrow, BoundQuiver, Quiver, Relation};
