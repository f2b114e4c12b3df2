//! Exact arithmetic: rationals, prime fields, matrices, Laurent polynomials and interpolation.

pub mod field;
pub mod frac;
pub mod interp;
pub mod laurent;
pub mod matrix;
pub mod q;

pub use field::{Field, PrimeField, Rationals, QQ};
pub use interp::{interpolate_counting_polynomial, CountingProfile};
pub use laurent::Laurent;
pub use matrix::{Matrix, QMatrix};
pub use q::Q;
