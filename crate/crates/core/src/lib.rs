//! Hilbert functions, Hilbert coefficients, Tor-length series and
//! matrix-factorization invariants of modules over local rings
//! `k[x_1..x_ν]_(x) / q`, computed exactly over a prime field.

pub mod config;
pub mod error;
pub mod examples;
pub mod field;
pub mod input;
pub mod koszul;
pub mod matfac;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod presentations;
pub mod semigroup;
pub mod series;
pub mod superficial;
pub mod tor;
pub mod verify;

pub use error::{Error, Result};
pub use field::Field;
pub use poly::{Monomial, Order, Poly};
