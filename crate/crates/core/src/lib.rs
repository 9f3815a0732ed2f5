//! Primitive elements of free groups: exact enumeration and counting, a
//! Whitehead-descent primitivity oracle, growth-rate estimation, and the
//! simple-geodesic census on hyperbolic punctured tori.
//!
//! The headline facts this crate makes checkable at desk scale, for the
//! rank-2 free group:
//!
//! - the number of primitive words of length n grows like `3^(n/2)`, so
//!   their exponential growth rate relative to the whole group is `1/√3`;
//! - the cyclically reduced primitive words number exactly `4 n φ(n)` per
//!   length (φ = Euler's totient), a subexponential series, giving rate
//!   `1/3`;
//! - primitive conjugacy classes correspond to simple closed geodesics on
//!   a hyperbolic punctured torus, with exact Markov trace arithmetic on
//!   the modular torus, quadratically growing length counts, and length
//!   ratios bounded on both sides.
//!
//! Modules: [`words`] (free-group arithmetic and enumeration),
//! [`whitehead`] (the primitivity oracle), [`f2prim`] (rank-2 generation
//! and exact counts), [`hyperbolic`] (holonomy, lengths, censuses),
//! [`growth`] (rate estimates and slope fits).

pub mod error;
pub mod f2prim;
pub mod growth;
pub mod hyperbolic;
pub mod whitehead;
pub mod words;

mod bigmath;

pub use error::{Error, Result};
pub use words::{Alphabet, CyclicWord, Letter, Word};
