//! Exact computation with polynomial functions on the residue class rings
//! `Z_m` and on their rings of dual numbers `Z_m[α]`, where `α² = 0`.
//!
//! The crate is `no_std` and only needs `alloc`. It covers
//!
//! - residue and dual-number arithmetic ([`ring`]),
//! - dense polynomials, formal derivatives and `(x^p - x)`-adic block
//!   expansions ([`poly`]),
//! - null polynomials and the Kempner function ([`null`]),
//! - permutation polynomial criteria ([`perm`]),
//! - enumeration of polynomial functions, closed-form counts and
//!   canonical representatives ([`census`]).
//!
//! Everything is pure and deterministic; values are immutable once built.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod census;
pub mod error;
pub mod null;
pub mod odometer;
pub mod perm;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use poly::{BlockExpansion, DualPoly, Poly, ZPoly};
pub use ring::{DualNum, ModInt, Modulus, Ring};
