//! Exact-arithmetic chain complexes of Hecke-algebra permutation modules.
//!
//! The crate builds, over the Laurent ring Z[q, q^-1], the boundary maps of a
//! chain complex of permutation modules attached to a composition of r, ending
//! in a dual Specht module in degree -1, and provides rank-based exactness
//! verification over the generic ring, over rational and modular
//! specializations of q, and over the integers at q = 1 and q = -1.

pub mod cache;
pub mod complex;
pub mod error;
pub mod exact;
pub mod hecke;
pub mod hom;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod perm;
pub mod scalar;
pub mod shape;
pub mod suite;
pub mod tableau;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
