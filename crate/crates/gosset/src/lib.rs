//! Exact-arithmetic enumeration and verification of the configuration of
//! lines in del Pezzo surfaces S_3..S_8 and the corresponding Gosset
//! polytopes (r-4)_21.
//!
//! The crate models `Pic S_r` over the integers, enumerates the special
//! divisor-class families (lines, roots, rulings, exceptional systems, skew
//! a-lines), realizes the Gosset polytope as intersection graphs over the
//! line catalog, and machine-checks the subpolytope count table, the
//! inscribed-simplex center tables, the cornered/uncornered classification
//! theorems, the block-design (Steiner) structures, and the inscribed
//! crosspolytope/hypercube constructions.

pub mod bitset;
pub mod cache;
pub mod catalog;
pub mod error;
pub mod inscribed;
pub mod picard;
pub mod polytope;
pub mod steiner;
pub mod verify;

pub use error::{Error, Result};
pub use picard::{DivisorClass, SurfaceModel};
