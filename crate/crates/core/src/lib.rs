//! Exact arithmetic for twisted matrix algebras over the unramified tower
//! `F_{p^n}(t) / F_p(t)`: residues of their Brauer classes by the closed-form
//! determinant formula and by the coboundary / factor-set route, the explicit
//! crossed-product model, and a vertex-level model of the building of `PGL_n`
//! used to produce integral (Azumaya) models of unramified classes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod building;
pub mod cohomology;
pub mod crossed;
pub mod error;
pub mod field;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod ratfn;
pub mod tower;

pub use algebra::{Base, KSubspace, StructureConstantAlgebra};
pub use building::{LatticeVertex, SearchOutcome, TwistedAction};
pub use cohomology::{LMatrix, OneCocycle, ResidueClass, TwoCocycle};
pub use crossed::{CrossedProduct, MatrixAlgebra};
pub use error::{Error, Result};
pub use field::Field;
pub use gf::{Fq, Gf};
pub use linalg::Matrix;
pub use poly::Poly;
pub use ratfn::{FnField, RatFn};
pub use tower::{GaloisElement, Tower};
