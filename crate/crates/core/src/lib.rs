//! Twisted group algebras of finite groups over finite fields.
//!
//! The crate enumerates finite groups from polycyclic presentations, computes
//! second cohomology with coefficients in `F_q^*`, decomposes twisted group
//! algebras `F^α G` into simple components and decides the twisted group ring
//! relation for abelian groups. The [`dade`] module carries the computations
//! for Dade's pair of groups at `q = 5`.

pub mod arith;
pub mod coh;
pub mod dade;
pub mod equivalence;
pub mod error;
pub mod ff;
pub mod grp;
pub mod linalg;
pub mod tga;
pub mod wedd;
pub mod yam;

pub use error::{Error, Result};
