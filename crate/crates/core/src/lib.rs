//! Exact computer algebra for Rees algebras of point ideals in the projective plane.
//!
//! The crate builds the defining ideal of the Rees algebra of `I_t`, the ideal
//! generated by the degree-`t` piece of the ideal of a finite point set, in two
//! independent ways: from explicit determinantal generator sets derived from the
//! Hilbert–Burch matrix, and by eliminating `t` from the graph ideal
//! `<x_i - t*F_i>`. It then checks equality, perfection, Betti tables and the
//! degrees of minimal generators.

pub mod arith;
pub mod budget;
pub mod error;
pub mod exec;
pub mod groebner;
pub mod points;
pub mod poly;
pub mod rees;
pub mod report;
pub mod resolution;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exec::ExecMode;
