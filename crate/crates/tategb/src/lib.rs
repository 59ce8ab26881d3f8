//! Exact Gröbner-basis computations for polynomial ideals over a p-adically
//! valued field: local and universal analytic Gröbner bases, analytic
//! Gröbner fans and tropical varieties of homogeneous ideals, and Mora weak
//! normal forms over polyhedral convergence domains.
//!
//! All arithmetic is exact rational arithmetic; there are no tolerances.

pub mod arith;
pub mod classical;
pub mod error;
pub mod fan;
pub mod gb;
pub mod io;
pub mod lp;
pub mod order;
pub mod parse;
pub mod polytope;
pub mod uagb;
pub mod poly;
pub mod polyhedral;

pub use arith::{ExtendedRational, Rational, ValuedField};
pub use error::{Error, Result};
pub use order::{LogRadii, TateOrder, TieBreak};
pub use poly::{Monomial, Polynomial, Ring, Term};
