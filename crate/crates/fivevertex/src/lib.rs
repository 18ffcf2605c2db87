//! Exact computation of the partition function of the five-vertex model
//! on a finite lattice with fixed boundary conditions, by several
//! independent routes, together with verifiers for the operator-algebra
//! identities these routes rest on.
//!
//! The model's configurations are in bijection with plane partitions in a
//! box, so a brute-force enumerator ([`lattice`]) serves as the ground
//! truth. Against it the crate checks:
//!
//! - the operator-algebra route ([`qism`]): monodromy matrices built from
//!   local vertex operators, with the partition function as a vacuum
//!   matrix element;
//! - determinant evaluations of those matrix elements ([`detform`]), both
//!   inhomogeneous and in the homogeneous limit;
//! - Hankel-determinant and terminating-hypergeometric evaluations of the
//!   homogeneous partition function ([`hankel`]);
//! - the second-order ODE in sigma-form satisfied by the homogeneous
//!   partition function as a function of `x = u^2` ([`painleve`]).
//!
//! Everything is exact rational arithmetic ([`exact`]); there is no
//! floating point on any verification path.

pub mod checks;
pub mod detform;
pub mod error;
pub mod exact;
pub mod hankel;
pub mod lattice;
pub mod painleve;
pub mod par;
pub mod qism;
pub mod rng;

pub use error::{Error, Result};
