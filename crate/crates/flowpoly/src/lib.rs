//! Exact computation on flow polytopes of loopless DAGs: lattice-point
//! counts (Kostant partition functions), normalized volumes by several
//! independent routes, Morris-type constant terms and their refinements in
//! closed form and by enumeration, and the route-clique combinatorics that
//! turn the a <-> b symmetry into an explicit flow bijection.
//!
//! Everything is exact: big integers, big rationals, and gamma values at
//! half-integer arguments carried as rational multiples of powers of
//! sqrt(pi).

pub mod ctseries;
pub mod digraph;
pub mod dkk;
pub mod error;
pub mod exact;
pub mod flows;
pub mod formulas;
pub mod refine;
pub mod samples;
pub mod verify;
pub mod volumes;

pub use error::{Error, Result};
