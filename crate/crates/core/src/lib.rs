//! Kernel-lattice reformulations of integer equality systems `A x = b`.
//!
//! The crate finds a reduced basis of the kernel lattice of `A`, splits it
//! into short and long vectors, and builds extended formulations
//! `P x = P x0 + T mu` whose branching direction `mu` exposes hidden
//! structure. For single-row knapsacks it computes the integer width of the
//! reformulated polytope in closed form and a lower bound on the Frobenius
//! number, and an exact LP-based branch-and-bound checks what the
//! reformulations buy in practice.
//!
//! All arithmetic is exact. The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod exact;
pub mod knapsack;
pub mod lattice;
pub mod reformulate;
pub mod solver;

pub use error::{Error, Result};
