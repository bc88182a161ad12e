//! Lattice basis reduction, Hermite normal forms and kernel lattices.

mod hnf;
mod kernel;
mod lll;

pub use hnf::{hnf, lattice_hnf, rank, same_lattice, HnfResult, LatticeMembership};
pub use kernel::{
    column_lengths, integer_kernel, kernel_and_solution, kernel_basis, KernelSolveResult,
    KernelStrategy,
};
pub use lll::{is_lll_reduced, lll_reduce, sort_columns_by_norm, LllParams};
