//! Extended formulations `P x = P x0 + T mu` built from a reduced kernel
//! basis, and detection of hidden decompositions.

mod detect;
mod extended;
mod split;
mod system;
mod verify;

pub use detect::{decomposition_formulation, detect_decomposition, Detection};
pub use extended::{
    build_extended, dual_kernel, project_affine, solve_multipliers, ExtendedFormulation,
};
pub(crate) use extended::unit_hnf;
pub use split::{split_basis, BasisSplit, SplitPolicy};
pub use system::EqualitySystem;
pub use verify::{verify_formulation_equivalence, EquivalenceReport, MAX_BOX_POINTS};
