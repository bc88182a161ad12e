//! Single-row knapsacks `a x = b` whose coefficients decompose as
//! `a = M1 p1 + M2 p2`: integer width along `mu`, a lower bound on the
//! Frobenius number and an exact Frobenius oracle.

mod decomposition;
mod frobenius;
mod width;

pub use decomposition::{make_decomposition, Decomposition};
pub use frobenius::{
    frobenius_exact, frobenius_lower_bound, Assumption, FrobeniusBound, FrobeniusCase,
    ResidueTable, MAX_RESIDUE_MODULUS,
};
pub use width::{integer_width, integer_width_raw, width_bounds, width_q_shift_check, WidthAnalysis};
