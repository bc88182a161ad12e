//! Exact LP, branch-and-bound feasibility search and market-split instances.

mod bnb;
mod compare;
mod lp;
mod market;

pub use bnb::{bnb_feasibility, default_priority, BnbConfig, BnbResult, BnbStatus};
pub use compare::{compare_formulations, Comparison, ComparisonRow};
pub use lp::{lp_solve, LpOutcome, LpProblem, Sense};
pub use market::{gen_market_split, SplitMix64};
