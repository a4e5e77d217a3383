//! Rudin–Shapiro pair construction, subset selection and certified bounds.
//!
//! Indexing convention: `a_0 = 0`, so `p_0 = 0`, `q_0 = 1` and the
//! recursion runs for `k = 1..n`. Under it `p_n` has `2^(n−1)` monomials
//! (odd subsets of `{1..n}`) and `q_n` has `2^(n−1)` (even subsets,
//! including the constant term).

mod bundle;
mod pair;
mod schedule;
mod subset;
mod trace;

pub use bundle::{
    assemble_counterexamples, certified_bounds, chain_gap, check_chain, check_sources,
    mixed_at_one, BoundsRecord, CounterexampleBundle, ScalarBounds,
};
pub use pair::{build_rs_pair, expected_coefficient, RSPair};
pub use schedule::{default_parameters, CoeffSchedule};
pub use subset::{choose_subset, select_subset, Branch, RsSelection, SubsetSelection};
pub use trace::{scalar_trace, ScalarTrace};
