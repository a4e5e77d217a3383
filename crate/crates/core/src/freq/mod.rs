//! Lacunary frequency schedules `(n_k) ⊂ ℤ²₊` and exact verification of the
//! ratio conditions on all signed subset sums `m(M)`.

mod conditions;
mod schedule;
mod signed;
mod strong;

pub use conditions::{verify_conditions, verify_conditions_with, ConditionParams, ConditionReport};
pub use schedule::{schedule_frequencies, FreqSchedule, Mode, SchedulerConfig};
pub use signed::{enumerate_signed_sums, SignedSumEntry};
pub use strong::{strong_majorant, strong_mode_bounds, OrdinaryBounds};
