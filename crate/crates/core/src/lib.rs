//! Rudin–Shapiro counterexamples for mixed Euler derivatives on the bi-disc.
//!
//! The pipeline builds a Rudin–Shapiro pair `(p_n, q_n)` over a lacunary
//! frequency schedule, takes `F` and `G` with `(z1∂1)²F = p_n` and
//! `(z1∂1)²G = q_n − 1`, and certifies that both pure second Euler
//! derivatives stay bounded while the mixed one grows:
//!
//! * [`poly`]: sparse bivariate polynomials with big-integer exponents;
//! * [`rs`]: the pair recursion, subset selection and certified bounds;
//! * [`freq`]: frequency scheduling and exact verification of the
//!   ratio conditions;
//! * [`norms`]: grid sup estimates, flatness checks, reports and scans;
//! * [`files`]: on-disk bundle, schedule and report formats;
//! * [`pipeline`] and [`verify`]: end-to-end construction and independent
//!   re-verification from files.

pub mod dyadic;
pub mod error;
mod fields;
pub mod poly;
pub mod sum;

pub use error::{Error, Result};
pub mod files;
pub mod freq;
pub mod norms;
pub mod pipeline;
pub mod rs;
pub mod verify;
