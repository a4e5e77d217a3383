//! Sup-norm estimates on the bi-torus, flatness checks, norm reports and
//! growth scans.
//!
//! Grid sups are lower bounds of the true sup (grid points are genuine
//! torus points); certified upper bounds come only from ℓ¹ sums and the
//! flatness chain.

mod flatness;
mod grid;
mod report;
mod scan;

pub use flatness::{flatness_residual, flatness_residual_of};
pub use grid::{grid_sup, grid_values, GridSpec, GridSup};
pub use report::{norm_report, ordinary_entries, NormEntry, NormReport};
pub use scan::{growth_scan, reference_curve, ScanRow, ScanTable};
