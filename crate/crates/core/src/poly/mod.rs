//! Sparse bivariate analytic polynomials with arbitrary-precision exponents.
//!
//! Coefficients are `f64` complex values; exponents are [`BigUint`] pairs so
//! that lacunary frequencies of size `3^(λ n²)` are represented exactly. All
//! term iteration is in canonical order, lexicographic on `(m1, m2)`.

mod cert;
mod euler;
mod eval;
mod exponent;
mod sparse;

pub use cert::{PolyCertificate, TermRecord};
pub use euler::{EulerOp, Multiplier};
pub use eval::{unit_root, GridPoint};
pub use exponent::ExpPair;
pub use sparse::SparsePoly;
