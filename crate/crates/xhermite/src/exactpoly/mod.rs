//! Exact univariate polynomial and rational-function arithmetic over
//! arbitrary-precision rationals.
//!
//! Everything in this module is exact: no floating point, no rounding,
//! anywhere. Floating-point evaluation lives in [`crate::quadrature`], on
//! the other side of the exact/approximate boundary.

mod poly;
mod ratfun;
mod sturm;
mod wronskian;

pub use poly::{poly_gcd, rational_from_string, rational_to_string, ExactPoly};
pub use ratfun::RatFun;
pub use sturm::count_real_roots;
pub use wronskian::wronskian;
