//! Exceptional Hermite polynomial families indexed by integer partitions.
//!
//! A partition λ of N selects N "exceptional" degrees that are removed from
//! the classical Hermite degree sequence; the surviving family `H^λ_n` is
//! built from Wronskian determinants of classical Hermite polynomials and is
//! orthogonal on the real line with respect to the rational-times-Gaussian
//! weight `W_λ = η_λ^{-2} e^{-x²}` whenever λ is an even partition
//! (Krein–Adler admissibility).
//!
//! The crate is split along the exact/approximate boundary:
//!
//! * [`exactpoly`] — arbitrary-precision rational polynomial and rational
//!   function arithmetic, Wronskians, Sturm real-root counting. No floats.
//! * [`partitions`] — gap sets, sporadic degrees, truncation chains, duality,
//!   and the gap-set inverse. Pure combinatorics.
//! * [`family`] — classical Hermite polynomials, the zero-free Wronskian
//!   `η_λ`, the exceptional family `H^λ_n`, and norming constants.
//! * [`operators`] — the bilinear expression χ, the deformed operator τ_η,
//!   the Darboux intertwiners α/β, factorization chains, and exact identity
//!   verification (every "verify" returns residuals and demands exact zero).
//! * [`quadrature`] — the independent floating-point oracle: Gauss–Hermite
//!   rules, numeric inner products, Gram matrices, and norm cross-checks.

pub mod error;
pub mod exactpoly;
pub mod family;
pub mod operators;
pub mod partitions;
pub mod quadrature;

pub use error::{Error, Result};
