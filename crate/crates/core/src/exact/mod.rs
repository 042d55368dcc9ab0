//! Exact numbers: canonical rationals, quadratic irrationals, and square roots
//! of either, with exact comparison against rationals and binary digit
//! extraction.

mod isqrt;
mod quad;
mod rat;
mod real;

pub use isqrt::{exact_sqrt, isqrt};
pub use quad::QuadExt;
pub use rat::Rat;
pub use real::{ExactReal, Radicand};
