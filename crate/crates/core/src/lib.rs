//! Exact laboratory for the binary digits of `omega` and `nu = omega^2`.
//!
//! The crate extracts binary digits of square roots and quadratic irrationals
//! exactly, perturbs expansions by flipping single bits, decomposes the
//! resulting change of the digit-frequency average into step-by-step partial
//! differences, certifies how many digits of one expansion pin a prefix of the
//! other, and runs reproducible batch studies on top of all of that.
//!
//! ```
//! use tu_lab::{ExactReal, Rat, digits};
//!
//! let omega = ExactReal::sqrt_of_rat("1/3".parse::<Rat>().unwrap()).unwrap();
//! let p = digits::prefix_bits(&omega, 10).unwrap();
//! assert_eq!(p.to_string(), "1001001111");
//! assert_eq!(digits::freq_f_n(&p).unwrap(), "3/5".parse().unwrap());
//! ```

pub mod cli;
pub mod dependency;
pub mod difference;
pub mod digits;
mod error;
pub mod exact;
pub mod experiments;

pub use error::{Error, Result};
pub use exact::{ExactReal, QuadExt, Radicand, Rat};
