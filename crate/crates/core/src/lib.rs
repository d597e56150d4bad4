//! Exact solvers, oracles and generators for generalized bin covering.
//!
//! All quantities are exact rationals ([`Rat`]). The solvers are
//! [`nfd::nfd`], [`gbc::gbc5`] and [`aptas::aptas_solve`]; [`exact`] holds the
//! brute-force oracles and a rational simplex.

pub mod aptas;
pub mod error;
pub mod exact;
pub mod format;
pub mod gbc;
pub mod generate;
pub mod instance;
pub mod matching;
pub mod nfd;
pub mod rat;
pub mod report;

pub use error::{Error, Result};
pub use instance::{
    profit, validate, Assignment, BinRef, BinType, Instance, ProblemClass, Supply, Violation,
};
pub use rat::Rat;
