//! Exact computations around Hecke eigenvalue angles of level-one cusp
//! forms: q-expansions and the Miller basis, Hecke matrices and their
//! characteristic polynomials, the Eichler-Selberg trace formula,
//! certified eigenvalue angles, Selberg majorants, pair-counting bounds,
//! and a Monte Carlo probe of the p-adic Plancherel measure.

pub mod angles;
pub mod arith;
pub mod bounds;
pub mod error;
pub mod ffpoly;
pub mod hecke;
pub mod plancherel_mc;
pub mod poly;
pub mod qexpansion;
pub mod selberg;
pub mod traceformula;

pub use error::{Error, Result};

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
