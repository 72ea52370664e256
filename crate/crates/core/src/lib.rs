//! Twisted equivariant degree invariants for symmetric Hopf bifurcation problems.

// `!(x > 0.0)` is how NaN gets rejected along with the out-of-range values; index loops mirror the formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod burnside;
pub mod cli;
pub mod degree;
pub mod disk;
pub mod error;
pub mod group;
pub mod hopf;
pub mod o2;
pub mod report;
pub mod spectral;
pub use error::{Error, Result};
