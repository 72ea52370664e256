//! Symbolic layer for symmetry groups with an O(2) factor.

pub mod amalgam;
pub mod maximal;
pub mod modes;
pub mod subgroup;
pub mod truncated;

pub use amalgam::{quotient_group, AmalgamatedClass};
pub use maximal::{
    coefficient_nonzero_check, maximal_twisted_types_o2, with_o2_factor, O2Map, O2TwistedType,
    Realization, Witness,
};
pub use modes::{enumerate_mode_classes, find_class, surjective_homs};
pub use subgroup::{O2Subgroup, Quotient};
pub use truncated::{check_in_truncation, verify_maximal_type, TruncatedCheck};
