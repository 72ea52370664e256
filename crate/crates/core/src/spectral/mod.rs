//! Characteristic values, critical frequencies and isotypic crossing numbers.

mod crossing;
mod model;

pub use crossing::{
    critical_frequencies, crossing_numbers, is_purely_imaginary, resonant_set, t_k_k,
    CriticalFrequency, Crossing, CrossingSet, RESONANCE_TOL,
};
pub use model::{AffineModel, Branch, CharacteristicModel, MatrixBlock, MatrixFamilyModel};
