//! Burnside ring of a finite group and the module of twisted classes over it.

mod action;
mod circle;
mod ring;
mod sum;
mod twisted;

pub use action::{action_generator, fold, fold_class, module_action};
pub use circle::{CircleElement, CircleHomomorphism};
pub use ring::{
    burnside_mul, burnside_pow, generator_product, multiplication_table, unit, ProductTable,
};
pub use sum::{BurnsideElement, Term, TwistedModuleElement};
pub(crate) use twisted::generators;
pub use twisted::{homomorphisms, OrbitType, Twist, TwistedClass, TwistedLattice};
