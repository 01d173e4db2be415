//! Exact algebra for Poincaré duality chain complexes over finite groups.

pub mod chain;
pub mod corpus;
pub mod crossed;
pub mod document;
pub mod groupring;
pub mod linalg;
pub mod poincare;
pub mod quadratic;
pub mod triples;

pub use groupring::{cyclic_group, FiniteGroup, Group, GroupHom, GroupRingElement, OrientationChar};
pub use linalg::{AbelianGroup, IntMatrix, LambdaMatrix};
