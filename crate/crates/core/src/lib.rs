//! Exact combinatorics of ribbon graphs and the moduli spaces they model.

pub mod census;
pub mod characteristic;
pub mod elliptic;
pub mod json;
pub mod map;
pub mod permutation;
pub mod rational;
pub mod strebel;
pub mod symmetry;
pub mod uniformization;
pub mod verify;

pub use map::{BoundaryDecomposition, Dart, MapError, MetricRibbonGraph, RibbonGraph};
pub use permutation::Permutation;
pub use rational::Rational;
