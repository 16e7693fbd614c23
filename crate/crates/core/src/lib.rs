//! Exact analysis of iterated commutators in semisimple Hopf algebras
//! through their fusion rings and class algebras.

pub mod class_algebra;
pub mod cli;
pub mod commutator;
pub mod error;
pub mod fixtures;
pub mod fusion;
pub mod group;
pub mod rational;
pub mod spectral;

pub use error::{Error, Result};
pub use fusion::{CharacterTable, FusionRing};
pub use rational::{RatMatrix, Rational};
