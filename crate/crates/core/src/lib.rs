//! Spread of influence on edge-weighted graphs: activation processes, target
//! sets, incentive (target) vectors, degenerate thresholds, and instance
//! reductions, with exact brute-force oracles for small instances.
//!
//! All arithmetic is exact ([`Rational`]); there is no floating point in the
//! library.

pub mod degeneracy;
pub mod engine;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod generators;
pub mod instance;
pub mod oracles;
pub mod rational;
pub mod reductions;
pub mod solvers;
pub mod sweeps;
pub mod vertex_set;
pub mod wtg;

mod compiled;

pub use error::{Error, Result};
pub use exec::Execution;
pub use instance::{Edge, Instance, Mode, RawInstance, Violation};
pub use rational::Rational;
pub use vertex_set::VertexSet;
