//! Exact quantum cohomology computations over a non-Archimedean Novikov field.

pub mod battery;
pub mod cli;
pub mod error;
pub mod factor;
pub mod laurent;
pub mod lattice;
pub mod poly;
pub mod quantum;
pub mod rational;
pub mod seidel;

pub use error::{Error, Result};
pub use laurent::{LaurentScalar, Sigma};
pub use lattice::{GradedMonomial, LatticeVector, ManifoldPreset};
pub use quantum::{BasisClass, QuantumAlgebra, QuantumClass, Valuation};
pub use rational::ExactRational;
