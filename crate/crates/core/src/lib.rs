//! Exact computations with Kontsevich graph flows on polynomial Poisson
//! bivectors: Schouten calculus, the graph complex, the orientation morphism
//! and an exact solver for the Poisson coboundary equation.

pub mod cohomsolve;
pub mod error;
pub mod exec;
pub mod gracomplex;
pub mod multivec;
pub mod orient;
mod parse;
pub mod ratpoly;

pub use error::{Error, Result};
pub use exec::Exec;
