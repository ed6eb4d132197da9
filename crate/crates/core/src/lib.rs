//! Exact computations on balanced polyhedral complexes and plane tropical
//! curves: balance matrices, extremality, the weight polytope and extremal
//! decompositions, and rigidity of reciprocal diagrams. All arithmetic is over
//! arbitrary-precision rationals.

pub mod balance;
pub mod complex;
pub mod cone;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod exactq;
pub mod reciprocal;
pub mod rigidity;
pub mod tropcurve;

pub use error::{Error, Result};
