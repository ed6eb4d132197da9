//! Plane tropical curves from tropical polynomials in two variables.

mod curve;
mod poly;
mod structure;
mod subdivision;

pub use curve::{Curve, CurveEdge, EdgeKind};
pub use poly::{Exponent, TropicalPolynomial};
pub use structure::{structure_report, StructureReport};
pub use subdivision::{convex_hull, dual_subdivision, lattice_length, Cell, DualSubdivision, SdEdge};

use crate::exactq::Rational;

pub fn eval(f: &TropicalPolynomial, z: &[Rational; 2]) -> (Rational, Vec<Exponent>) {
    f.eval(z)
}
