//! The plane tropical curve of a polynomial, dual to its subdivision.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::{Exponent, TropicalPolynomial};
use super::subdivision::{dual_subdivision, DualSubdivision};
use crate::balance::Weighting;
use crate::complex::{Complex, FaceSpec, Ridge};
use crate::exactq::{from_int, primitive, primitive_integer, Rational};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Segment { from: usize, to: usize },
    Ray { from: usize },
    /// A full line through `point`, from a one-dimensional subdivision.
    Line { point: [Rational; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEdge {
    pub kind: EdgeKind,
    /// Primitive direction, pointing away from `from` when there is one.
    pub direction: [BigInt; 2],
    pub weight: BigInt,
    /// Index of the dual subdivision edge.
    pub dual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub polynomial: TropicalPolynomial,
    pub subdivision: DualSubdivision,
    /// One vertex per 2-cell, in cell order.
    pub vertices: Vec<[Rational; 2]>,
    /// One edge per subdivision edge, in the same order.
    pub edges: Vec<CurveEdge>,
}

fn perp_primitive(a: Exponent, b: Exponent) -> [BigInt; 2] {
    let p = primitive(&[BigInt::from(-(b.1 - a.1)), BigInt::from(b.0 - a.0)]);
    [p[0].clone(), p[1].clone()]
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn id(prefix: char, i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len().max(3);
    format!("{prefix}{i:0width$}")
}

impl Curve {
    pub fn new(f: &TropicalPolynomial) -> Result<Self> {
        let sd = dual_subdivision(f)?;
        let vertices: Vec<[Rational; 2]> = sd.cells.iter().map(|c| c.slope.clone()).collect();
        let mut edges = Vec::with_capacity(sd.edges.len());
        for (ei, e) in sd.edges.iter().enumerate() {
            let weight = BigInt::from(e.lattice_length);
            let (kind, direction) = match e.cells[..] {
                [a, b] => {
                    let diff = [&vertices[b][0] - &vertices[a][0], &vertices[b][1] - &vertices[a][1]];
                    let d = primitive_integer(&diff);
                    (EdgeKind::Segment { from: a, to: b }, [d[0].clone(), d[1].clone()])
                }
                [a] => {
                    let mut n = perp_primitive(e.a, e.b);
                    let inside = sd.cells[a]
                        .corners
                        .iter()
                        .find(|&&c| c != e.a && c != e.b)
                        .copied()
                        .expect("2-cell has a third corner");
                    let s = &n[0] * BigInt::from(inside.0 - e.a.0) + &n[1] * BigInt::from(inside.1 - e.a.1);
                    if s.is_positive() {
                        n = [-n[0].clone(), -n[1].clone()];
                    }
                    (EdgeKind::Ray { from: a }, n)
                }
                _ => {
                    let (a, b) = (e.a, e.b);
                    let d = (a.0 - b.0, a.1 - b.1);
                    let scale = (f.coefficient(b).unwrap() - f.coefficient(a).unwrap()) / q(d.0 * d.0 + d.1 * d.1);
                    let point = [&scale * q(d.0), &scale * q(d.1)];
                    (EdgeKind::Line { point }, perp_primitive(a, b))
                }
            };
            edges.push(CurveEdge { kind, direction, weight, dual: ei });
        }
        Ok(Self {
            polynomial: f.clone(),
            subdivision: sd,
            vertices,
            edges,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(&TropicalPolynomial::parse(text)?)
    }

    pub fn vertex_id(&self, i: usize) -> String {
        id('v', i, self.vertices.len())
    }

    pub fn edge_id(&self, i: usize) -> String {
        id('e', i, self.edges.len())
    }

    /// Number of edges at each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            match e.kind {
                EdgeKind::Segment { from, to } => {
                    deg[from] += 1;
                    deg[to] += 1;
                }
                EdgeKind::Ray { from } => deg[from] += 1,
                EdgeKind::Line { .. } => {}
            }
        }
        deg
    }

    /// The curve as a one-dimensional complex: vertices are ridges, edges
    /// are maximal faces.
    pub fn to_complex(&self) -> Complex {
        let ridges = (0..self.vertices.len())
            .map(|i| Ridge {
                id: self.vertex_id(i),
                point: self.vertices[i].to_vec(),
                basis: Vec::new(),
                normals: None,
            })
            .collect();
        let faces = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let dir: Vec<Rational> = e.direction.iter().map(from_int).collect();
                let (point, ridges) = match &e.kind {
                    EdgeKind::Segment { from, to } => {
                        let half = Rational::new(1.into(), 2.into());
                        let mid = (0..2)
                            .map(|k| (&self.vertices[*from][k] + &self.vertices[*to][k]) * &half)
                            .collect();
                        (mid, vec![self.vertex_id(*from), self.vertex_id(*to)])
                    }
                    EdgeKind::Ray { from } => {
                        let p = (0..2).map(|k| &self.vertices[*from][k] + &dir[k]).collect();
                        (p, vec![self.vertex_id(*from)])
                    }
                    EdgeKind::Line { point } => (point.to_vec(), Vec::new()),
                };
                FaceSpec {
                    id: self.edge_id(i),
                    point,
                    basis: vec![dir],
                    ridges,
                }
            })
            .collect();
        Complex::new(2, 1, ridges, faces).expect("curve complex is well formed")
    }

    /// Lattice-length weights, in edge order.
    pub fn weighting(&self) -> Weighting {
        Weighting::new(self.edges.iter().map(|e| from_int(&e.weight)).collect())
    }

    /// True when some edge direction is not perpendicular to its dual edge.
    pub fn has_duality_defect(&self) -> bool {
        self.edges.iter().any(|e| {
            let sd = &self.subdivision.edges[e.dual];
            let dot = &e.direction[0] * BigInt::from(sd.b.0 - sd.a.0)
                + &e.direction[1] * BigInt::from(sd.b.1 - sd.a.1);
            !dot.is_zero()
        })
    }
}
