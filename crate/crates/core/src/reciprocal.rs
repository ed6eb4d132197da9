//! Dual graphs and reciprocal diagrams: realisations of the dual graph whose
//! edges are positive multiples of the vectors `x_σ(v,w)` perpendicular to
//! the faces they cross.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::balance;
use crate::error::{Error, Result};
use crate::exactq::{from_int, primitive, Rational};
use crate::rigidity::{self, Framework};
use crate::tropcurve::{Curve, Exponent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub u: usize,
    pub v: usize,
    /// Id of the maximal face separating the two regions.
    pub face: String,
    /// `x_σ(u, v)`; the reverse orientation is its negative.
    pub x: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    /// Region ids in sorted order.
    pub regions: Vec<String>,
    pub edges: Vec<DualEdge>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DualEdgeJson {
    pub u: String,
    pub v: String,
    pub face_id: String,
    pub x_vector: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DualGraphJson {
    pub regions: Vec<String>,
    pub edges: Vec<DualEdgeJson>,
}

impl DualGraph {
    pub fn from_json(j: &DualGraphJson) -> Result<Self> {
        let mut regions = j.regions.clone();
        regions.sort();
        if regions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate region id".into()));
        }
        let index = |id: &str| {
            regions
                .binary_search_by(|r| r.as_str().cmp(id))
                .map_err(|_| Error::InvalidInput(format!("unknown region {id}")))
        };
        let edges = j
            .edges
            .iter()
            .map(|e| {
                Ok(DualEdge {
                    u: index(&e.u)?,
                    v: index(&e.v)?,
                    face: e.face_id.clone(),
                    x: e.x_vector.iter().map(|&x| BigInt::from(x)).collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { regions, edges })
    }

    pub fn to_json(&self) -> DualGraphJson {
        DualGraphJson {
            regions: self.regions.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| DualEdgeJson {
                    u: self.regions[e.u].clone(),
                    v: self.regions[e.v].clone(),
                    face_id: e.face.clone(),
                    x_vector: e.x.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect(),
                })
                .collect(),
        }
    }

    fn dim(&self) -> usize {
        self.edges.first().map_or(2, |e| e.x.len())
    }
}

pub fn region_id(p: Exponent) -> String {
    format!("({},{})", p.0, p.1)
}

/// Regions of a plane curve are the vertices of its subdivision; the edge
/// crossing the curve edge dual to `ab` gets `x = primitive(a - b)`.
pub fn dual_graph(c: &Curve) -> Result<DualGraph> {
    let sd = &c.subdivision;
    if sd.degenerate {
        return Err(Error::Degenerate("a curve of parallel lines has no bounded dual graph cells".into()));
    }
    // Region ids follow exponent order, which need not be string order.
    let mut order: Vec<usize> = (0..sd.vertices.len()).collect();
    order.sort_by_key(|&i| region_id(sd.vertices[i]));
    let mut rank = vec![0; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let regions = order.iter().map(|&i| region_id(sd.vertices[i])).collect();
    let edges = sd
        .edges
        .iter()
        .zip(&c.edges)
        .enumerate()
        .map(|(i, (e, _))| {
            let (a, b) = (sd.vertex_index(e.a).unwrap(), sd.vertex_index(e.b).unwrap());
            DualEdge {
                u: rank[a],
                v: rank[b],
                face: c.edge_id(i),
                x: primitive(&[BigInt::from(e.a.0 - e.b.0), BigInt::from(e.a.1 - e.b.1)]),
            }
        })
        .collect();
    Ok(DualGraph { regions, edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocalDiagram {
    pub graph: DualGraph,
    pub framework: Framework,
}

impl ReciprocalDiagram {
    pub fn positions(&self) -> &[Vec<Rational>] {
        &self.framework.points
    }
}

/// Places the smallest region at the origin and every neighbour by
/// `p(v) = p(u) - ω(σ) x_σ(u, v)` in breadth-first order, then checks that
/// every remaining edge closes up.
pub fn build_reciprocal(dg: &DualGraph, weights: &[Rational]) -> Result<ReciprocalDiagram> {
    if weights.len() != dg.edges.len() {
        return Err(Error::WrongDimension {
            expected: dg.edges.len(),
            got: weights.len(),
        });
    }
    if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::NonPositiveWeight {
            face: dg.edges[i].face.clone(),
        });
    }
    let n = dg.regions.len();
    let d = dg.dim();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in dg.edges.iter().enumerate() {
        adj[e.u].push(i);
        adj[e.v].push(i);
    }
    let mut pos: Vec<Option<Vec<Rational>>> = vec![None; n];
    if n > 0 {
        pos[0] = Some(vec![Rational::zero(); d]);
    }
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        let mut nbrs: Vec<(usize, usize)> = adj[a]
            .iter()
            .map(|&i| {
                let e = &dg.edges[i];
                (if e.u == a { e.v } else { e.u }, i)
            })
            .collect();
        nbrs.sort_unstable();
        for (b, i) in nbrs {
            if pos[b].is_some() {
                continue;
            }
            let e = &dg.edges[i];
            let sign = if e.u == a { -Rational::one() } else { Rational::one() };
            let pa = pos[a].clone().unwrap();
            pos[b] = Some(
                pa.iter()
                    .zip(&e.x)
                    .map(|(p, x)| p + &sign * &weights[i] * from_int(x))
                    .collect(),
            );
            queue.push_back(b);
        }
    }
    if pos.iter().any(Option::is_none) {
        return Err(Error::InvalidInput("dual graph is not connected".into()));
    }
    let points: Vec<Vec<Rational>> = pos.into_iter().map(Option::unwrap).collect();
    for (i, e) in dg.edges.iter().enumerate() {
        let closes = points[e.u]
            .iter()
            .zip(&points[e.v])
            .zip(&e.x)
            .all(|((pu, pv), x)| pu - pv == &weights[i] * from_int(x));
        if !closes {
            return Err(Error::NotBalanced { edge: e.face.clone() });
        }
    }
    let vertices = dg.regions.iter().cloned().zip(points).collect();
    let edges: Vec<(String, String)> = dg
        .edges
        .iter()
        .map(|e| (dg.regions[e.u].clone(), dg.regions[e.v].clone()))
        .collect();
    Ok(ReciprocalDiagram {
        graph: dg.clone(),
        framework: Framework::new(d, vertices, &edges)?,
    })
}

/// Weights recovered from a diagram, in dual edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramWeighting {
    pub values: Vec<Rational>,
    pub integral: bool,
}

/// `λ` with `p(u) - p(v) = λ x_σ(u, v)` for every edge.
pub fn weighting_from_diagram(rd: &ReciprocalDiagram) -> Result<DiagramWeighting> {
    let fw = &rd.framework;
    let mut values = Vec::with_capacity(rd.graph.edges.len());
    for e in &rd.graph.edges {
        let (pu, pv) = (&fw.points[e.u], &fw.points[e.v]);
        let diff: Vec<Rational> = pu.iter().zip(pv).map(|(a, b)| a - b).collect();
        let k = e
            .x
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidInput(format!("zero vector for face {}", e.face)))?;
        let lambda = &diff[k] / from_int(&e.x[k]);
        if diff.iter().zip(&e.x).any(|(dk, x)| *dk != &lambda * from_int(x)) {
            return Err(Error::NotParallel { edge: e.face.clone() });
        }
        if !lambda.is_positive() {
            return Err(Error::NonPositiveWeight { face: e.face.clone() });
        }
        values.push(lambda);
    }
    let integral = values.iter().all(|v| v.is_integer());
    Ok(DiagramWeighting { values, integral })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub extremal: bool,
    pub direction_rigid: bool,
    pub infinitesimally_rigid: bool,
    pub agree: bool,
}

/// Extremality of the curve against both rigidity notions for the
/// reciprocal diagram built from its lattice-length weighting.
pub fn check_main_theorem(c: &Curve) -> Result<MainTheoremReport> {
    let cx = c.to_complex();
    let m = balance::build_r(&cx)?;
    let extremal = balance::is_extremal(&cx, &m)?.extremal;
    let dg = dual_graph(c)?;
    let rd = build_reciprocal(&dg, &c.weighting().values)?;
    let direction_rigid = rigidity::is_direction_rigid(&rd.framework)?;
    let infinitesimally_rigid = rigidity::is_infinitesimally_rigid(&rd.framework).rigid;
    Ok(MainTheoremReport {
        extremal,
        direction_rigid,
        infinitesimally_rigid,
        agree: extremal == direction_rigid && direction_rigid == infinitesimally_rigid,
    })
}
