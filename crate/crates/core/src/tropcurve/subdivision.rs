//! The regular subdivision of the Newton polygon induced by the
//! coefficients: the lower hull of the lifted points `(k, -a_k)`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::{Exponent, TropicalPolynomial};
use crate::error::{Error, Result};
use crate::exactq::{RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Corners of the polygon, counterclockwise from the smallest.
    pub corners: Vec<Exponent>,
    /// Every support point whose lift lies on this lower facet.
    pub points: Vec<Exponent>,
    /// Slope `(α, β)` of the facet `h = αk₁ + βk₂ + γ`; also the dual vertex.
    pub slope: [Rational; 2],
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdEdge {
    pub a: Exponent,
    pub b: Exponent,
    pub lattice_length: i64,
    /// Indices of the cells containing the edge; one for boundary edges.
    pub cells: Vec<usize>,
}

impl SdEdge {
    pub fn is_boundary(&self) -> bool {
        self.cells.len() < 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSubdivision {
    /// Support points lying on the lower hull, sorted.
    pub points: Vec<Exponent>,
    /// Points that are vertices of the subdivision, sorted.
    pub vertices: Vec<Exponent>,
    pub cells: Vec<Cell>,
    pub edges: Vec<SdEdge>,
    /// Corners of the Newton polygon, counterclockwise.
    pub newton_polytope: Vec<Exponent>,
    /// All terms lie on one line, so there are no 2-cells.
    pub degenerate: bool,
}

impl DualSubdivision {
    pub fn vertex_index(&self, p: Exponent) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    /// Edges of the 1-skeleton as vertex index pairs.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (self.vertex_index(e.a).unwrap(), self.vertex_index(e.b).unwrap()))
            .collect()
    }
}

fn cross(o: Exponent, a: Exponent, b: Exponent) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counterclockwise hull corners (collinear points dropped), starting at the
/// smallest point.
pub fn convex_hull(points: &[Exponent]) -> Vec<Exponent> {
    let mut pts: Vec<Exponent> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Exponent> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Exponent> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn lattice_length(a: Exponent, b: Exponent) -> i64 {
    (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs())
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn dual_subdivision(f: &TropicalPolynomial) -> Result<DualSubdivision> {
    let pts = f.support();
    if pts.len() == 1 {
        return Err(Error::Degenerate("a single term defines no curve".into()));
    }
    let height = |p: &Exponent| -f.coefficient(*p).unwrap().clone();
    let base = pts[0];
    let collinear = pts.iter().all(|&p| cross(base, pts[1], p) == 0);
    if collinear {
        return Ok(collinear_subdivision(&pts, height));
    }

    let mut cells: BTreeMap<Vec<Exponent>, Cell> = BTreeMap::new();
    for (i, j, k) in (0..pts.len()).tuple_combinations() {
        let (p, r, s) = (pts[i], pts[j], pts[k]);
        if cross(p, r, s) == 0 {
            continue;
        }
        let m = RatMatrix::from_i64(&[&[p.0, p.1, 1], &[r.0, r.1, 1], &[s.0, s.1, 1]]);
        let plane = m
            .solve(&[height(&p), height(&r), height(&s)])
            .expect("affinely independent points");
        let value = |t: &Exponent| &plane[0] * q(t.0) + &plane[1] * q(t.1) + &plane[2];
        let mut on = Vec::new();
        let mut lower = true;
        for t in &pts {
            let diff = height(t) - value(t);
            if diff.is_negative() {
                lower = false;
                break;
            }
            if diff.is_zero() {
                on.push(*t);
            }
        }
        if !lower || cells.contains_key(&on) {
            continue;
        }
        let cell = Cell {
            corners: convex_hull(&on),
            points: on.clone(),
            slope: [plane[0].clone(), plane[1].clone()],
            offset: plane[2].clone(),
        };
        cells.insert(on, cell);
    }
    let mut cells: Vec<Cell> = cells.into_values().collect();
    cells.sort_by(|a, b| {
        let mut ka = a.corners.clone();
        let mut kb = b.corners.clone();
        ka.sort_unstable();
        kb.sort_unstable();
        ka.cmp(&kb)
    });

    let mut edges: BTreeMap<(Exponent, Exponent), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let n = cell.corners.len();
        for i in 0..n {
            let (a, b) = (cell.corners[i], cell.corners[(i + 1) % n]);
            edges.entry((a.min(b), a.max(b))).or_default().push(ci);
        }
    }
    let edges: Vec<SdEdge> = edges
        .into_iter()
        .map(|((a, b), cells)| SdEdge {
            a,
            b,
            lattice_length: lattice_length(a, b),
            cells,
        })
        .collect();
    let mut points: Vec<Exponent> = cells.iter().flat_map(|c| c.points.iter().copied()).collect();
    points.sort_unstable();
    points.dedup();
    let mut vertices: Vec<Exponent> = cells.iter().flat_map(|c| c.corners.iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    Ok(DualSubdivision {
        points,
        vertices,
        cells,
        edges,
        newton_polytope: convex_hull(&pts),
        degenerate: false,
    })
}

/// Lower hull of the lifted points along the common line.
fn collinear_subdivision(pts: &[Exponent], height: impl Fn(&Exponent) -> Rational) -> DualSubdivision {
    // Points are sorted, hence monotone along the line.
    let mut hull: Vec<Exponent> = Vec::new();
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    let u = (last.0 - first.0, last.1 - first.1);
    let along = |a: &Exponent, b: &Exponent| q((b.0 - a.0) * u.0 + (b.1 - a.1) * u.1);
    for &p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // b is dropped unless it lies strictly below segment a-p.
            let lhs = (height(&b) - height(&a)) * along(&a, &p);
            let rhs = (height(&p) - height(&a)) * along(&a, &b);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let points: Vec<Exponent> = pts
        .iter()
        .copied()
        .filter(|t| {
            hull.windows(2).any(|w| {
                let (a, b) = (w[0], w[1]);
                a <= *t && *t <= b
                    && (height(t) - height(&a)) * along(&a, &b) == (height(&b) - height(&a)) * along(&a, t)
            })
        })
        .collect();
    let edges = hull
        .windows(2)
        .map(|w| SdEdge {
            a: w[0],
            b: w[1],
            lattice_length: lattice_length(w[0], w[1]),
            cells: Vec::new(),
        })
        .collect();
    DualSubdivision {
        points,
        vertices: hull.clone(),
        cells: Vec::new(),
        edges,
        newton_polytope: vec![first, last],
        degenerate: true,
    }
}
