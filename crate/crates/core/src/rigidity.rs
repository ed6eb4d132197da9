//! Bar-and-joint frameworks: rigidity matrices, infinitesimal and direction
//! rigidity, and the (2,3) pebble game.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{
    format_vec, from_int, integer_kernel, parse_rational, span_rank, IntMatrix, RatMatrix,
    Rational,
};

/// A graph with a realisation in `Q^d`. Vertices are kept in sorted id
/// order and edges as sorted index pairs in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framework {
    pub dim: usize,
    pub ids: Vec<String>,
    pub points: Vec<Vec<Rational>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FrameworkJson {
    pub dim: usize,
    pub vertices: BTreeMap<String, Vec<serde_json::Value>>,
    pub edges: Vec<[String; 2]>,
}

fn json_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
    }
}

impl Framework {
    pub fn new(dim: usize, vertices: Vec<(String, Vec<Rational>)>, edges: &[(String, String)]) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        if vertices.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("duplicate vertex id".into()));
        }
        if let Some((id, _)) = vertices.iter().find(|(_, p)| p.len() != dim) {
            return Err(Error::InvalidInput(format!("vertex {id} needs {dim} coordinates")));
        }
        let (ids, points): (Vec<String>, Vec<Vec<Rational>>) = vertices.into_iter().unzip();
        let index = |id: &str| {
            ids.binary_search_by(|x| x.as_str().cmp(id))
                .map_err(|_| Error::InvalidInput(format!("edge uses unknown vertex {id}")))
        };
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let (a, b) = (index(u)?, index(v)?);
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInput(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(Self {
            dim,
            ids,
            points,
            edges: set.into_iter().collect(),
        })
    }

    pub fn from_json(j: &FrameworkJson) -> Result<Self> {
        let vertices = j
            .vertices
            .iter()
            .map(|(id, p)| Ok((id.clone(), p.iter().map(json_rational).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        let edges: Vec<(String, String)> = j.edges.iter().map(|[u, v]| (u.clone(), v.clone())).collect();
        Self::new(j.dim, vertices, &edges)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> FrameworkJson {
        FrameworkJson {
            dim: self.dim,
            vertices: self
                .ids
                .iter()
                .zip(&self.points)
                .map(|(id, p)| (id.clone(), format_vec(p).into_iter().map(serde_json::Value::String).collect()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.ids[u].clone(), self.ids[v].clone()])
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    /// Same graph, new positions (in vertex order).
    pub fn with_points(&self, points: Vec<Vec<Rational>>) -> Self {
        Self {
            dim: points.first().map_or(self.dim, Vec::len),
            ids: self.ids.clone(),
            points,
            edges: self.edges.clone(),
        }
    }

    /// Dimension of the affine span of the points.
    pub fn affine_dim(&self) -> usize {
        let Some(p0) = self.points.first() else {
            return 0;
        };
        let diffs: Vec<Vec<Rational>> = self
            .points
            .iter()
            .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        span_rank(self.dim, &diffs)
    }

    fn is_complete(&self) -> bool {
        let n = self.num_vertices();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    fn edge_vector(&self, e: usize) -> Vec<Rational> {
        let (u, v) = self.edges[e];
        self.points[u].iter().zip(&self.points[v]).map(|(a, b)| a - b).collect()
    }
}

/// `|E| × d|V|`; row `uv` holds `p(u) - p(v)` in block `u` and
/// `p(v) - p(u)` in block `v`.
pub fn rigidity_matrix(fw: &Framework) -> RatMatrix {
    let d = fw.dim;
    let mut m = RatMatrix::zeros(fw.edges.len(), d * fw.num_vertices());
    for (row, &(u, v)) in fw.edges.iter().enumerate() {
        for (k, x) in fw.edge_vector(row).into_iter().enumerate() {
            m.set(row, u * d + k, x.clone());
            m.set(row, v * d + k, -x);
        }
    }
    m
}

/// Translations followed by the flexes `(M p(v))_v` for the skew basis
/// matrices `M = E_ij - E_ji`.
pub fn trivial_flexes(fw: &Framework) -> Vec<Vec<Rational>> {
    let d = fw.dim;
    let n = fw.num_vertices();
    let mut out = Vec::new();
    for i in 0..d {
        let mut f = vec![Rational::zero(); d * n];
        for v in 0..n {
            f[v * d + i] = Rational::one();
        }
        out.push(f);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut f = vec![Rational::zero(); d * n];
            for (v, p) in fw.points.iter().enumerate() {
                f[v * d + i] = p[j].clone();
                f[v * d + j] = -p[i].clone();
            }
            out.push(f);
        }
    }
    out
}

/// Translations and the scaling flex `p` itself.
pub fn homothety_space(fw: &Framework) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = trivial_flexes(fw).into_iter().take(fw.dim).collect();
    out.push(fw.points.iter().flatten().cloned().collect());
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityCertificate {
    pub rigid: bool,
    pub rank: usize,
    pub kernel_dim: usize,
    pub trivial_dim: usize,
    pub simplex: bool,
}

pub fn is_infinitesimally_rigid(fw: &Framework) -> RigidityCertificate {
    let m = rigidity_matrix(fw);
    let rank = m.rank();
    let kernel_dim = m.cols() - rank;
    let trivial_dim = span_rank(m.cols(), &trivial_flexes(fw));
    let simplex = fw.is_complete() && fw.num_vertices() <= fw.dim + 1;
    RigidityCertificate {
        rigid: simplex || kernel_dim == trivial_dim,
        rank,
        kernel_dim,
        trivial_dim,
        simplex,
    }
}

/// Basis of `C(G,p)`: realisations whose edges are parallel to those of `p`.
pub fn direction_space(fw: &Framework) -> Result<Vec<Vec<Rational>>> {
    let d = fw.dim;
    let n = fw.num_vertices();
    let mut rows = Vec::new();
    for (e, &(u, v)) in fw.edges.iter().enumerate() {
        let dir = fw.edge_vector(e);
        if dir.iter().all(Zero::is_zero) {
            return Err(Error::CoincidentEndpoints {
                u: fw.ids[u].clone(),
                v: fw.ids[v].clone(),
            });
        }
        let ints = crate::exactq::primitive_integer(&dir);
        for normal in integer_kernel(&IntMatrix::from_rows(d, vec![ints])).to_rows() {
            let mut row = vec![Rational::zero(); d * n];
            for (k, x) in normal.iter().enumerate() {
                row[u * d + k] = from_int(x);
                row[v * d + k] = -from_int(x);
            }
            rows.push(row);
        }
    }
    Ok(RatMatrix::from_rows(d * n, rows).kernel_basis())
}

pub fn is_direction_rigid(fw: &Framework) -> Result<bool> {
    let space = direction_space(fw)?;
    Ok(fw.num_vertices() <= 1 || (fw.affine_dim() > 0 && space.len() == fw.dim + 1))
}

/// Rotation by a quarter turn clockwise, `(x, y) ↦ (y, -x)`.
pub fn perp(fw: &Framework) -> Result<Framework> {
    if fw.dim != 2 {
        return Err(Error::WrongDimension { expected: 2, got: fw.dim });
    }
    Ok(fw.with_points(fw.points.iter().map(|p| vec![p[1].clone(), -p[0].clone()]).collect()))
}

/// Outcome of the (2,3) pebble game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PebbleResult {
    pub rigid: bool,
    /// Indices of a maximal independent edge set; spanning and (2,3)-tight
    /// when `rigid`.
    pub independent: Vec<usize>,
}

struct Pebbles {
    free: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl Pebbles {
    /// Moves a free pebble to `x` along reversed out-edges without touching
    /// the pebbles on `x` or `keep`.
    fn fetch(&mut self, x: usize, keep: usize) -> bool {
        let n = self.free.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[x] = true;
        seen[keep] = true;
        let mut stack = vec![x];
        while let Some(a) = stack.pop() {
            for i in 0..self.out[a].len() {
                let b = self.out[a][i];
                if seen[b] {
                    continue;
                }
                seen[b] = true;
                parent[b] = a;
                if self.free[b] > 0 {
                    self.free[b] -= 1;
                    self.free[x] += 1;
                    let mut cur = b;
                    while cur != x {
                        let p = parent[cur];
                        let pos = self.out[p].iter().position(|&t| t == cur).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    return true;
                }
                stack.push(b);
            }
        }
        false
    }
}

/// The (2,3) pebble game on a simple graph with `n` vertices.
pub fn pebble_game_23(n: usize, edges: &[(usize, usize)]) -> PebbleResult {
    let mut g = Pebbles {
        free: vec![2; n],
        out: vec![Vec::new(); n],
    };
    let mut independent = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        while g.free[u] + g.free[v] < 4 {
            if !(g.free[u] < 2 && g.fetch(u, v)) && !(g.free[v] < 2 && g.fetch(v, u)) {
                break;
            }
        }
        if g.free[u] + g.free[v] < 4 {
            continue;
        }
        g.free[u] -= 1;
        g.out[u].push(v);
        independent.push(i);
    }
    let rigid = n <= 1 || independent.len() == 2 * n - 3;
    PebbleResult { rigid, independent }
}

/// Pebble game on the graph of a framework.
pub fn pebble_game_framework(fw: &Framework) -> PebbleResult {
    pebble_game_23(fw.num_vertices(), &fw.edges)
}

/// Framework with integer positions given in vertex order.
pub fn framework_from_integer_points(
    ids: Vec<String>,
    points: Vec<Vec<BigInt>>,
    edges: &[(usize, usize)],
) -> Result<Framework> {
    let dim = points.first().map_or(0, Vec::len);
    let edge_ids: Vec<(String, String)> = edges.iter().map(|&(u, v)| (ids[u].clone(), ids[v].clone())).collect();
    let vertices = ids
        .into_iter()
        .zip(points)
        .map(|(id, p)| (id, p.iter().map(from_int).collect()))
        .collect();
    Framework::new(dim, vertices, &edge_ids)
}
