//! Extremal decompositions by walking along edges of `P(C)` from one vertex
//! until every face is covered by some vertex support.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::balance::BalanceMatrices;
use crate::complex::Complex;
use crate::cone::{self, ExtremalPart, WeightCone};
use crate::error::{Error, Result};
use crate::exactq::{format_rational, RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<ExtremalPart>,
    /// `rank R(C_i)` for each part; extremal parts have rank `|support| - 1`.
    pub part_ranks: Vec<usize>,
    /// The edge walk got stuck and the vertex enumeration filled the gap.
    pub used_fallback: bool,
}

impl Decomposition {
    /// Uniform convex combination of the part weightings.
    pub fn covering_weighting(&self) -> Vec<Rational> {
        uniform_combination(&self.parts.iter().map(|p| p.weighting.clone()).collect::<Vec<_>>())
    }
}

fn uniform_combination(vs: &[Vec<Rational>]) -> Vec<Rational> {
    let Some(first) = vs.first() else {
        return Vec::new();
    };
    let scale = Rational::new(One::one(), vs.len().into());
    (0..first.len())
        .map(|i| vs.iter().map(|v| &v[i]).sum::<Rational>() * &scale)
        .collect()
}

fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    let total: Rational = v.iter().sum();
    v.into_iter().map(|x| x / &total).collect()
}

fn rank_of_rows(r: &RatMatrix, rows: &[usize]) -> usize {
    r.select_rows(rows).rank()
}

/// `m = |Ẽ| - rank R(C)`, the size of a decomposition that always exists.
pub fn decomposition_upper_bound(m: &BalanceMatrices) -> usize {
    m.r.rows() - m.r.rank()
}

/// Points of `ker R(C)ᵀ` vanishing on `zeros`, as vectors in `Q^Ẽ`.
fn kernel_with_zeros(cone: &WeightCone, zeros: &[usize]) -> Vec<Vec<Rational>> {
    let n = cone.dim();
    let rows: Vec<Vec<Rational>> = zeros
        .iter()
        .map(|&e| cone.kernel_basis.iter().map(|b| b[e].clone()).collect())
        .collect();
    RatMatrix::from_rows(n, rows)
        .kernel_basis()
        .into_iter()
        .map(|lambda| {
            (0..cone.num_faces)
                .map(|e| cone.kernel_basis.iter().zip(&lambda).map(|(b, l)| &b[e] * l).sum())
                .collect()
        })
        .collect()
}

/// Direction from `omega` along the edge `{x ∈ P(C) : x_J = 0}`, with zero
/// coordinate sum, nonnegative on `zeros` and positive somewhere on
/// `uncovered ∖ J`.
fn edge_direction(
    cone: &WeightCone,
    omega: &[Rational],
    zeros: &[usize],
    j: &[usize],
    uncovered: &BTreeSet<usize>,
) -> Option<Vec<Rational>> {
    let plane = kernel_with_zeros(cone, j);
    if plane.len() != 2 {
        return None;
    }
    let y = plane.into_iter().find(|y| {
        let mut pair = vec![omega.to_vec(), y.clone()];
        pair.dedup();
        crate::exactq::span_rank(omega.len(), &pair) == 2
    })?;
    let s: Rational = y.iter().sum();
    let x: Vec<Rational> = y.iter().zip(omega).map(|(a, w)| a - &s * w).collect();
    for sign in [Rational::one(), -Rational::one()] {
        let x: Vec<Rational> = x.iter().map(|v| v * &sign).collect();
        let ok_zeros = zeros.iter().all(|&i| !x[i].is_negative());
        let grows = uncovered.iter().any(|&e| !j.contains(&e) && x[e].is_positive());
        if ok_zeros && grows {
            return Some(x);
        }
    }
    None
}

fn walk(omega: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let t = omega
        .iter()
        .zip(x)
        .filter(|(_, d)| d.is_negative())
        .map(|(w, d)| w / -d)
        .min()
        .expect("zero-sum nonzero direction has a negative entry");
    omega.iter().zip(x).map(|(w, d)| w + &t * d).collect()
}

/// Extremal decomposition of a tropical variety.
pub fn decompose(c: &Complex, m: &BalanceMatrices) -> Result<Decomposition> {
    let r = &m.r;
    if r.rows() != c.num_faces() {
        return Err(Error::WrongDimension { expected: c.num_faces(), got: r.rows() });
    }
    if cone::positive_weighting(r).is_none() {
        return Err(Error::NotTropicalVariety);
    }
    let cone = WeightCone::from_r(r);
    let n = cone.dim();
    let e = cone.num_faces;
    if n == 1 {
        let part = ExtremalPart::from_vertex(normalize(cone.kernel_basis[0].clone()));
        return Ok(Decomposition {
            part_ranks: vec![rank_of_rows(r, &part.support)],
            parts: vec![part],
            used_fallback: false,
        });
    }

    let omega = cone::find_vertex(r).ok_or(Error::NotTropicalVariety)?;
    let zeros: Vec<usize> = (0..e).filter(|&i| omega[i].is_zero()).collect();
    let mut uncovered: BTreeSet<usize> = zeros.iter().copied().collect();
    let mut found = vec![omega.clone()];
    let mut used_fallback = false;

    while let Some(&first) = uncovered.iter().next() {
        let preferred = zeros.iter().copied().combinations(n - 2).filter(|j| !j.contains(&first));
        let rest = zeros.iter().copied().combinations(n - 2).filter(|j| j.contains(&first));
        let step = preferred.chain(rest).find_map(|j| {
            if uncovered.iter().all(|u| j.contains(u)) {
                return None;
            }
            edge_direction(&cone, &omega, &zeros, &j, &uncovered).map(|x| walk(&omega, &x))
        });
        match step {
            Some(v) => {
                uncovered.retain(|&i| v[i].is_zero());
                found.push(v);
            }
            None => {
                used_fallback = true;
                let all = cone::enumerate_vertices_bruteforce(r, cone::DEFAULT_LIMIT)?;
                while !uncovered.is_empty() {
                    let best = all
                        .iter()
                        .max_by_key(|v| {
                            // max_by_key keeps the last maximum; reverse ties to
                            // prefer the first vertex in sorted order.
                            let gain = uncovered.iter().filter(|&&i| !v[i].is_zero()).count();
                            (gain, std::cmp::Reverse(v.as_slice()))
                        })
                        .filter(|v| uncovered.iter().any(|&i| !v[i].is_zero()))
                        .ok_or(Error::NotTropicalVariety)?;
                    uncovered.retain(|&i| best[i].is_zero());
                    found.push(best.clone());
                }
            }
        }
    }

    let mut parts = prune(found.into_iter().map(ExtremalPart::from_vertex).collect());
    if parts.len() > cover_bound(n) {
        if let Some(smaller) = small_cover(r, e, cover_bound(n)) {
            parts = smaller;
        }
    }
    Ok(Decomposition {
        part_ranks: parts.iter().map(|p| rank_of_rows(r, &p.support)).collect(),
        parts,
        used_fallback,
    })
}

/// `⌊(n-1)/2⌋ + 1`: when the decomposition is not unique, one of at most
/// this many parts exists.
pub fn cover_bound(n: usize) -> usize {
    n.saturating_sub(1) / 2 + 1
}

/// First set of at most `bound` vertices, in lexicographic order of vertex
/// index sets, whose supports cover every face. Only tried when `P(C)` is
/// not a simplex and its vertices are cheap to list.
fn small_cover(r: &RatMatrix, e: usize, bound: usize) -> Option<Vec<ExtremalPart>> {
    let vs = cone::enumerate_vertices_bruteforce(r, cone::DEFAULT_LIMIT).ok()?;
    if cone::is_simplex(&vs) {
        return None;
    }
    (1..=bound).find_map(|size| {
        (0..vs.len()).combinations(size).find_map(|set| {
            let covers = (0..e).all(|i| set.iter().any(|&v| !vs[v][i].is_zero()));
            covers.then(|| set.iter().map(|&v| ExtremalPart::from_vertex(vs[v].clone())).collect())
        })
    })
}

/// Decomposition read off the full vertex list of `P(C)`: every vertex when
/// `P(C)` is a simplex, otherwise the first smallest covering vertex set.
pub fn decompose_oracle(c: &Complex, m: &BalanceMatrices, limit: usize) -> Result<Decomposition> {
    let r = &m.r;
    if r.rows() != c.num_faces() {
        return Err(Error::WrongDimension { expected: c.num_faces(), got: r.rows() });
    }
    if cone::positive_weighting(r).is_none() {
        return Err(Error::NotTropicalVariety);
    }
    let vs = cone::enumerate_vertices_bruteforce(r, limit)?;
    let parts: Vec<ExtremalPart> = if cone::is_simplex(&vs) {
        vs.into_iter().map(ExtremalPart::from_vertex).collect()
    } else {
        let e = r.rows();
        (1..=vs.len())
            .find_map(|size| {
                (0..vs.len()).combinations(size).find(|set| {
                    (0..e).all(|i| set.iter().any(|&v| !vs[v][i].is_zero()))
                })
            })
            .map(|set| set.iter().map(|&v| ExtremalPart::from_vertex(vs[v].clone())).collect())
            .ok_or(Error::NotTropicalVariety)?
    };
    Ok(Decomposition {
        part_ranks: parts.iter().map(|p| rank_of_rows(r, &p.support)).collect(),
        parts,
        used_fallback: true,
    })
}

/// Drops, in order, every part whose support is covered by the others.
fn prune(mut parts: Vec<ExtremalPart>) -> Vec<ExtremalPart> {
    let mut i = 0;
    while i < parts.len() {
        let others: BTreeSet<usize> = parts
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .flat_map(|(_, p)| p.support.iter().copied())
            .collect();
        if parts.len() > 1 && parts[i].support.iter().all(|s| others.contains(s)) {
            parts.remove(i);
        } else {
            i += 1;
        }
    }
    parts
}

/// All vertices of `P(C)` when it is a simplex, which is exactly when the
/// extremal decomposition is unique.
pub fn unique_decomposition(m: &BalanceMatrices, limit: usize) -> Result<Option<Vec<ExtremalPart>>> {
    let vs = cone::enumerate_vertices_bruteforce(&m.r, limit)?;
    if !cone::is_simplex(&vs) {
        return Ok(None);
    }
    Ok(Some(vs.into_iter().map(ExtremalPart::from_vertex).collect()))
}

/// Every part is a vertex of `P(C)` and their uniform combination is
/// strictly positive.
pub fn verify_decomposition(m: &BalanceMatrices, parts: &[Vec<Rational>]) -> bool {
    let cone = WeightCone::new(m);
    !parts.is_empty()
        && parts.iter().all(|p| cone.is_vertex(p))
        && uniform_combination(parts).iter().all(|v| v.is_positive())
}

#[derive(Clone, Debug, Serialize)]
pub struct PartJson {
    pub support: Vec<String>,
    pub weighting: std::collections::BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub parts: Vec<PartJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique: Option<bool>,
    pub bound_m: usize,
}

pub fn part_json(c: &Complex, p: &ExtremalPart) -> PartJson {
    PartJson {
        support: p.support.iter().map(|&i| c.faces()[i].id.clone()).collect(),
        weighting: p
            .support
            .iter()
            .map(|&i| (c.faces()[i].id.clone(), format_rational(&p.weighting[i])))
            .collect(),
    }
}

pub fn to_json(c: &Complex, d: &[ExtremalPart], unique: Option<bool>, bound_m: usize) -> DecompositionJson {
    DecompositionJson {
        parts: d.iter().map(|p| part_json(c, p)).collect(),
        unique,
        bound_m,
    }
}
