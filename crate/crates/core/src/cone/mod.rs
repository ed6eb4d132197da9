//! The cone `W(C)` of nonnegative balanced weightings and the polytope
//! `P(C) = {x ≥ 0 : xᵀR(C) = 0, Σx = 1}`.

mod simplex;

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::balance::BalanceMatrices;
use crate::error::{Error, Result};
use crate::exactq::{span_rank, RatMatrix, Rational};

pub use simplex::{feasible_point, maximize, LpOutcome};

/// Default cap on candidate active sets for [`enumerate_vertices_bruteforce`].
pub const DEFAULT_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCone {
    /// Reduced echelon basis of the left kernel of `R(C)`.
    pub kernel_basis: Vec<Vec<Rational>>,
    pub num_faces: usize,
}

impl WeightCone {
    pub fn new(m: &BalanceMatrices) -> Self {
        Self::from_r(&m.r)
    }

    pub fn from_r(r: &RatMatrix) -> Self {
        Self {
            kernel_basis: r.left_kernel_basis(),
            num_faces: r.rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Membership in `P(C)`.
    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.num_faces
            && x.iter().all(|v| !v.is_negative())
            && x.iter().sum::<Rational>() == Rational::one()
            && self.in_span(x)
    }

    fn in_span(&self, x: &[Rational]) -> bool {
        let mut vs = self.kernel_basis.clone();
        vs.push(x.to_vec());
        span_rank(self.num_faces, &vs) == self.dim()
    }

    /// `{y ∈ ker R(C)ᵀ : y_e = 0 for e ∈ zeros}` has dimension one.
    fn zero_set_pins_point(&self, zeros: &[usize]) -> bool {
        let n = self.dim();
        if n == 0 {
            return false;
        }
        let rows: Vec<Vec<Rational>> = zeros
            .iter()
            .map(|&e| self.kernel_basis.iter().map(|b| b[e].clone()).collect())
            .collect();
        n - span_rank(n, &rows) == 1
    }

    /// `x ∈ P(C)` and no other point of `P(C)` shares its zero set.
    pub fn is_vertex(&self, x: &[Rational]) -> bool {
        if !self.contains(x) {
            return false;
        }
        let zeros: Vec<usize> = (0..x.len()).filter(|&e| x[e].is_zero()).collect();
        self.zero_set_pins_point(&zeros)
    }
}

/// Equality system `[R(C)ᵀ; 1ᵀ] x = (0, 1)` of `P(C)`.
fn polytope_system(r: &RatMatrix) -> (RatMatrix, Vec<Rational>) {
    let n = r.rows();
    let ones = RatMatrix::from_rows(n, vec![vec![Rational::one(); n]]);
    let a = r.transpose().vstack(&ones);
    let mut b = vec![Rational::zero(); a.rows()];
    b[a.rows() - 1] = Rational::one();
    (a, b)
}

/// A vertex of `P(C)` maximizing `Σ (i + 1) x_i`, or `None` when `P(C)` is
/// empty.
pub fn find_vertex(r: &RatMatrix) -> Option<Vec<Rational>> {
    let (a, b) = polytope_system(r);
    let c: Vec<Rational> = (1..=r.rows()).map(|i| Rational::from_integer(i.into())).collect();
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal(x) => Some(x),
        _ => None,
    }
}

/// A balanced weighting with every entry at least one, if any strictly
/// positive balanced weighting exists.
pub fn positive_weighting(r: &RatMatrix) -> Option<Vec<Rational>> {
    if r.rows() == 0 {
        return None;
    }
    // x = y + 1 with y ≥ 0 and Rᵀ y = -Rᵀ 1.
    let rt = r.transpose();
    let ones = vec![Rational::one(); r.rows()];
    let b: Vec<Rational> = rt.mul_vec(&ones).into_iter().map(|v| -v).collect();
    let y = feasible_point(&rt, &b)?;
    Some(y.into_iter().map(|v| v + Rational::one()).collect())
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Every vertex of `P(C)`, sorted lexicographically. Each vertex is the
/// unique point of `P(C)` vanishing on some set of `dim - 1` coordinates
/// whose constraints are independent on the kernel, so all such sets are
/// tried. Fails once the number of sets passes `limit`.
pub fn enumerate_vertices_bruteforce(r: &RatMatrix, limit: usize) -> Result<Vec<Vec<Rational>>> {
    let cone = WeightCone::from_r(r);
    let n = cone.dim();
    let e = cone.num_faces;
    if n == 0 {
        return Ok(Vec::new());
    }
    let candidates = binomial(e, n - 1).unwrap_or(usize::MAX);
    if candidates > limit {
        return Err(Error::LimitExceeded(limit));
    }
    // Row e of `m` expresses coordinate e in kernel coordinates.
    let m: Vec<Vec<Rational>> = (0..e)
        .map(|i| cone.kernel_basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    let found: BTreeSet<Vec<Rational>> = (0..e)
        .combinations(n - 1)
        .par_bridge()
        .filter_map(|zeros| {
            let rows: Vec<Vec<Rational>> = zeros.iter().map(|&i| m[i].clone()).collect();
            let ker = RatMatrix::from_rows(n, rows).kernel_basis();
            if ker.len() != 1 {
                return None;
            }
            let lambda = &ker[0];
            let x: Vec<Rational> = m
                .iter()
                .map(|row| row.iter().zip(lambda).map(|(a, b)| a * b).sum())
                .collect();
            let total: Rational = x.iter().sum();
            if total.is_zero() {
                return None;
            }
            let x: Vec<Rational> = x.into_iter().map(|v| v / &total).collect();
            x.iter().all(|v| !v.is_negative()).then_some(x)
        })
        .collect();
    Ok(found.into_iter().collect())
}

/// A vertex of `P(C)` with its support as face indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalPart {
    pub support: Vec<usize>,
    pub weighting: Vec<Rational>,
}

impl ExtremalPart {
    pub fn from_vertex(weighting: Vec<Rational>) -> Self {
        let support = (0..weighting.len()).filter(|&i| !weighting[i].is_zero()).collect();
        Self { support, weighting }
    }
}

/// One entry per vertex of `P(C)`; the supports are exactly the extremal
/// subvarieties of the complex.
pub fn extremal_subvarieties(r: &RatMatrix, limit: usize) -> Result<Vec<ExtremalPart>> {
    Ok(enumerate_vertices_bruteforce(r, limit)?
        .into_iter()
        .map(ExtremalPart::from_vertex)
        .collect())
}

/// Vertex count equals `dim P(C) + 1`.
pub fn is_simplex(vertices: &[Vec<Rational>]) -> bool {
    match vertices.first() {
        None => false,
        Some(v) => span_rank(v.len(), vertices) == vertices.len(),
    }
}

/// `dim P(C)` from its vertices.
pub fn polytope_dim(vertices: &[Vec<Rational>]) -> Option<usize> {
    let v = vertices.first()?;
    Some(span_rank(v.len(), vertices) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{frac, rat};

    fn ex56_r() -> RatMatrix {
        RatMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]])
    }

    #[test]
    fn six_ray_fan_polytope() {
        let r = ex56_r();
        let vs = enumerate_vertices_bruteforce(&r, DEFAULT_LIMIT).unwrap();
        assert_eq!(vs.len(), 5);
        assert!(!is_simplex(&vs));
        assert_eq!(polytope_dim(&vs), Some(3));
        let v = find_vertex(&r).unwrap();
        assert!(vs.contains(&v));
        assert!(WeightCone::from_r(&r).is_vertex(&v));
        assert!(positive_weighting(&r).is_some());
    }

    #[test]
    fn single_ray_is_empty() {
        let r = RatMatrix::from_i64(&[&[1, 0]]);
        assert_eq!(find_vertex(&r), None);
        assert_eq!(positive_weighting(&r), None);
        assert!(enumerate_vertices_bruteforce(&r, 10).unwrap().is_empty());
    }

    #[test]
    fn line_has_one_vertex() {
        let r = RatMatrix::from_i64(&[&[-1, 0], &[0, -1], &[1, 1]]);
        let vs = enumerate_vertices_bruteforce(&r, 10).unwrap();
        assert_eq!(vs, vec![vec![frac(1, 3); 3]]);
        assert!(is_simplex(&vs));
        assert_eq!(find_vertex(&r), Some(vec![frac(1, 3); 3]));
        assert!(!WeightCone::from_r(&r).contains(&[rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            enumerate_vertices_bruteforce(&ex56_r(), 3),
            Err(Error::LimitExceeded(3))
        ));
    }
}
