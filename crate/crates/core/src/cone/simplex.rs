//! Exact two-phase simplex method on `A x = b, x ≥ 0` with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::exactq::{RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    /// An optimal basic feasible solution.
    Optimal(Vec<Rational>),
}

struct Tableau {
    /// `m × (n + 1)`; the last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for v in self.t[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `c·x` over the columns in `allowed`, starting from the
    /// current feasible basis. Returns false when unbounded.
    fn optimize(&mut self, c: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.n).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = c[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !c[b].is_zero() && !self.t[i][j].is_zero() {
                        reduced -= &c[b] * &self.t[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][self.n] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.t[i][self.n].clone();
            }
        }
        x
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &RatMatrix, b: &[Rational], c: &[Rational]) -> LpOutcome {
    assert_eq!(a.rows(), b.len());
    assert_eq!(a.cols(), c.len());
    let n = a.cols();
    let Some((rows, rhs)) = independent_rows(a, b) else {
        return LpOutcome::Infeasible;
    };
    let m = rows.len();
    let width = n + m;
    let mut t = Vec::with_capacity(m);
    for (i, (row, r)) in rows.into_iter().zip(rhs).enumerate() {
        let flip = r.is_negative();
        let mut line: Vec<Rational> = row
            .into_iter()
            .map(|v| if flip { -v } else { v })
            .collect();
        line.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        line.push(if flip { -r } else { r });
        t.push(line);
    }
    let mut tab = Tableau {
        t,
        basis: (n..width).collect(),
        n: width,
    };

    let mut phase1 = vec![Rational::zero(); width];
    for v in phase1.iter_mut().skip(n) {
        *v = -Rational::one();
    }
    tab.optimize(&phase1, &vec![true; width]);
    if tab.basis.iter().enumerate().any(|(i, &bv)| bv >= n && !tab.t[i][width].is_zero()) {
        return LpOutcome::Infeasible;
    }
    // Drive the remaining zero-level artificials out; rows have full rank so
    // a real column with a nonzero entry always exists.
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, col);
            }
        }
    }

    let mut objective = c.to_vec();
    objective.resize(width, Rational::zero());
    let allowed: Vec<bool> = (0..width).map(|j| j < n).collect();
    if !tab.optimize(&objective, &allowed) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal(tab.solution(n))
}

/// A basic feasible point of `a x = b, x ≥ 0`.
pub fn feasible_point(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    match maximize(a, b, &vec![Rational::zero(); a.cols()]) {
        LpOutcome::Optimal(x) => Some(x),
        _ => None,
    }
}

/// Row-reduces `[a | b]` and drops dependent rows; `None` if inconsistent.
fn independent_rows(a: &RatMatrix, b: &[Rational]) -> Option<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let rows = (0..pivots.len()).map(|i| r.row(i)[..n].to_vec()).collect();
    let rhs = (0..pivots.len()).map(|i| r.get(i, n).clone()).collect();
    Some((rows, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{frac, rat};

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = RatMatrix::from_i64(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let out = maximize(&a, &[rat(4), rat(6)], &[rat(1), rat(1), rat(0), rat(0)]);
        assert_eq!(out, LpOutcome::Optimal(vec![frac(8, 5), frac(6, 5), rat(0), rat(0)]));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = RatMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(maximize(&a, &[rat(-1)], &[rat(0), rat(0)]), LpOutcome::Infeasible);
        let a = RatMatrix::from_i64(&[&[1, -1]]);
        assert_eq!(maximize(&a, &[rat(0)], &[rat(1), rat(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = RatMatrix::from_i64(&[&[1, 1, 1], &[2, 2, 2], &[1, 0, 0]]);
        let out = maximize(&a, &[rat(1), rat(2), frac(1, 3)], &[rat(0), rat(1), rat(0)]);
        assert_eq!(out, LpOutcome::Optimal(vec![frac(1, 3), frac(2, 3), rat(0)]));
    }
}
