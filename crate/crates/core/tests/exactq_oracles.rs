//! Linear algebra and LP results checked against brute-force oracles.

mod common;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use tropex::cone::{maximize, LpOutcome};
use tropex::exactq::{hnf, integer_kernel, rat, IntMatrix, RatMatrix, Rational};

fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rat(1);
    }
    // Leibniz expansion; the matrices here are at most 4x4.
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).tuple_combinations().filter(|&(i, j)| p[i] > p[j]).count();
            let prod: Rational = (0..n).map(|i| m[i][p[i]].clone()).product();
            if inversions % 2 == 0 { prod } else { -prod }
        })
        .sum()
}

fn rank_by_minors(m: &RatMatrix) -> usize {
    let (r, c) = (m.rows(), m.cols());
    for k in (1..=r.min(c)).rev() {
        for rows in (0..r).combinations(k) {
            for cols in (0..c).combinations(k) {
                let sub: Vec<Vec<Rational>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn small_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn to_rat(rows: &[Vec<i64>]) -> RatMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RatMatrix::from_i64(&refs)
}

fn to_int(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

/// `v` lies in the row lattice of a nonsingular square `m`.
fn in_row_lattice(m: &RatMatrix, v: &[Rational]) -> bool {
    match m.transpose().solve(v) {
        Some(x) => x.iter().all(|q| q.is_integer()),
        None => false,
    }
}

/// Hermite form of a nonsingular 2x2 matrix from lattice invariants: the
/// first pivot is the gcd of the first column, the second is |det| over it,
/// and the off-diagonal entry is the unique reduced value in the lattice.
fn hnf_2x2_oracle(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let a = num_integer::gcd(m[0][0], m[1][0]);
    let d = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
    let c = d / a;
    let r = to_rat(&[m[0].to_vec(), m[1].to_vec()]);
    let b = (0..c).find(|&b| in_row_lattice(&r, &[rat(a), rat(b)])).expect("some residue works");
    [[a, b], [0, c]]
}

#[test]
fn hnf_example() {
    let h = hnf(&IntMatrix::from_i64(&[&[1, 2], &[3, 4]]));
    assert_eq!(h.hermite, IntMatrix::from_i64(&[&[1, 0], &[0, 2]]));
    assert_eq!(hnf_2x2_oracle([[1, 2], [3, 4]]), [[1, 0], [0, 2]]);
}

#[test]
fn rank_example() {
    assert_eq!(RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
}

proptest! {
    #![proptest_config(common::proptest_config(256))]

    #[test]
    fn hnf_matches_oracle_2x2(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, d in -9i64..=9) {
        prop_assume!(a * d - b * c != 0);
        let h = hnf(&IntMatrix::from_i64(&[&[a, b], &[c, d]]));
        let [[x, y], [z, w]] = hnf_2x2_oracle([[a, b], [c, d]]);
        prop_assert_eq!(h.hermite, IntMatrix::from_i64(&[&[x, y], &[z, w]]));
    }

    #[test]
    fn hnf_transform_unimodular(rows in small_matrix(4, 4)) {
        let m = to_int(&rows);
        let h = hnf(&m);
        prop_assert_eq!(h.transform.mul(&m), h.hermite.clone());
        prop_assert_eq!(h.transform.det().abs(), BigInt::from(1));
        prop_assert_eq!(h.rank, rank_by_minors(&to_rat(&rows)));
    }

    #[test]
    fn rank_matches_minors(rows in small_matrix(4, 4)) {
        let m = to_rat(&rows);
        prop_assert_eq!(m.rank(), rank_by_minors(&m));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn kernel_is_exact(rows in small_matrix(4, 5)) {
        let m = to_rat(&rows);
        let k = m.kernel_basis();
        prop_assert_eq!(k.len(), m.cols() - rank_by_minors(&m));
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        for v in m.left_kernel_basis() {
            prop_assert!(m.left_mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn integer_kernel_is_saturated(rows in small_matrix(2, 4)) {
        let m = to_int(&rows);
        let k = integer_kernel(&m);
        let mr = to_rat(&rows);
        prop_assert_eq!(k.rows(), mr.cols() - mr.rank());
        if k.rows() == 0 {
            return Ok(());
        }
        let kr = k.to_rational();
        // Every small integer kernel vector is an integer combination.
        for v in (0..mr.cols()).map(|_| -2i64..=2).multi_cartesian_product() {
            let vr: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
            if !mr.mul_vec(&vr).iter().all(Zero::is_zero) {
                continue;
            }
            let coeffs = kr.transpose().solve(&vr).expect("in the span");
            prop_assert!(coeffs.iter().all(|q| q.is_integer()), "{:?}", v);
        }
    }

    #[test]
    fn solve_solves(rows in small_matrix(4, 4), x in prop::collection::vec(-5i64..=5, 4)) {
        let m = to_rat(&rows);
        let x: Vec<Rational> = x[..m.cols()].iter().map(|&v| rat(v)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    /// Bounded LPs `A x = b, Σx = s, x ≥ 0`, against the best basic
    /// feasible solution found by trying every column basis.
    #[test]
    fn simplex_matches_basis_enumeration(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=2),
        x0 in prop::collection::vec(0i64..=3, 5),
        c in prop::collection::vec(-4i64..=4, 5),
    ) {
        let n = 5;
        let mut a_rows: Vec<Vec<i64>> = rows.clone();
        a_rows.push(vec![1; n]);
        let a = to_rat(&a_rows);
        let x0: Vec<Rational> = x0.iter().map(|&v| rat(v)).collect();
        let b = a.mul_vec(&x0);
        let c: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
        let obj = |x: &[Rational]| -> Rational { x.iter().zip(&c).map(|(p, q)| p * q).sum() };

        let r = a.rank();
        let mut best: Option<Rational> = None;
        for cols in (0..n).combinations(r) {
            let sub = RatMatrix::from_rows(r, (0..a.rows()).map(|i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect());
            if sub.rank() < r {
                continue;
            }
            let Some(xb) = sub.solve(&b) else { continue };
            if xb.iter().any(|v| v.is_negative()) {
                continue;
            }
            let mut x = vec![rat(0); n];
            for (&j, v) in cols.iter().zip(xb) {
                x[j] = v;
            }
            let val = obj(&x);
            if best.as_ref().is_none_or(|bv| val > *bv) {
                best = Some(val);
            }
        }
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal(x) => {
                prop_assert_eq!(a.mul_vec(&x), b.clone());
                prop_assert!(x.iter().all(|v| !v.is_negative()));
                prop_assert_eq!(Some(obj(&x)), best);
            }
            other => prop_assert!(false, "expected optimum, got {:?}", other),
        }
    }
}
