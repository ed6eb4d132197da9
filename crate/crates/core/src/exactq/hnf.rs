//! Integer matrices, Hermite normal form and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{bareiss_rank, RatMatrix};
use super::rational::{from_int, Rational};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.cols,
            (0..self.rows)
                .map(|i| self.row(i).iter().map(from_int).collect::<Vec<Rational>>())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        bareiss_rank(&mut a, self.cols)
    }

    /// Determinant of a square matrix by Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.cols,
            (0..self.rows)
                .filter(|&i| self.row(i).iter().any(|x| !x.is_zero()))
                .map(|i| self.row(i).to_vec())
                .collect(),
        )
    }
}

/// Result of [`hnf`]: `transform * input == hermite`, `transform` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub hermite: IntMatrix,
    pub transform: IntMatrix,
    /// Number of nonzero rows of `hermite`.
    pub rank: usize,
}

/// Row-style Hermite normal form: nonzero rows on top in echelon form, each
/// pivot positive, entries above a pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> Hermite {
    let rows = m.rows;
    let cols = m.cols;
    let mut h = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            let egcd = h[r][c].extended_gcd(&h[i][c]);
            let (g, s, t) = (egcd.gcd, egcd.x, egcd.y);
            let a = &h[r][c] / &g;
            let b = &h[i][c] / &g;
            combine_rows(&mut h, r, i, &s, &t, &a, &b);
            combine_rows(&mut u, r, i, &s, &t, &a, &b);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h[r]);
            negate_row(&mut u[r]);
        }
        for k in 0..r {
            let q = h[k][c].div_floor(&h[r][c]);
            if q.is_zero() {
                continue;
            }
            sub_multiple(&mut h, k, r, &q);
            sub_multiple(&mut u, k, r, &q);
        }
        r += 1;
    }
    Hermite {
        hermite: IntMatrix::from_rows(cols, h),
        transform: IntMatrix::from_rows(rows, u),
        rank: r,
    }
}

/// Replaces rows `(r, i)` by `(s*r + t*i, -b*r + a*i)`; unimodular when
/// `s*a + t*b = 1`.
fn combine_rows(
    m: &mut [Vec<BigInt>],
    r: usize,
    i: usize,
    s: &BigInt,
    t: &BigInt,
    a: &BigInt,
    b: &BigInt,
) {
    let n = m[r].len();
    for j in 0..n {
        let x = m[r][j].clone();
        let y = m[i][j].clone();
        m[r][j] = s * &x + t * &y;
        m[i][j] = a * &y - b * &x;
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn sub_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let n = m[target].len();
    for j in 0..n {
        let v = q * &m[source][j];
        m[target][j] -= v;
    }
}

/// Lattice basis (rows) of `{x ∈ Z^cols : m x = 0}`, in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let Hermite {
        transform, rank, ..
    } = hnf(&m.transpose());
    let cols = m.cols;
    let basis: Vec<Vec<BigInt>> = (rank..cols).map(|i| transform.row(i).to_vec()).collect();
    let basis = IntMatrix::from_rows(cols, basis);
    if basis.rows() == 0 {
        return basis;
    }
    hnf(&basis).hermite.nonzero_rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_two_is_already_reduced() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let h = hnf(&m);
        assert_eq!(h.hermite, m);
        assert_eq!(h.transform, IntMatrix::identity(2));
    }

    #[test]
    fn single_row_keeps_content() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let h = hnf(&m);
        assert_eq!(h.hermite, m);
        assert_eq!(h.rank, 1);
    }

    #[test]
    fn negative_pivot_is_flipped() {
        let m = IntMatrix::from_i64(&[&[-3, 1]]);
        let h = hnf(&m);
        assert_eq!(h.hermite, IntMatrix::from_i64(&[&[3, -1]]));
        assert_eq!(h.transform.mul(&m), h.hermite);
    }

    #[test]
    fn integer_kernel_of_a_line() {
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k.rows(), 2);
        let m = IntMatrix::from_i64(&[&[1, 1, 1]]);
        assert!(m.mul(&k.transpose()).to_rows().iter().flatten().all(Zero::is_zero));
        // Saturated: the 2x2 minors have gcd 1.
        let rat = k.to_rational();
        assert_eq!(rat.rank(), 2);
    }

    #[test]
    fn kernel_of_empty_matrix_is_everything() {
        let k = integer_kernel(&IntMatrix::zeros(0, 3));
        assert_eq!(k, IntMatrix::identity(3));
    }

    #[test]
    fn determinant() {
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[3, 4]]).det(), BigInt::from(-2));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(IntMatrix::identity(0).det(), BigInt::one());
    }
}
