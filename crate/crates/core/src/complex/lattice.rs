//! Lattice computations: saturation of rational subspaces, the primitive
//! vectors `z_τ(σ)` and the ridge normals `x_i(τ)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactq::{
    dot, from_int, hnf, integer_kernel, primitive_integer, round_half_up, to_rational_vec,
    IntMatrix, RatMatrix, Rational,
};

use super::Complex;

/// Rows form a basis of `span_Q(basis) ∩ Z^d`, in Hermite normal form.
pub fn saturate_lattice(ambient_dim: usize, basis: &[Vec<Rational>]) -> IntMatrix {
    let ints: Vec<Vec<BigInt>> = basis.iter().map(|v| primitive_integer(v)).collect();
    let orthogonal = integer_kernel(&IntMatrix::from_rows(ambient_dim, ints));
    integer_kernel(&orthogonal)
}

/// `t = d - k + 1` independent integer vectors orthogonal to the ridge span.
pub fn ridge_normals(c: &Complex, ridge: usize) -> Vec<Vec<BigInt>> {
    let r = &c.ridges()[ridge];
    if let Some(normals) = &r.normals {
        return normals.clone();
    }
    let d = c.ambient_dim();
    if r.basis.is_empty() {
        return IntMatrix::identity(d).to_rows();
    }
    let ints: Vec<Vec<BigInt>> = r.basis.iter().map(|v| primitive_integer(v)).collect();
    integer_kernel(&IntMatrix::from_rows(d, ints)).to_rows()
}

/// The primitive vector `z_τ(σ)`: `L_σ ∩ Z^d = L_τ ∩ Z^d + Z z`, pointing
/// from the ridge into the face, reduced modulo the ridge lattice.
pub fn z_vector(c: &Complex, ridge: usize, face: usize) -> Result<Vec<BigInt>> {
    let d = c.ambient_dim();
    let tau = &c.ridges()[ridge];
    let sigma = &c.faces()[face];
    if !sigma.ridges.contains(&ridge) {
        return Err(Error::NotIncident {
            ridge: tau.id.clone(),
            face: sigma.id.clone(),
        });
    }
    let face_lattice = saturate_lattice(d, &sigma.basis);
    let ridge_lattice = if tau.basis.is_empty() {
        IntMatrix::zeros(0, d)
    } else {
        saturate_lattice(d, &tau.basis)
    };
    let k = face_lattice.rows();
    if k != c.dim() || ridge_lattice.rows() + 1 != k {
        return Err(Error::InvalidInput(format!(
            "face {} / ridge {}: lattice ranks {} and {} do not differ by one",
            sigma.id,
            tau.id,
            k,
            ridge_lattice.rows()
        )));
    }

    // Coordinates of the ridge lattice in the face lattice basis.
    let face_t = face_lattice.to_rational().transpose();
    let mut coords = Vec::with_capacity(ridge_lattice.rows());
    for row in ridge_lattice.to_rows() {
        let c_row = face_t.solve(&to_rational_vec(&row)).ok_or_else(|| {
            Error::InvalidInput(format!(
                "ridge {} span is not contained in face {} span",
                tau.id, sigma.id
            ))
        })?;
        coords.push(c_row.iter().map(|q| q.to_integer()).collect::<Vec<BigInt>>());
    }
    // Functional on the face lattice vanishing on the ridge lattice.
    let functional = integer_kernel(&IntMatrix::from_rows(k, coords));
    debug_assert_eq!(functional.rows(), 1);
    let phi = functional.row(0).to_vec();
    // A lattice point u with phi·u = 1.
    let h = hnf(&IntMatrix::from_rows(1, phi.iter().map(|x| vec![x.clone()]).collect()));
    debug_assert!(h.hermite.get(0, 0).is_one());
    let u = h.transform.row(0).to_vec();
    let mut z = vec![BigInt::zero(); d];
    for (ui, row) in u.iter().zip(face_lattice.to_rows()) {
        for (zj, sj) in z.iter_mut().zip(row) {
            *zj += ui * sj;
        }
    }
    let z = reduce_modulo(z, &ridge_lattice);

    // Orientation: point(σ) - point(τ) = v + μ z with v ∈ L_τ, μ > 0.
    let diff: Vec<Rational> = sigma
        .point
        .iter()
        .zip(&tau.point)
        .map(|(a, b)| a - b)
        .collect();
    let mut cols: Vec<Vec<Rational>> = ridge_lattice.to_rows().iter().map(|r| to_rational_vec(r)).collect();
    cols.push(to_rational_vec(&z));
    let system = RatMatrix::from_rows(d, cols).transpose();
    let coeffs = system.solve(&diff).ok_or_else(|| {
        Error::InvalidInput(format!(
            "witness point of face {} is not in the affine span through ridge {}",
            sigma.id, tau.id
        ))
    })?;
    let mu = coeffs.last().expect("at least one column");
    if mu.is_zero() {
        return Err(Error::DegenerateWitness {
            ridge: tau.id.clone(),
            face: sigma.id.clone(),
        });
    }
    Ok(if mu.is_negative() {
        z.into_iter().map(|x| -x).collect()
    } else {
        z
    })
}

/// Nearest-plane reduction of `z` against the rows of `lattice`.
fn reduce_modulo(mut z: Vec<BigInt>, lattice: &IntMatrix) -> Vec<BigInt> {
    if lattice.rows() == 0 {
        return z;
    }
    let rows: Vec<Vec<Rational>> = lattice.to_rows().iter().map(|r| to_rational_vec(r)).collect();
    // Gram-Schmidt over Q.
    let mut ortho: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    for r in &rows {
        let mut v = r.clone();
        for o in &ortho {
            let mu = dot(r, o) / dot(o, o);
            for (vi, oi) in v.iter_mut().zip(o) {
                *vi -= &mu * oi;
            }
        }
        ortho.push(v);
    }
    for j in (0..rows.len()).rev() {
        let zr = to_rational_vec(&z);
        let mu = dot(&zr, &ortho[j]) / dot(&ortho[j], &ortho[j]);
        let c = round_half_up(&mu);
        if c.is_zero() {
            continue;
        }
        for (zi, li) in z.iter_mut().zip(lattice.row(j)) {
            *zi -= &c * li;
        }
    }
    z
}

pub(crate) fn int_dot(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| from_int(x) * y).sum()
}
