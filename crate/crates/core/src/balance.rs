//! The balance matrices `R̃(C)`, `L(C)`, `R(C) = R̃(C) L(C)` and the
//! weighting tests built on them.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::complex::{Complex, LatticeData};
use crate::cone;
use crate::error::{Error, Result};
use crate::exactq::{format_rational, from_int, is_zero_vec, parse_rational, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightingKind {
    TotalPositive,
    Partial,
    Unrestricted,
}

/// A rational weight per maximal face, stored in face order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    pub values: Vec<Rational>,
}

impl Weighting {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn kind(&self) -> WeightingKind {
        if self.values.iter().all(|v| v.is_positive()) {
            WeightingKind::TotalPositive
        } else if self.values.iter().any(|v| v.is_negative()) {
            WeightingKind::Unrestricted
        } else {
            WeightingKind::Partial
        }
    }

    /// Face ids with nonzero weight.
    pub fn support(&self, c: &Complex) -> Vec<String> {
        self.values
            .iter()
            .zip(c.faces())
            .filter(|(v, _)| !v.is_zero())
            .map(|(_, f)| f.id.clone())
            .collect()
    }

    /// Reads `{"face_id": "p/q", ...}`. With `strict`, every face must be
    /// listed; otherwise missing faces get weight zero.
    pub fn from_json_str(c: &Complex, text: &str, strict: bool) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)?;
        let mut values = vec![Rational::zero(); c.num_faces()];
        let mut seen = vec![false; c.num_faces()];
        for (id, v) in raw {
            let i = c
                .face_index(&id)
                .ok_or_else(|| Error::InvalidInput(format!("unknown face id {id}")))?;
            let q = match v {
                serde_json::Value::String(s) => parse_rational(&s)?,
                serde_json::Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().unwrap().into()),
                other => return Err(Error::Parse(format!("weight of {id} must be a rational string, got {other}"))),
            };
            values[i] = q;
            seen[i] = true;
        }
        if strict {
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidInput(format!("no weight given for face {}", c.faces()[i].id)));
            }
        }
        Ok(Self { values })
    }

    pub fn to_json(&self, c: &Complex) -> BTreeMap<String, String> {
        c.faces()
            .iter()
            .zip(&self.values)
            .map(|(f, v)| (f.id.clone(), format_rational(v)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceMatrices {
    /// `|Ẽ| × d|Ṽ|`
    pub r_tilde: RatMatrix,
    /// `d|Ṽ| × t|Ṽ|`
    pub l: RatMatrix,
    /// `|Ẽ| × t|Ṽ|`
    pub r: RatMatrix,
}

pub fn build_r(c: &Complex) -> Result<BalanceMatrices> {
    let data = LatticeData::compute(c)?;
    let d = c.ambient_dim();
    let t = c.codim_plus_one();
    let nv = c.num_ridges();
    let mut r_tilde = RatMatrix::zeros(c.num_faces(), d * nv);
    let mut l = RatMatrix::zeros(d * nv, t * nv);
    for (ri, per) in data.z.iter().enumerate() {
        for (f, z) in per {
            for (a, za) in z.iter().enumerate() {
                r_tilde.set(*f, ri * d + a, from_int(za));
            }
        }
        for (i, x) in data.normals[ri].iter().enumerate() {
            for (a, xa) in x.iter().enumerate() {
                l.set(ri * d + a, ri * t + i, from_int(xa));
            }
        }
    }
    let r = &r_tilde * &l;
    Ok(BalanceMatrices { r_tilde, l, r })
}

/// Balancing sum at one ridge, in the coordinates of its normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeResidual {
    pub ridge: String,
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub residuals: Vec<RidgeResidual>,
}

impl BalanceReport {
    /// Ridges where the balancing sum is nonzero.
    pub fn failing(&self) -> impl Iterator<Item = &RidgeResidual> {
        self.residuals.iter().filter(|r| !is_zero_vec(&r.residual))
    }
}

pub fn is_balanced(c: &Complex, m: &BalanceMatrices, w: &Weighting) -> Result<BalanceReport> {
    if w.values.len() != c.num_faces() {
        return Err(Error::WrongDimension {
            expected: c.num_faces(),
            got: w.values.len(),
        });
    }
    let prod = m.r.left_mul_vec(&w.values);
    let t = c.codim_plus_one();
    let residuals: Vec<RidgeResidual> = c
        .ridges()
        .iter()
        .enumerate()
        .map(|(i, r)| RidgeResidual {
            ridge: r.id.clone(),
            residual: prod[i * t..(i + 1) * t].to_vec(),
        })
        .collect();
    let balanced = residuals.iter().all(|r| is_zero_vec(&r.residual));
    Ok(BalanceReport { balanced, residuals })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityCertificate {
    pub extremal: bool,
    pub rank: usize,
    pub num_faces: usize,
    pub left_kernel: Vec<Vec<Rational>>,
}

/// Decides extremality by `rank R(C) = |Ẽ| - 1`, after confirming that a
/// strictly positive balanced weighting exists.
pub fn is_extremal(c: &Complex, m: &BalanceMatrices) -> Result<ExtremalityCertificate> {
    if cone::positive_weighting(&m.r).is_none() {
        return Err(Error::NotTropicalVariety);
    }
    let rank = m.r.rank();
    let n = c.num_faces();
    Ok(ExtremalityCertificate {
        extremal: rank + 1 == n,
        rank,
        num_faces: n,
        left_kernel: m.r.left_kernel_basis(),
    })
}

/// `dim ker R(C)ᵀ`
pub fn weighting_space_dim(m: &BalanceMatrices) -> usize {
    m.r.rows() - m.r.rank()
}

/// `|Ẽ| ≤ (d - k + 1)|Ṽ| + 1`, necessary for extremality.
pub fn check_extremal_bound(c: &Complex) -> bool {
    c.num_faces() <= c.codim_plus_one() * c.num_ridges() + 1
}
