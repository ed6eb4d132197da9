//! Pure rational polyhedral complexes described by their maximal faces and
//! ridges, each carrying a relative-interior witness point and a basis of
//! its linear span.

mod json;
mod lattice;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{format_vec, parse_vec, span_rank, to_rational_vec, Rational};

pub use json::{ComplexJson, FaceJson, RidgeJson};
pub use lattice::{ridge_normals, saturate_lattice, z_vector};
pub(crate) use lattice::int_dot;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ridge {
    pub id: String,
    pub point: Vec<Rational>,
    /// `k - 1` vectors spanning `L_τ`.
    pub basis: Vec<Vec<Rational>>,
    /// Explicit `x_i(τ)` choice; computed from the span when absent.
    pub normals: Option<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFace {
    pub id: String,
    pub point: Vec<Rational>,
    /// `k` vectors spanning `L_σ`.
    pub basis: Vec<Vec<Rational>>,
    /// Indices into [`Complex::ridges`], sorted.
    pub ridges: Vec<usize>,
}

/// A `k`-dimensional complex in `Q^d`. Faces and ridges are stored in sorted
/// id order, which fixes the row and column order of every derived matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ambient_dim: usize,
    dim: usize,
    ridges: Vec<Ridge>,
    faces: Vec<MaxFace>,
    incidence: Vec<Vec<usize>>,
}

/// A face given with the ids of its ridges, before indexing.
#[derive(Clone, Debug)]
pub struct FaceSpec {
    pub id: String,
    pub point: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
    pub ridges: Vec<String>,
}

impl Complex {
    pub fn new(
        ambient_dim: usize,
        dim: usize,
        mut ridges: Vec<Ridge>,
        mut faces: Vec<FaceSpec>,
    ) -> Result<Self> {
        if ambient_dim == 0 || dim == 0 || dim > ambient_dim {
            return Err(Error::InvalidInput(format!(
                "need 1 <= dim <= ambient_dim, got dim {dim} in dimension {ambient_dim}"
            )));
        }
        ridges.sort_by(|a, b| a.id.cmp(&b.id));
        faces.sort_by(|a, b| a.id.cmp(&b.id));
        let mut ridge_index = BTreeMap::new();
        for (i, r) in ridges.iter().enumerate() {
            if ridge_index.insert(r.id.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate ridge id {}", r.id)));
            }
            check_coords(&r.id, ambient_dim, &r.point, &r.basis)?;
            if let Some(normals) = &r.normals {
                if normals.iter().any(|n| n.len() != ambient_dim) {
                    return Err(Error::InvalidInput(format!(
                        "ridge {}: normal vectors must have {ambient_dim} coordinates",
                        r.id
                    )));
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut indexed = Vec::with_capacity(faces.len());
        for f in faces {
            if !seen.insert(f.id.clone()) || ridge_index.contains_key(&f.id) {
                return Err(Error::InvalidInput(format!("duplicate id {}", f.id)));
            }
            check_coords(&f.id, ambient_dim, &f.point, &f.basis)?;
            let mut rs = Vec::with_capacity(f.ridges.len());
            for rid in &f.ridges {
                let &i = ridge_index.get(rid).ok_or_else(|| {
                    Error::InvalidInput(format!("face {} references unknown ridge {rid}", f.id))
                })?;
                rs.push(i);
            }
            rs.sort_unstable();
            if rs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("face {} lists a ridge twice", f.id)));
            }
            indexed.push(MaxFace {
                id: f.id,
                point: f.point,
                basis: f.basis,
                ridges: rs,
            });
        }
        let mut incidence = vec![Vec::new(); ridges.len()];
        for (fi, f) in indexed.iter().enumerate() {
            for &r in &f.ridges {
                incidence[r].push(fi);
            }
        }
        Ok(Self {
            ambient_dim,
            dim,
            ridges,
            faces: indexed,
            incidence,
        })
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let ridges = j
            .ridges
            .iter()
            .map(|r| {
                Ok(Ridge {
                    id: r.id.clone(),
                    point: parse_vec(&r.point)?,
                    basis: r.basis.iter().map(|b| parse_vec(b)).collect::<Result<_>>()?,
                    normals: r.normals.as_ref().map(|ns| {
                        ns.iter()
                            .map(|n| n.iter().map(|&x| BigInt::from(x)).collect())
                            .collect()
                    }),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let faces = j
            .faces
            .iter()
            .map(|f| {
                Ok(FaceSpec {
                    id: f.id.clone(),
                    point: parse_vec(&f.point)?,
                    basis: f.basis.iter().map(|b| parse_vec(b)).collect::<Result<_>>()?,
                    ridges: f.ridges.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.ambient_dim, j.dim, ridges, faces)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(text)?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            ridges: self
                .ridges
                .iter()
                .map(|r| RidgeJson {
                    id: r.id.clone(),
                    point: format_vec(&r.point),
                    basis: r.basis.iter().map(|b| format_vec(b)).collect(),
                    normals: r.normals.as_ref().map(|ns| {
                        ns.iter()
                            .map(|n| n.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect())
                            .collect()
                    }),
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceJson {
                    id: f.id.clone(),
                    point: format_vec(&f.point),
                    basis: f.basis.iter().map(|b| format_vec(b)).collect(),
                    ridges: f.ridges.iter().map(|&r| self.ridges[r].id.clone()).collect(),
                    inequalities: None,
                })
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `t = d - k + 1`, the number of normals per ridge.
    pub fn codim_plus_one(&self) -> usize {
        self.ambient_dim - self.dim + 1
    }

    pub fn ridges(&self) -> &[Ridge] {
        &self.ridges
    }

    pub fn faces(&self) -> &[MaxFace] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_ridges(&self) -> usize {
        self.ridges.len()
    }

    /// Faces containing ridge `r`, in face order.
    pub fn incident_faces(&self, r: usize) -> &[usize] {
        &self.incidence[r]
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.binary_search_by(|f| f.id.as_str().cmp(id)).ok()
    }

    pub fn face_ids(&self) -> Vec<String> {
        self.faces.iter().map(|f| f.id.clone()).collect()
    }

    /// The complex formed by the listed faces and every ridge of theirs.
    pub fn subcomplex(&self, faces: &[usize]) -> Result<Complex> {
        let keep: BTreeSet<usize> = faces.iter().copied().collect();
        let used: BTreeSet<usize> = keep
            .iter()
            .flat_map(|&f| self.faces[f].ridges.iter().copied())
            .collect();
        let ridges = used.iter().map(|&r| self.ridges[r].clone()).collect();
        let specs = keep
            .iter()
            .map(|&f| {
                let face = &self.faces[f];
                FaceSpec {
                    id: face.id.clone(),
                    point: face.point.clone(),
                    basis: face.basis.clone(),
                    ridges: face.ridges.iter().map(|&r| self.ridges[r].id.clone()).collect(),
                }
            })
            .collect();
        Complex::new(self.ambient_dim, self.dim, ridges, specs)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut diagnostics = Vec::new();
        let k = self.dim;
        let d = self.ambient_dim;
        for (ri, r) in self.ridges.iter().enumerate() {
            if r.basis.len() != k - 1 {
                diagnostics.push(Diagnostic::DimensionMismatch {
                    id: r.id.clone(),
                    expected: k - 1,
                    got: r.basis.len(),
                });
            } else if span_rank(d, &r.basis) != r.basis.len() {
                diagnostics.push(Diagnostic::DegenerateBasis { id: r.id.clone() });
            }
            if self.incidence[ri].len() < 2 {
                diagnostics.push(Diagnostic::NotPure {
                    ridge: r.id.clone(),
                    faces: self.incidence[ri].len(),
                });
            }
            if let Some(normals) = &r.normals {
                let t = self.codim_plus_one();
                let rat: Vec<Vec<Rational>> = normals.iter().map(|n| to_rational_vec(n)).collect();
                let orthogonal = normals
                    .iter()
                    .all(|n| r.basis.iter().all(|b| int_dot(n, b).is_zero()));
                if normals.len() != t || span_rank(d, &rat) != t || !orthogonal {
                    diagnostics.push(Diagnostic::BadNormals { ridge: r.id.clone() });
                }
            }
        }
        for (fi, f) in self.faces.iter().enumerate() {
            if f.basis.len() != k {
                diagnostics.push(Diagnostic::DimensionMismatch {
                    id: f.id.clone(),
                    expected: k,
                    got: f.basis.len(),
                });
                continue;
            }
            if span_rank(d, &f.basis) != k {
                diagnostics.push(Diagnostic::DegenerateBasis { id: f.id.clone() });
                continue;
            }
            for &ri in &f.ridges {
                let r = &self.ridges[ri];
                let mut stacked = f.basis.clone();
                stacked.extend(r.basis.iter().cloned());
                if span_rank(d, &stacked) != k {
                    diagnostics.push(Diagnostic::RidgeNotInFace {
                        ridge: r.id.clone(),
                        face: f.id.clone(),
                    });
                    continue;
                }
                if r.basis.len() == k - 1 && span_rank(d, &r.basis) == k - 1 {
                    if let Err(e) = z_vector(self, ri, fi) {
                        diagnostics.push(Diagnostic::BadWitness {
                            ridge: r.id.clone(),
                            face: f.id.clone(),
                            message: e.to_string(),
                        });
                    }
                }
            }
        }
        ValidationReport { diagnostics }
    }
}

fn check_coords(
    id: &str,
    d: usize,
    point: &[Rational],
    basis: &[Vec<Rational>],
) -> Result<()> {
    if point.len() != d || basis.iter().any(|b| b.len() != d) {
        return Err(Error::InvalidInput(format!(
            "{id}: every point and basis vector needs {d} coordinates"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// The ridge lies in fewer than two faces.
    NotPure { ridge: String, faces: usize },
    DegenerateBasis { id: String },
    DimensionMismatch { id: String, expected: usize, got: usize },
    RidgeNotInFace { ridge: String, face: String },
    BadWitness { ridge: String, face: String, message: String },
    BadNormals { ridge: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }

    /// Valid apart from boundary ridges, which still admit a balance matrix.
    pub fn is_structurally_valid(&self) -> bool {
        self.diagnostics
            .iter()
            .all(|d| matches!(d, Diagnostic::NotPure { .. }))
    }
}

/// All `z_τ(σ)` vectors and ridge normals of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    /// `z[r]` lists `(face index, z_τ(σ))` for the faces incident to ridge `r`.
    pub z: Vec<Vec<(usize, Vec<BigInt>)>>,
    pub normals: Vec<Vec<Vec<BigInt>>>,
}

impl LatticeData {
    pub fn compute(c: &Complex) -> Result<Self> {
        let mut z = Vec::with_capacity(c.num_ridges());
        let mut normals = Vec::with_capacity(c.num_ridges());
        for r in 0..c.num_ridges() {
            let mut per = Vec::new();
            for &f in c.incident_faces(r) {
                per.push((f, z_vector(c, r, f)?));
            }
            z.push(per);
            normals.push(ridge_normals(c, r));
        }
        Ok(Self { z, normals })
    }
}
