use serde::{Deserialize, Serialize};

/// On-disk form of a complex. Rationals are `"p"` or `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub ambient_dim: usize,
    pub dim: usize,
    pub ridges: Vec<RidgeJson>,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RidgeJson {
    pub id: String,
    pub point: Vec<String>,
    #[serde(default)]
    pub basis: Vec<Vec<String>>,
    /// Optional explicit choice of the integer normals `x_i(τ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FaceJson {
    pub id: String,
    pub point: Vec<String>,
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub ridges: Vec<String>,
    /// Inequality descriptions are accepted and ignored.
    #[serde(default, skip_serializing)]
    pub inequalities: Option<serde_json::Value>,
}
