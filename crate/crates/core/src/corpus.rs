//! Worked examples with their expected certificates, embedded at build time
//! and pinned by content hash.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::balance::{self, BalanceMatrices};
use crate::complex::Complex;
use crate::cone;
use crate::decompose;
use crate::error::{Error, Result};
use crate::exactq::{rat, same_span, RatMatrix, Rational};
use crate::reciprocal;
use crate::rigidity::{self, Framework};
use crate::tropcurve::{structure_report, Curve};

macro_rules! fixtures {
    ($(($name:literal, $input:literal)),* $(,)?) => {
        &[$(RawFixture {
            name: $name,
            input_file: $input,
            input: include_str!(concat!("../fixtures/", $name, "/", $input)),
            expected: include_str!(concat!("../fixtures/", $name, "/expected.json")),
            provenance: include_str!(concat!("../fixtures/", $name, "/provenance.md")),
        }),*]
    };
}

struct RawFixture {
    name: &'static str,
    input_file: &'static str,
    input: &'static str,
    expected: &'static str,
    provenance: &'static str,
}

static FIXTURES: &[RawFixture] = fixtures![
    ("double-banana", "input.json"),
    ("extremal-quadratic", "input.poly"),
    ("four-ray-curve", "input.poly"),
    ("hexagon", "input.poly"),
    ("hyperplane3d", "input.json"),
    ("prism", "input.poly"),
    ("prism-framework", "input.json"),
    ("six-ray-fan", "input.json"),
    ("skew-line", "input.poly"),
    ("smooth-cubic", "input.poly"),
    ("triple-union", "input.json"),
    ("triple-union-poly", "input.poly"),
    ("tropical-line", "input.poly"),
];

static PINS: &str = include_str!("../fixtures/SHA256SUMS");

#[derive(Clone, Debug)]
pub enum FixtureInput {
    Poly(String),
    Complex(Complex),
    Framework(Framework),
}

/// Expected values; absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub kind: String,
    pub num_faces: Option<usize>,
    pub num_ridges: Option<usize>,
    pub rank: Option<usize>,
    pub weighting_space_dim: Option<usize>,
    pub extremal: Option<bool>,
    pub extremal_bound_holds: Option<bool>,
    /// `R(C)` with rows in `row_order` and column blocks in `column_blocks`.
    pub r_matrix: Option<Vec<Vec<i64>>>,
    pub r_tilde: Option<Vec<Vec<i64>>>,
    pub row_order: Option<Vec<String>>,
    pub column_blocks: Option<Vec<String>>,
    /// Spans the left kernel, coordinates in `row_order`.
    pub kernel_basis: Option<Vec<Vec<i64>>>,
    pub vertex_count: Option<usize>,
    pub simplex: Option<bool>,
    pub decomposition_parts: Option<usize>,
    pub supports: Option<Vec<Vec<String>>>,
    pub curve_vertices: Option<usize>,
    pub curve_edges: Option<usize>,
    pub curve_vertex_coords: Option<Vec<[String; 2]>>,
    pub curve_weights: Option<Vec<i64>>,
    pub subdivision_points: Option<usize>,
    pub dual_graph_rigid: Option<bool>,
    pub structure_passes: Option<bool>,
    pub main_theorem_agree: Option<bool>,
    /// `R(G,p)` with rows in `edge_order`, column blocks in `vertex_order`.
    pub rigidity_matrix: Option<Vec<Vec<i64>>>,
    pub edge_order: Option<Vec<[String; 2]>>,
    pub vertex_order: Option<Vec<String>>,
    /// Signs applied to our rows before comparison with a printed matrix
    /// that orients some rows the other way.
    pub row_signs: Option<Vec<i64>>,
    pub rigidity_rank: Option<usize>,
    pub infinitesimally_rigid: Option<bool>,
    pub direction_dim: Option<usize>,
    pub direction_rigid: Option<bool>,
    pub pebble_rigid: Option<bool>,
    pub perp_rank: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub input: FixtureInput,
    pub expected: Expected,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub fixture: String,
    pub field: String,
    pub expected: String,
    pub got: String,
}

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

pub fn load(name: &str) -> Result<Fixture> {
    let raw = FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("no fixture named {name}")))?;
    let expected: Expected = serde_json::from_str(raw.expected)?;
    let input = match expected.kind.as_str() {
        "poly" => FixtureInput::Poly(raw.input.trim().to_string()),
        "complex" => FixtureInput::Complex(Complex::from_json_str(raw.input)?),
        "framework" => FixtureInput::Framework(Framework::from_json_str(raw.input)?),
        other => return Err(Error::InvalidInput(format!("unknown fixture kind {other}"))),
    };
    Ok(Fixture {
        name: name.to_string(),
        input,
        expected,
        provenance: raw.provenance.to_string(),
    })
}

/// Raw input text of a fixture and its file name.
pub fn input_text(name: &str) -> Option<(&'static str, &'static str)> {
    FIXTURES.iter().find(|f| f.name == name).map(|f| (f.input_file, f.input))
}

/// Files whose SHA-256 differs from the pinned value, or that are unpinned.
pub fn verify_pins() -> Vec<String> {
    let pins: BTreeSet<(String, String)> = PINS
        .lines()
        .filter_map(|l| l.split_once("  "))
        .map(|(h, p)| (p.to_string(), h.to_string()))
        .collect();
    let mut bad = Vec::new();
    for f in FIXTURES {
        for (file, text) in [(f.input_file, f.input), ("expected.json", f.expected), ("provenance.md", f.provenance)] {
            let path = format!("{}/{}", f.name, file);
            let hash = hex::encode(Sha256::digest(text.as_bytes()));
            if !pins.contains(&(path.clone(), hash)) {
                bad.push(path);
            }
        }
    }
    bad
}

struct Checker {
    fixture: String,
    out: Vec<Mismatch>,
}

impl Checker {
    fn check<T: PartialEq + std::fmt::Debug>(&mut self, field: &str, expected: &Option<T>, got: impl FnOnce() -> Result<T>) {
        let Some(e) = expected else { return };
        match got() {
            Ok(g) if g == *e => {}
            Ok(g) => self.push(field, format!("{e:?}"), format!("{g:?}")),
            Err(err) => self.push(field, format!("{e:?}"), format!("error: {err}")),
        }
    }

    fn push(&mut self, field: &str, expected: String, got: String) {
        self.out.push(Mismatch {
            fixture: self.fixture.clone(),
            field: field.to_string(),
            expected,
            got,
        });
    }
}

fn int_rows(m: &RatMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| if q.is_integer() { i64::try_from(q.to_integer()).unwrap_or(i64::MAX) } else { i64::MAX })
                .collect()
        })
        .collect()
}

/// `m` with rows and column blocks rearranged into a printed order.
fn reorder(m: &RatMatrix, rows: &[usize], blocks: &[usize], width: usize) -> Vec<Vec<i64>> {
    let ints = int_rows(m);
    rows.iter()
        .map(|&r| blocks.iter().flat_map(|&b| ints[r][b * width..(b + 1) * width].to_vec()).collect())
        .collect()
}

fn position_map(ids: &[String], order: &[String]) -> Result<Vec<usize>> {
    order
        .iter()
        .map(|id| {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| Error::InvalidInput(format!("unknown id {id} in fixture ordering")))
        })
        .collect()
}

fn check_complex(ck: &mut Checker, c: &Complex, e: &Expected) -> Result<()> {
    let m: BalanceMatrices = balance::build_r(c)?;
    ck.check("num_faces", &e.num_faces, || Ok(c.num_faces()));
    ck.check("num_ridges", &e.num_ridges, || Ok(c.num_ridges()));
    ck.check("rank", &e.rank, || Ok(m.r.rank()));
    ck.check("weighting_space_dim", &e.weighting_space_dim, || Ok(balance::weighting_space_dim(&m)));
    ck.check("extremal", &e.extremal, || Ok(balance::is_extremal(c, &m)?.extremal));
    ck.check("extremal_bound_holds", &e.extremal_bound_holds, || Ok(balance::check_extremal_bound(c)));

    let face_ids = c.face_ids();
    let ridge_ids: Vec<String> = c.ridges().iter().map(|r| r.id.clone()).collect();
    let rows = match &e.row_order {
        Some(order) => position_map(&face_ids, order)?,
        None => (0..face_ids.len()).collect(),
    };
    let blocks = match &e.column_blocks {
        Some(order) => position_map(&ridge_ids, order)?,
        None => (0..ridge_ids.len()).collect(),
    };
    ck.check("r_matrix", &e.r_matrix, || Ok(reorder(&m.r, &rows, &blocks, c.codim_plus_one())));
    ck.check("r_tilde", &e.r_tilde, || Ok(reorder(&m.r_tilde, &rows, &blocks, c.ambient_dim())));
    if let Some(kb) = &e.kernel_basis {
        let printed: Vec<Vec<Rational>> = kb
            .iter()
            .map(|v| {
                let mut x = vec![rat(0); v.len()];
                for (k, &r) in rows.iter().enumerate() {
                    x[r] = rat(v[k]);
                }
                x
            })
            .collect();
        let ours = m.r.left_kernel_basis();
        if !same_span(c.num_faces(), &printed, &ours) {
            ck.push("kernel_basis", format!("{kb:?}"), "different span".into());
        }
    }

    let need_vertices = e.vertex_count.is_some() || e.simplex.is_some() || e.supports.is_some();
    if need_vertices {
        let vs = cone::enumerate_vertices_bruteforce(&m.r, cone::DEFAULT_LIMIT)?;
        ck.check("vertex_count", &e.vertex_count, || Ok(vs.len()));
        ck.check("simplex", &e.simplex, || Ok(cone::is_simplex(&vs)));
        ck.check("supports", &e.supports.as_ref().map(|s| s.iter().cloned().collect::<BTreeSet<_>>()), || {
            Ok(vs
                .iter()
                .map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).map(|i| face_ids[i].clone()).collect())
                .collect())
        });
    }
    ck.check("decomposition_parts", &e.decomposition_parts, || {
        Ok(decompose::decompose(c, &m)?.parts.len())
    });
    Ok(())
}

fn check_framework(ck: &mut Checker, fw: &Framework, e: &Expected) -> Result<()> {
    let r = rigidity::rigidity_matrix(fw);
    if let Some(printed) = &e.rigidity_matrix {
        let vertex_order = e.vertex_order.clone().unwrap_or_else(|| fw.ids.clone());
        let blocks = position_map(&fw.ids, &vertex_order)?;
        let rows = match &e.edge_order {
            Some(order) => order
                .iter()
                .map(|[u, v]| {
                    fw.edges
                        .iter()
                        .position(|&(a, b)| {
                            let (a, b) = (&fw.ids[a], &fw.ids[b]);
                            (a == u && b == v) || (a == v && b == u)
                        })
                        .ok_or_else(|| Error::InvalidInput(format!("no edge {u}-{v}")))
                })
                .collect::<Result<Vec<_>>>()?,
            None => (0..fw.edges.len()).collect(),
        };
        let signs = e.row_signs.clone().unwrap_or_else(|| vec![1; rows.len()]);
        ck.check("rigidity_matrix", &Some(printed.clone()), || {
            Ok(reorder(&r, &rows, &blocks, fw.dim)
                .into_iter()
                .zip(&signs)
                .map(|(row, s)| row.into_iter().map(|x| x * s).collect())
                .collect())
        });
    }
    ck.check("rigidity_rank", &e.rigidity_rank, || Ok(r.rank()));
    ck.check("infinitesimally_rigid", &e.infinitesimally_rigid, || {
        Ok(rigidity::is_infinitesimally_rigid(fw).rigid)
    });
    ck.check("direction_dim", &e.direction_dim, || Ok(rigidity::direction_space(fw)?.len()));
    ck.check("direction_rigid", &e.direction_rigid, || rigidity::is_direction_rigid(fw));
    ck.check("pebble_rigid", &e.pebble_rigid, || Ok(rigidity::pebble_game_framework(fw).rigid));
    ck.check("perp_rank", &e.perp_rank, || Ok(rigidity::rigidity_matrix(&rigidity::perp(fw)?).rank()));
    Ok(())
}

fn check_poly(ck: &mut Checker, text: &str, e: &Expected) -> Result<()> {
    let curve = Curve::parse(text)?;
    ck.check("curve_vertices", &e.curve_vertices, || Ok(curve.vertices.len()));
    ck.check("curve_edges", &e.curve_edges, || Ok(curve.edges.len()));
    ck.check("curve_vertex_coords", &e.curve_vertex_coords, || {
        let mut got: Vec<[String; 2]> = curve
            .vertices
            .iter()
            .map(|v| [crate::exactq::format_rational(&v[0]), crate::exactq::format_rational(&v[1])])
            .collect();
        got.sort();
        Ok(got)
    });
    ck.check("curve_weights", &e.curve_weights, || {
        let mut w: Vec<i64> = curve.edges.iter().map(|x| i64::try_from(&x.weight).unwrap_or(i64::MAX)).collect();
        w.sort_unstable();
        Ok(w)
    });
    ck.check("subdivision_points", &e.subdivision_points, || Ok(curve.subdivision.points.len()));
    let report = structure_report(&curve);
    ck.check("dual_graph_rigid", &e.dual_graph_rigid, || Ok(report.dual_graph_rigid));
    ck.check("structure_passes", &e.structure_passes, || Ok(report.passes()));
    ck.check("main_theorem_agree", &e.main_theorem_agree, || {
        Ok(reciprocal::check_main_theorem(&curve)?.agree)
    });
    check_complex(ck, &curve.to_complex(), e)
}

/// Runs one fixture through the pipeline.
pub fn run(f: &Fixture) -> Vec<Mismatch> {
    let mut ck = Checker {
        fixture: f.name.clone(),
        out: Vec::new(),
    };
    let res = match &f.input {
        FixtureInput::Poly(p) => check_poly(&mut ck, p, &f.expected),
        FixtureInput::Complex(c) => check_complex(&mut ck, c, &f.expected),
        FixtureInput::Framework(fw) => check_framework(&mut ck, fw, &f.expected),
    };
    if let Err(err) = res {
        ck.push("pipeline", "success".into(), err.to_string());
    }
    ck.out
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
}

/// Every fixture, in name order, plus hash pin failures as mismatches.
pub fn run_all() -> Vec<FixtureOutcome> {
    use rayon::prelude::*;
    let mut out: Vec<FixtureOutcome> = names()
        .par_iter()
        .map(|&name| {
            let mismatches = match load(name) {
                Ok(f) => run(&f),
                Err(err) => vec![Mismatch {
                    fixture: name.to_string(),
                    field: "load".into(),
                    expected: "loadable".into(),
                    got: err.to_string(),
                }],
            };
            FixtureOutcome {
                name: name.to_string(),
                passed: mismatches.is_empty(),
                mismatches,
            }
        })
        .collect();
    for path in verify_pins() {
        let name = path.split('/').next().unwrap_or_default().to_string();
        if let Some(o) = out.iter_mut().find(|o| o.name == name) {
            o.passed = false;
            o.mismatches.push(Mismatch {
                fixture: name,
                field: "sha256".into(),
                expected: "pinned".into(),
                got: format!("{path} changed"),
            });
        }
    }
    out
}
