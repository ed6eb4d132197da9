//! Checks shared by the property suites and the acceptance run. Each returns
//! a description of the first failure.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use tropex::balance::{self, Weighting};
use tropex::complex::{ridge_normals, Complex};
use tropex::cone;
use tropex::decompose;
use tropex::exactq::{frac, same_span, IntMatrix, Rational};
use tropex::reciprocal::{build_reciprocal, check_main_theorem, dual_graph, weighting_from_diagram};
use tropex::rigidity::{self, Framework};

pub fn random_normals(c: &Complex, rng: &mut impl Rng) -> Complex {
    let mut j = c.to_json();
    let t = c.codim_plus_one();
    for (r, rj) in j.ridges.iter_mut().enumerate() {
        let n = IntMatrix::from_rows(c.ambient_dim(), ridge_normals(c, r));
        let m = loop {
            let rows: Vec<Vec<BigInt>> = (0..t)
                .map(|_| (0..t).map(|_| BigInt::from(rng.random_range(-3i64..=3))).collect())
                .collect();
            let m = IntMatrix::from_rows(t, rows);
            if !m.det().is_zero() {
                break m;
            }
        };
        let mixed = m.mul(&n);
        rj.normals = Some(
            mixed
                .to_rows()
                .iter()
                .map(|row| row.iter().map(|x| i64::try_from(x).unwrap()).collect())
                .collect(),
        );
    }
    Complex::from_json(&j).unwrap()
}

/// The left kernel of `R(C)` does not depend on the choice of ridge normals.
pub fn normal_choice_invariance() -> Result<(), String> {
    let mut rng = super::rng(2);
    for (name, c) in super::fixture_complexes() {
        let base = balance::build_r(&c).unwrap().r.left_kernel_basis();
        for _ in 0..5 {
            let c2 = random_normals(&c, &mut rng);
            if !c2.validate().is_valid() {
                return Err(format!("{name}: randomized normals rejected"));
            }
            let k = balance::build_r(&c2).unwrap().r.left_kernel_basis();
            if k.len() != base.len() || !same_span(c.num_faces(), &k, &base) {
                return Err(format!("{name}: left kernel changed"));
            }
        }
    }
    Ok(())
}

pub fn random_complexes(n: usize, max_faces: usize) -> Vec<(String, Complex)> {
    let mut out = super::fixture_complexes();
    for p in super::poly_corpus(n).into_iter().skip(out.len()) {
        let curve = super::curve(&p);
        if !curve.subdivision.degenerate {
            out.push((p, curve.to_complex()));
        }
    }
    out.retain(|(_, c)| c.num_faces() <= max_faces);
    out
}

/// Parts are enumerated vertices and cover; a simplex gives every vertex.
pub fn decomposition_agreement(n_random: usize) -> Result<usize, String> {
    let mut checked = 0;
    for (name, c) in random_complexes(n_random, 20) {
        let m = balance::build_r(&c).unwrap();
        let vs = cone::enumerate_vertices_bruteforce(&m.r, cone::DEFAULT_LIMIT).map_err(|e| format!("{name}: {e}"))?;
        let d = decompose::decompose(&c, &m).map_err(|e| format!("{name}: {e}"))?;
        let parts: Vec<Vec<Rational>> = d.parts.iter().map(|p| p.weighting.clone()).collect();
        if let Some(p) = parts.iter().find(|p| !vs.contains(p)) {
            return Err(format!("{name}: part {p:?} is not a vertex"));
        }
        if !decompose::verify_decomposition(&m, &parts) {
            return Err(format!("{name}: verify_decomposition failed"));
        }
        if cone::is_simplex(&vs) && parts.len() != vs.len() {
            return Err(format!("{name}: simplex with {} vertices, {} parts", vs.len(), parts.len()));
        }
        let sets = cone::extremal_subvarieties(&m.r, cone::DEFAULT_LIMIT).unwrap();
        if d.parts.iter().any(|p| !sets.contains(p)) {
            return Err(format!("{name}: part outside extremal_subvarieties"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Every curve weighting is balanced.
pub fn curve_weightings_balanced(polys: &[String]) -> Result<(), String> {
    for p in polys {
        let c = super::curve(p);
        if c.subdivision.degenerate {
            continue;
        }
        let cx = c.to_complex();
        let m = balance::build_r(&cx).map_err(|e| format!("{p}: {e}"))?;
        if !balance::is_balanced(&cx, &m, &c.weighting()).unwrap().balanced {
            return Err(format!("{p}: curve weighting not balanced"));
        }
    }
    Ok(())
}

/// Positive balanced weightings built from the weight polytope, pushed
/// through a reciprocal diagram and read back.
pub fn round_trips(min: usize) -> Result<usize, String> {
    let mut rng = super::rng(3);
    let mut done = 0;
    for p in super::poly_corpus(60) {
        if done >= min {
            break;
        }
        let c = super::curve(&p);
        if c.subdivision.degenerate || c.edges.len() > 20 {
            continue;
        }
        let cx = c.to_complex();
        let m = balance::build_r(&cx).unwrap();
        let vs = cone::enumerate_vertices_bruteforce(&m.r, cone::DEFAULT_LIMIT).unwrap();
        let dg = dual_graph(&c).unwrap();
        for _ in 0..4 {
            let scale = frac(rng.random_range(1..=5), rng.random_range(1..=4));
            let mut w: Vec<Rational> = c.weighting().values.iter().map(|x| x * &scale).collect();
            for v in &vs {
                let s = frac(rng.random_range(0..=7), rng.random_range(1..=3));
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi += &s * vi;
                }
            }
            if !balance::is_balanced(&cx, &m, &Weighting::new(w.clone())).unwrap().balanced {
                return Err(format!("{p}: generated weighting not balanced"));
            }
            let rd = build_reciprocal(&dg, &w).map_err(|e| format!("{p}: {e}"))?;
            let back = weighting_from_diagram(&rd).map_err(|e| format!("{p}: {e}"))?;
            if back.values != w {
                return Err(format!("{p}: round trip changed the weighting"));
            }
            if back.integral != w.iter().all(|x| x.is_integer()) {
                return Err(format!("{p}: integral flag wrong"));
            }
            done += 1;
        }
    }
    Ok(done)
}

/// Extremality of `curve(f)` against direction rigidity and infinitesimal
/// rigidity of its reciprocal diagram, computed separately.
/// Returns the number of curves checked and how many were extremal.
pub fn main_theorem_loop(polys: &[String]) -> Result<(usize, usize), String> {
    let mut checked = 0;
    let mut extremal_count = 0;
    for p in polys {
        let c = super::curve(p);
        if c.subdivision.degenerate {
            continue;
        }
        let cx = c.to_complex();
        let m = balance::build_r(&cx).unwrap();
        let extremal = balance::is_extremal(&cx, &m).map_err(|e| format!("{p}: {e}"))?.extremal;
        let dg = dual_graph(&c).unwrap();
        let rd = build_reciprocal(&dg, &c.weighting().values).map_err(|e| format!("{p}: {e}"))?;
        let dr = rigidity::is_direction_rigid(&rd.framework).unwrap();
        let ir = rigidity::is_infinitesimally_rigid(&rd.framework).rigid;
        if extremal != dr || dr != ir {
            return Err(format!("{p}: extremal {extremal}, direction rigid {dr}, inf rigid {ir}"));
        }
        let rep = check_main_theorem(&c).unwrap();
        if !rep.agree || rep.extremal != extremal {
            return Err(format!("{p}: check_main_theorem disagrees"));
        }
        checked += 1;
        extremal_count += extremal as usize;
    }
    Ok((checked, extremal_count))
}

/// `rank R(G,p⊥) = rank R(G,p)` and `C(G,p) = ker R(G,p⊥)`.
pub fn perp_identities(fw: &Framework) -> Result<(), String> {
    let p = rigidity::perp(fw).map_err(|e| e.to_string())?;
    let rp = rigidity::rigidity_matrix(&p);
    if rp.rank() != rigidity::rigidity_matrix(fw).rank() {
        return Err("rank changed under perp".into());
    }
    let c = rigidity::direction_space(fw).map_err(|e| e.to_string())?;
    let k = rp.kernel_basis();
    if c.len() != k.len() || !same_span(2 * fw.num_vertices(), &c, &k) {
        return Err("direction space differs from ker R(G,p⊥)".into());
    }
    Ok(())
}
