//! Balancing, the weight polytope and decompositions on the fixtures and on
//! random curves.

mod common;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use tropex::balance::{self, Weighting};
use tropex::cone::{self, WeightCone};
use tropex::decompose;
use tropex::exactq::{rat, Rational};

fn combination(basis: &[Vec<Rational>], coeffs: &[i64]) -> Vec<Rational> {
    let n = basis.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| basis.iter().zip(coeffs).map(|(b, &c)| &b[i] * rat(c)).sum())
        .collect()
}

proptest! {
    #![proptest_config(common::proptest_config(64))]

    #[test]
    fn balanced_set_is_a_subspace(
        idx in 0usize..64,
        a in prop::collection::vec(-5i64..=5, 8),
        b in prop::collection::vec(-5i64..=5, 8),
        s in -7i64..=7,
    ) {
        let all = common::fixture_complexes();
        let (_, c) = &all[idx % all.len()];
        let m = balance::build_r(c).unwrap();
        let basis = m.r.left_kernel_basis();
        let wa = combination(&basis, &a);
        let wb = combination(&basis, &b);
        let check = |w: Vec<Rational>| balance::is_balanced(c, &m, &Weighting::new(w)).unwrap().balanced;
        prop_assert!(check(wa.clone()));
        prop_assert!(check(wa.iter().map(|x| x * rat(s)).collect()));
        prop_assert!(check(wa.iter().zip(&wb).map(|(x, y)| x + y).collect()));
    }

    #[test]
    fn unit_perturbation_detected(idx in 0usize..64, face in 0usize..64) {
        let all = common::fixture_complexes();
        let (_, c) = &all[idx % all.len()];
        let m = balance::build_r(c).unwrap();
        let n = c.num_faces();
        let mut e = vec![rat(0); n];
        e[face % n] = rat(1);
        // A single face is balanced on its own only when its row of R is zero.
        let alone = m.r.row(face % n).iter().all(Zero::is_zero);
        let rep = balance::is_balanced(c, &m, &Weighting::new(e)).unwrap();
        prop_assert_eq!(rep.balanced, alone);
        prop_assert_eq!(rep.failing().next().is_none(), alone);
    }
}



#[test]
fn left_kernel_independent_of_normals() {
    common::checks::normal_choice_invariance().unwrap();
}

#[test]
fn extremal_bound_on_extremal_fixtures() {
    for (name, c) in common::fixture_complexes() {
        let m = balance::build_r(&c).unwrap();
        if let Ok(cert) = balance::is_extremal(&c, &m) {
            if cert.extremal {
                assert!(balance::check_extremal_bound(&c), "{name}");
                let bound = (c.ambient_dim() - c.dim() + 1) * c.num_ridges() + 1;
                assert!(c.num_faces() <= bound, "{name}");
            }
        }
    }
}

#[test]
fn extremal_iff_one_dimensional() {
    for (name, c) in common::fixture_complexes() {
        let m = balance::build_r(&c).unwrap();
        let Ok(cert) = balance::is_extremal(&c, &m) else { continue };
        assert_eq!(cert.extremal, balance::weighting_space_dim(&m) == 1, "{name}");
        assert_eq!(cert.rank + cert.left_kernel.len(), c.num_faces(), "{name}");
    }
}



#[test]
fn decompose_agrees_with_enumeration() {
    let n = common::checks::decomposition_agreement(40).unwrap();
    assert!(n >= 30, "only {n} instances checked");
}

#[test]
fn decompose_bounds() {
    for (name, c) in common::checks::random_complexes(20, 20) {
        let m = balance::build_r(&c).unwrap();
        let d = decompose::decompose(&c, &m).unwrap();
        assert!(d.parts.len() <= decompose::decomposition_upper_bound(&m), "{name}");
        for (p, &r) in d.parts.iter().zip(&d.part_ranks) {
            assert_eq!(r + 1, p.support.len(), "{name}: part not extremal");
        }
        let o = decompose::decompose_oracle(&c, &m, cone::DEFAULT_LIMIT).unwrap();
        assert!(decompose::verify_decomposition(&m, &o.parts.iter().map(|p| p.weighting.clone()).collect::<Vec<_>>()));
        assert!(!d.used_fallback, "{name}");
    }
}

/// A set of vertices covers every face exactly when its uniform
/// combination is strictly positive; checked over all vertex subsets.
#[test]
fn covering_iff_positive_combination() {
    for (name, c) in common::checks::random_complexes(20, 20) {
        let m = balance::build_r(&c).unwrap();
        let vs = cone::enumerate_vertices_bruteforce(&m.r, cone::DEFAULT_LIMIT).unwrap();
        if vs.len() > 12 {
            continue;
        }
        let n = c.num_faces();
        for k in 1..=vs.len() {
            for subset in vs.iter().cloned().combinations(k) {
                let covers = (0..n).all(|i| subset.iter().any(|v| !v[i].is_zero()));
                assert_eq!(decompose::verify_decomposition(&m, &subset), covers, "{name}");
            }
        }
    }
}

#[test]
fn vertices_lie_in_the_polytope() {
    for (name, c) in common::checks::random_complexes(20, 20) {
        let m = balance::build_r(&c).unwrap();
        let cone = WeightCone::new(&m);
        let vs = cone::enumerate_vertices_bruteforce(&m.r, cone::DEFAULT_LIMIT).unwrap();
        for v in &vs {
            assert!(cone.contains(v) && cone.is_vertex(v), "{name}");
            assert_eq!(v.iter().sum::<Rational>(), rat(1), "{name}");
            assert!(v.iter().all(|x| !x.is_negative()), "{name}");
        }
        let fv = cone::find_vertex(&m.r).unwrap();
        assert!(vs.contains(&fv), "{name}");
        assert_eq!(cone::polytope_dim(&vs), Some(cone.dim() - 1), "{name}");
        let pw = cone::positive_weighting(&m.r).unwrap();
        assert!(pw.iter().all(|x| x.is_positive()), "{name}");
    }
}
