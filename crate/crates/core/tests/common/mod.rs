#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropex::complex::Complex;
use tropex::corpus::{self, FixtureInput};
use tropex::exactq::Rational;
use tropex::rigidity::Framework;
use tropex::tropcurve::Curve;

pub mod checks;

pub const SEED: u64 = 0x7e0c_5eed;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn collinear(pts: &[(i64, i64)]) -> bool {
    let (a, b) = (pts[0], pts[1]);
    pts.iter()
        .all(|&c| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) == 0)
}

/// A polynomial with a random support of degree at most `max_deg` that is
/// not contained in a line, and small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: i64) -> String {
    loop {
        let deg = rng.random_range(1..=max_deg);
        let mut all: Vec<(i64, i64)> = (0..=deg)
            .flat_map(|i| (0..=deg - i).map(move |j| (i, j)))
            .collect();
        all.shuffle(rng);
        let k = rng.random_range(3..=all.len().max(3));
        let mut pts: Vec<(i64, i64)> = all.into_iter().take(k).collect();
        pts.sort();
        if pts.len() < 3 || collinear(&pts) {
            continue;
        }
        return pts
            .iter()
            .map(|&(i, j)| format!("({}) x^{i} y^{j}", rng.random_range(-6..=6)))
            .collect::<Vec<_>>()
            .join(" + ");
    }
}

/// The polynomial fixtures followed by `n` random polynomials.
pub fn poly_corpus(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for name in corpus::names() {
        if let Ok(f) = corpus::load(name) {
            if let FixtureInput::Poly(p) = f.input {
                out.push(p);
            }
        }
    }
    let mut r = rng(1);
    for _ in 0..n {
        out.push(random_poly(&mut r, 6));
    }
    out
}

pub fn curve(text: &str) -> Curve {
    Curve::parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Every complex among the fixtures, with curves turned into complexes.
pub fn fixture_complexes() -> Vec<(String, Complex)> {
    let mut out = Vec::new();
    for name in corpus::names() {
        let f = corpus::load(name).unwrap();
        match f.input {
            FixtureInput::Complex(c) => out.push((name.to_string(), c)),
            FixtureInput::Poly(p) => {
                let c = curve(&p);
                if !c.subdivision.degenerate {
                    out.push((name.to_string(), c.to_complex()));
                }
            }
            FixtureInput::Framework(_) => {}
        }
    }
    out
}

pub fn fixture_frameworks() -> Vec<(String, Framework)> {
    corpus::names()
        .into_iter()
        .filter_map(|name| match corpus::load(name).unwrap().input {
            FixtureInput::Framework(fw) => Some((name.to_string(), fw)),
            _ => None,
        })
        .collect()
}

pub fn fixture(name: &str) -> corpus::Fixture {
    corpus::load(name).unwrap()
}

pub fn complex(name: &str) -> Complex {
    match fixture(name).input {
        FixtureInput::Complex(c) => c,
        FixtureInput::Poly(p) => curve(&p).to_complex(),
        FixtureInput::Framework(_) => panic!("{name} is a framework"),
    }
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Property test settings with a pinned seed so every run sees the same cases.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Default::default()
    }
}
