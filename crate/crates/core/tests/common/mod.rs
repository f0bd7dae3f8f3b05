#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mixsing::mixed::{ExponentPair, MixedPolynomial};
use mixsing::rational::ComplexRational;

pub fn coeff(re: (i64, i64), im: (i64, i64)) -> ComplexRational {
    &ComplexRational::from_frac(re.0, re.1) + &(&ComplexRational::i() * &ComplexRational::from_frac(im.0, im.1))
}

/// Random mixed polynomial: up to `max_terms` terms, partial degrees ≤ 2.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_terms: usize) -> MixedPolynomial {
    let terms = rng.random_range(1..=max_terms);
    MixedPolynomial::from_terms(
        n,
        (0..terms).map(|_| {
            let nu = (0..n).map(|_| rng.random_range(0..=2)).collect();
            let mu = (0..n).map(|_| rng.random_range(0..=2)).collect();
            let c = coeff(
                (rng.random_range(-5..=5), rng.random_range(1..=4)),
                (rng.random_range(-5..=5), rng.random_range(1..=4)),
            );
            (ExponentPair::new(nu, mu), c)
        }),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius))).collect()
}

/// Proptest strategy for mixed polynomials in `n` variables.
pub fn poly_strategy(n: usize) -> impl Strategy<Value = MixedPolynomial> {
    let term = (
        prop::collection::vec(0u32..=2, n),
        prop::collection::vec(0u32..=2, n),
        (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5),
    );
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        MixedPolynomial::from_terms(
            n,
            ts.into_iter().map(|(nu, mu, (a, b, c, d))| (ExponentPair::new(nu, mu), coeff((a, b), (c, d)))),
        )
    })
}

pub fn point_strategy(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

/// Wirtinger derivatives by central differences in the real coordinates.
pub fn fd_wirtinger(f: &MixedPolynomial, z: &[Complex64], j: usize, h: f64) -> (Complex64, Complex64) {
    let c = f.compile();
    let shifted = |dz: Complex64| {
        let mut w = z.to_vec();
        w[j] += dz;
        c.eval(&w)
    };
    let dx = (shifted(Complex64::new(h, 0.0)) - shifted(Complex64::new(-h, 0.0))) / (2.0 * h);
    let dy = (shifted(Complex64::new(0.0, h)) - shifted(Complex64::new(0.0, -h))) / (2.0 * h);
    let i = Complex64::i();
    ((dx - i * dy) / 2.0, (dx + i * dy) / 2.0)
}
