//! Polynomial curve germs `t ↦ c(t)` in a real parameter and the exact
//! restriction of mixed polynomials to them.

use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::MixError;
use crate::mixed::MixedPolynomial;
use crate::parser::{format_named, parse_real_parameter_poly};
use crate::rational::{rat_to_f64, ComplexRational};

/// Univariate polynomial in real `t`, lowest degree first.
pub type TPoly = Vec<ComplexRational>;

/// Shell schedule `t_j = t0·ρ^j`, `j = 0..shells`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Schedule {
    pub t0: f64,
    pub rho: f64,
    pub shells: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Self { t0: 0.1, rho: 0.5, shells: 60 }
    }
}

impl Schedule {
    pub fn validate(&self) -> Result<(), MixError> {
        if !(self.t0 > 0.0 && self.rho > 0.0 && self.rho < 1.0 && self.shells >= 2) {
            return Err(MixError::InvalidArgument("schedule needs t0 > 0, 0 < rho < 1, shells >= 2".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.shells).map(move |j| self.t0 * self.rho.powi(j as i32))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveGerm {
    pub components: Vec<TPoly>,
}

impl CurveGerm {
    pub fn new(components: Vec<TPoly>) -> Result<Self, MixError> {
        if components.is_empty() {
            return Err(MixError::InvalidArgument("curve needs at least one component".into()));
        }
        Ok(Self { components })
    }

    /// Parses component strings such as `["t", "1", "0"]`.
    pub fn parse<S: AsRef<str>>(parts: &[S]) -> Result<Self, MixError> {
        let comps = parts
            .iter()
            .map(|s| parse_real_parameter_poly(s.as_ref()).map_err(MixError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(comps)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// `c(0)`.
    pub fn origin(&self) -> Vec<ComplexRational> {
        self.components.iter().map(|c| c.first().cloned().unwrap_or_else(ComplexRational::zero)).collect()
    }

    pub fn eval(&self, t: f64) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|c| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * t + a.to_complex64()))
            .collect()
    }

    /// Human-readable form `(c_1(t), …, c_n(t))`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let p = MixedPolynomial::from_terms(
                    1,
                    c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(d, a)| {
                        (crate::mixed::ExponentPair::new(vec![d as u32], vec![0]), a.clone())
                    }),
                );
                format_named(&p, &["t"]).trim_end_matches(" (n=1)").to_string()
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

pub(crate) fn tpoly_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ComplexRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

pub(crate) fn tpoly_add_scaled(acc: &mut TPoly, p: &TPoly, c: &ComplexRational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), ComplexRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += &(b * c);
    }
}

pub(crate) fn trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(ComplexRational::is_zero) {
        p.pop();
    }
    p
}

fn conj_poly(p: &TPoly) -> TPoly {
    p.iter().map(ComplexRational::conj).collect()
}

/// Restricts `F` to the curve: `F(c(t), conj(c(t)))` for real `t`, exactly.
pub fn restrict(f: &MixedPolynomial, curve: &CurveGerm) -> Result<TPoly, MixError> {
    if f.n_vars() != curve.dim() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: curve.dim() });
    }
    let mut cache: HashMap<(usize, bool, u32), TPoly> = HashMap::new();
    let mut power = |j: usize, conj: bool, e: u32| -> TPoly {
        if let Some(p) = cache.get(&(j, conj, e)) {
            return p.clone();
        }
        let base = if conj { conj_poly(&curve.components[j]) } else { curve.components[j].clone() };
        let mut p: TPoly = vec![ComplexRational::one()];
        for _ in 0..e {
            p = tpoly_mul(&p, &base);
        }
        cache.insert((j, conj, e), p.clone());
        p
    };
    let mut out: TPoly = Vec::new();
    for (e, c) in f.terms() {
        let mut m: TPoly = vec![ComplexRational::one()];
        for j in 0..f.n_vars() {
            if e.nu[j] > 0 {
                m = tpoly_mul(&m, &power(j, false, e.nu[j]));
            }
            if e.mu[j] > 0 {
                m = tpoly_mul(&m, &power(j, true, e.mu[j]));
            }
        }
        tpoly_add_scaled(&mut out, &m, c);
    }
    Ok(trim(out))
}

/// Real polynomial in `t`, lowest degree first.
pub type RPoly = Vec<BigRational>;

/// Splits a vector of complex `t`-polynomials into `2n` real polynomials,
/// interleaved `(Re c_1, Im c_1, Re c_2, …)`.
pub fn realify(v: &[TPoly]) -> Vec<RPoly> {
    let mut out = Vec::with_capacity(2 * v.len());
    for p in v {
        out.push(rtrim(p.iter().map(|c| c.re.clone()).collect()));
        out.push(rtrim(p.iter().map(|c| c.im.clone()).collect()));
    }
    out
}

pub(crate) fn rtrim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn rpoly_mul(a: &RPoly, b: &RPoly) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn rpoly_sub(a: &RPoly, b: &RPoly) -> RPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    rtrim(out)
}

/// Lowest degree with a nonzero coefficient.
pub(crate) fn rpoly_order(p: &RPoly) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

/// `p(t) / t^shift` evaluated in floating point; `shift` must not exceed the order.
pub(crate) fn rpoly_eval_shifted(p: &RPoly, shift: usize, t: f64) -> f64 {
    p.iter().skip(shift).rev().fold(0.0, |acc, c| acc * t + rat_to_f64(c))
}

/// Random rational point on the unit circle, `((1 − s²) + 2si)/(1 + s²)`.
pub fn rational_unit(rng: &mut impl Rng) -> ComplexRational {
    let s = ComplexRational::from_frac(rng.random_range(-12..=12), rng.random_range(1..=6));
    let s2 = &s * &s;
    let one = ComplexRational::one();
    let num = &(&one - &s2) + &(&ComplexRational::i() * &(&s + &s));
    &num / &(&one + &s2)
}

/// Monomial curves `b_j + w_j t^{a_j}` with `a ∈ {1,2,3}^n` (`n ≤ 3`, else
/// a seeded subset of 27 exponent vectors) and seeded unit `w_j`.
pub fn default_battery(base: &[ComplexRational], seed: u64) -> Vec<CurveGerm> {
    let n = base.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n.min(3) {
        exps = exps.into_iter().flat_map(|e| (1..=3).map(move |a| [e.clone(), vec![a]].concat())).collect();
    }
    if n > 3 {
        exps = (0..27).map(|_| (0..n).map(|_| rng.random_range(1..=3)).collect()).collect();
    }
    exps.into_iter()
        .map(|a| {
            let comps = (0..n)
                .map(|j| {
                    let mut c = vec![ComplexRational::zero(); a[j] as usize + 1];
                    c[0] = base[j].clone();
                    c[a[j] as usize] = rational_unit(&mut rng);
                    trim(c)
                })
                .collect();
            CurveGerm { components: comps }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    #[test]
    fn restriction_is_exact() {
        let f = parse_with("x*y*x~", &["x", "y"]).unwrap();
        let c = CurveGerm::parse(&["i*t", "1 + t^2"]).unwrap();
        // (it)(1+t^2)(-it) = t^2 + t^4
        let r = restrict(&f, &c).unwrap();
        let expect: TPoly = [0, 0, 1, 0, 1].iter().map(|&v| ComplexRational::from_int(v)).collect();
        assert_eq!(r, expect);
        assert_eq!(c.label(), "(1*i*t, 1 + 1*t^2)");
    }

    #[test]
    fn battery_shape() {
        let base = vec![ComplexRational::zero(), ComplexRational::zero(), ComplexRational::one()];
        let b = default_battery(&base, 7);
        assert_eq!(b.len(), 27);
        for c in &b {
            assert_eq!(c.origin(), base);
            for comp in &c.components {
                let lead = comp.last().unwrap();
                assert!(lead.norm_sqr() == num_rational::BigRational::from_integer(1.into()));
            }
        }
    }
}
