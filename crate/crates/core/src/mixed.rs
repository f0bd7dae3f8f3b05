//! Mixed polynomials `F(z, z̄) = Σ c_{ν,μ} z^ν z̄^μ` with exact coefficients,
//! conjugation and Wirtinger differentiation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::MixError;
use crate::rational::ComplexRational;

/// Holomorphic multi-index `ν` and anti-holomorphic multi-index `μ` of a
/// monomial `z^ν z̄^μ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentPair {
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
}

impl ExponentPair {
    pub fn zero(n: usize) -> Self {
        Self { nu: vec![0; n], mu: vec![0; n] }
    }

    pub fn new(nu: Vec<u32>, mu: Vec<u32>) -> Self {
        assert_eq!(nu.len(), mu.len(), "exponent vectors must share the variable count");
        Self { nu, mu }
    }

    pub fn n_vars(&self) -> usize {
        self.nu.len()
    }

    pub fn degree(&self) -> u32 {
        self.nu.iter().chain(self.mu.iter()).sum()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.mu.iter().all(|&e| e == 0)
    }

    pub fn swapped(&self) -> Self {
        Self { nu: self.mu.clone(), mu: self.nu.clone() }
    }

    /// `ν − μ` as signed integers.
    pub fn difference(&self) -> Vec<i64> {
        self.nu.iter().zip(&self.mu).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    fn combine(&self, other: &Self) -> Self {
        Self {
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a + b).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when the monomial division is exact.
    pub(crate) fn checked_div(&self, other: &Self) -> Option<Self> {
        let nu = self
            .nu
            .iter()
            .zip(&other.nu)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { nu, mu })
    }

    /// Least common multiple of two monomials.
    pub(crate) fn lcm(&self, other: &Self) -> Self {
        Self {
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| *a.max(b)).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub(crate) fn is_coprime(&self, other: &Self) -> bool {
        self.nu.iter().zip(&other.nu).all(|(a, b)| *a == 0 || *b == 0)
            && self.mu.iter().zip(&other.mu).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Graded lexicographic order on the concatenation `(ν, μ)`.
impl Ord for ExponentPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.nu.cmp(&other.nu))
            .then_with(|| self.mu.cmp(&other.mu))
    }
}

impl PartialOrd for ExponentPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint {
    pub coords: Vec<Complex64>,
}

impl ComplexPoint {
    /// Rejects non-finite coordinates.
    pub fn new(coords: Vec<Complex64>) -> Result<Self, MixError> {
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(MixError::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl From<Vec<Complex64>> for ComplexPoint {
    fn from(coords: Vec<Complex64>) -> Self {
        Self { coords }
    }
}

/// Exact mixed polynomial in `n_vars` complex variables and their conjugates.
///
/// Terms live in a `BTreeMap` keyed by [`ExponentPair`], so iteration follows
/// the canonical graded lexicographic order and zero coefficients are never
/// stored. The zero polynomial keeps its variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MixedPolynomial {
    n_vars: usize,
    terms: BTreeMap<ExponentPair, ComplexRational>,
}

/// Formal partial derivatives in `z_j` and `z̄_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerGradient {
    pub d: Vec<MixedPolynomial>,
    pub dbar: Vec<MixedPolynomial>,
}

impl MixedPolynomial {
    pub fn zero(n_vars: usize) -> Self {
        Self { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: ComplexRational) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(ExponentPair::zero(n_vars), c);
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, ComplexRational::one())
    }

    /// The coordinate `z_j` (0-based).
    pub fn var(n_vars: usize, j: usize) -> Self {
        assert!(j < n_vars);
        let mut e = ExponentPair::zero(n_vars);
        e.nu[j] = 1;
        Self::monomial(e, ComplexRational::one())
    }

    /// The conjugate coordinate `z̄_j` (0-based).
    pub fn conj_var(n_vars: usize, j: usize) -> Self {
        assert!(j < n_vars);
        let mut e = ExponentPair::zero(n_vars);
        e.mu[j] = 1;
        Self::monomial(e, ComplexRational::one())
    }

    pub fn monomial(e: ExponentPair, c: ComplexRational) -> Self {
        let mut p = Self::zero(e.n_vars());
        p.add_term(e, c);
        p
    }

    /// Builds a polynomial from raw terms; repeated exponents are summed.
    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (ExponentPair, ComplexRational)>,
    ) -> Self {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            assert_eq!(e.n_vars(), n_vars, "term arity differs from n_vars");
            p.add_term(e, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentPair, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExponentPair) -> ComplexRational {
        self.terms.get(e).cloned().unwrap_or_else(ComplexRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    /// Constant coefficient (value at the origin).
    pub fn constant_term(&self) -> ComplexRational {
        self.coeff(&ExponentPair::zero(self.n_vars))
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(ExponentPair::is_holomorphic)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(ExponentPair::degree).max().unwrap_or(0)
    }

    /// Largest term in the canonical order.
    pub fn leading_term(&self) -> Option<(&ExponentPair, &ComplexRational)> {
        self.terms.iter().next_back()
    }

    /// Indices of variables occurring in `z` or `z̄`.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|&j| self.terms.keys().any(|e| e.nu[j] > 0 || e.mu[j] > 0))
            .collect()
    }

    pub(crate) fn add_term(&mut self, e: ExponentPair, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// `self -= c·m·other`, in place.
    pub(crate) fn sub_scaled_monomial(&mut self, other: &Self, m: &ExponentPair, c: &ComplexRational) {
        for (e, v) in &other.terms {
            self.add_term(e.combine(m), -(v * c));
        }
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &ExponentPair, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(k, v)| (k.combine(e), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n_vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `conj(F)`: swaps `ν ↔ μ` and conjugates each coefficient.
    pub fn conjugate(&self) -> Self {
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.swapped(), c.conj())).collect(),
        }
    }

    /// `∂F/∂z_j`, treating `z̄_j` as independent.
    pub fn d_z(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e.nu[j] > 0 {
                let mut e2 = e.clone();
                e2.nu[j] -= 1;
                out.add_term(e2, c * &ComplexRational::from_int(e.nu[j] as i64));
            }
        }
        out
    }

    /// `∂F/∂z̄_j`, treating `z_j` as independent.
    pub fn d_zbar(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e.mu[j] > 0 {
                let mut e2 = e.clone();
                e2.mu[j] -= 1;
                out.add_term(e2, c * &ComplexRational::from_int(e.mu[j] as i64));
            }
        }
        out
    }

    pub fn wirtinger(&self) -> WirtingerGradient {
        WirtingerGradient {
            d: (0..self.n_vars).map(|j| self.d_z(j)).collect(),
            dbar: (0..self.n_vars).map(|j| self.d_zbar(j)).collect(),
        }
    }

    /// Numeric value at `z`; coefficients are converted to floats here and
    /// nowhere earlier.
    pub fn evaluate(&self, z: &ComplexPoint) -> Result<Complex64, MixError> {
        if z.dim() != self.n_vars {
            return Err(MixError::DimensionMismatch { expected: self.n_vars, found: z.dim() });
        }
        Ok(self.eval_slice(&z.coords))
    }

    pub(crate) fn eval_slice(&self, z: &[Complex64]) -> Complex64 {
        let zc: Vec<Complex64> = z.iter().map(|c| c.conj()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.to_complex64();
            for j in 0..self.n_vars {
                if e.nu[j] > 0 {
                    m *= z[j].powu(e.nu[j]);
                }
                if e.mu[j] > 0 {
                    m *= zc[j].powu(e.mu[j]);
                }
            }
            acc += m;
        }
        acc
    }

    /// Exact value at a Gaussian-rational point.
    pub fn evaluate_exact(&self, z: &[ComplexRational]) -> Result<ComplexRational, MixError> {
        if z.len() != self.n_vars {
            return Err(MixError::DimensionMismatch { expected: self.n_vars, found: z.len() });
        }
        let zc: Vec<ComplexRational> = z.iter().map(ComplexRational::conj).collect();
        let mut acc = ComplexRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for j in 0..self.n_vars {
                if e.nu[j] > 0 {
                    m = &m * &z[j].pow(e.nu[j]);
                }
                if e.mu[j] > 0 {
                    m = &m * &zc[j].pow(e.mu[j]);
                }
            }
            acc += &m;
        }
        Ok(acc)
    }

    /// `f · conj(g)` for holomorphic `f`, `g` on the same variables.
    pub fn from_pair(f: &Self, g: &Self) -> Result<Self, MixError> {
        if f.n_vars != g.n_vars {
            return Err(MixError::DimensionMismatch { expected: f.n_vars, found: g.n_vars });
        }
        if !f.is_holomorphic() || !g.is_holomorphic() {
            return Err(MixError::NotHolomorphic);
        }
        Ok(f * &g.conjugate())
    }

    /// Re-embeds into a ring with more variables; variable `j` maps to
    /// `positions[j]`.
    pub fn embed(&self, n_vars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.n_vars);
        let mut out = Self::zero(n_vars);
        for (e, c) in &self.terms {
            let mut e2 = ExponentPair::zero(n_vars);
            for (j, &p) in positions.iter().enumerate() {
                e2.nu[p] += e.nu[j];
                e2.mu[p] += e.mu[j];
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitutes the holomorphic polynomial `value` for `z_j`. The input
    /// must not contain `z̄_j`.
    pub fn substitute(&self, j: usize, value: &Self) -> Self {
        assert_eq!(value.n_vars, self.n_vars);
        let mut powers: Vec<Self> = vec![Self::one(self.n_vars)];
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            assert_eq!(e.mu[j], 0, "substitution target appears conjugated");
            let k = e.nu[j] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest.nu[j] = 0;
            out = &out + &powers[k].mul_monomial(&rest, c);
        }
        out
    }

    /// Replaces `z_j` by the constant `c`.
    pub fn eval_var(&self, j: usize, c: &ComplexRational) -> Self {
        self.substitute(j, &Self::constant(self.n_vars, c.clone()))
    }

    /// Keeps only the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest total degree among terms, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(ExponentPair::degree).min()
    }

    /// Divides by the leading coefficient so the leading term is monic.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Compiles coefficients to floats for fast repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (c.to_complex64(), e.nu.clone(), e.mu.clone()))
                .collect(),
        }
    }
}

/// Float snapshot of a [`MixedPolynomial`] for hot evaluation loops.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    n_vars: usize,
    terms: Vec<(Complex64, Vec<u32>, Vec<u32>)>,
}

impl CompiledPoly {
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.n_vars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, nu, mu) in &self.terms {
            let mut m = *c;
            for j in 0..self.n_vars {
                if nu[j] > 0 {
                    m *= z[j].powu(nu[j]);
                }
                if mu[j] > 0 {
                    m *= z[j].conj().powu(mu[j]);
                }
            }
            acc += m;
        }
        acc
    }
}

impl fmt::Debug for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::format(self))
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::format(self))
    }
}

impl<'a> Add<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MixedPolynomial> for &'a MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = MixedPolynomial::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.combine(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn neg(self) -> MixedPolynomial {
        MixedPolynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<MixedPolynomial> for MixedPolynomial {
            type Output = MixedPolynomial;
            fn $m(self, rhs: MixedPolynomial) -> MixedPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl WirtingerGradient {
    pub fn n_vars(&self) -> usize {
        self.d.len()
    }

    /// `conj(dF)` componentwise.
    pub fn conj_d(&self) -> Vec<MixedPolynomial> {
        self.d.iter().map(MixedPolynomial::conjugate).collect()
    }
}
