//! The real 2-plane of normals to the fibre of `F` through a point,
//! generated by `n_μ = μ·conj(dF) + μ̄·∂̄F` for `|μ| = 1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::MixError;
use crate::mixed::{CompiledPoly, ComplexPoint, MixedPolynomial};
use crate::rational::ComplexRational;

/// `n_μ = μ·holo + μ̄·anti` with `holo = conj(dF)` and `anti = ∂̄F`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicFamily {
    pub holo: Vec<MixedPolynomial>,
    pub anti: Vec<MixedPolynomial>,
}

impl SymbolicFamily {
    pub fn of(f: &MixedPolynomial) -> Self {
        let w = f.wirtinger();
        Self { holo: w.conj_d(), anti: w.dbar }
    }

    /// Family of `f·ḡ` written directly from the pair:
    /// `n_μ = μ·g·conj(df) + μ̄·f·conj(dg)`.
    pub fn of_pair(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<Self, MixError> {
        MixedPolynomial::from_pair(f, g)?;
        let n = f.n_vars();
        let holo = (0..n).map(|j| g * &f.d_z(j).conjugate()).collect();
        let anti = (0..n).map(|j| f * &g.d_z(j).conjugate()).collect();
        Ok(Self { holo, anti })
    }

    /// `(n_one, n_i)`, the members at `μ = 1` and `μ = i`; these are the
    /// complex forms of the real gradients of `Re F` and `Im F`.
    pub fn generators(&self) -> (Vec<MixedPolynomial>, Vec<MixedPolynomial>) {
        let i = ComplexRational::i();
        let one = self.holo.iter().zip(&self.anti).map(|(a, b)| a + b).collect();
        let imag = self.holo.iter().zip(&self.anti).map(|(a, b)| (a - b).scale(&i)).collect();
        (one, imag)
    }

    pub fn member(&self, mu: &ComplexRational) -> Vec<MixedPolynomial> {
        let mc = mu.conj();
        self.holo.iter().zip(&self.anti).map(|(a, b)| &a.scale(mu) + &b.scale(&mc)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalFrame {
    pub n_one: Vec<Complex64>,
    pub n_i: Vec<Complex64>,
}

impl NormalFrame {
    /// `n_μ = α·n_one + β·n_i` for `μ = α + iβ`.
    pub fn member(&self, mu: Complex64) -> Vec<Complex64> {
        self.n_one.iter().zip(&self.n_i).map(|(a, b)| a * mu.re + b * mu.im).collect()
    }

    pub fn is_degenerate(&self, tol: f64) -> bool {
        norm(&self.n_one) <= tol && norm(&self.n_i) <= tol
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Compiled `conj(dF)` and `∂̄F` for repeated numeric evaluation.
#[derive(Debug, Clone)]
pub struct FrameEvaluator {
    n: usize,
    holo: Vec<CompiledPoly>,
    anti: Vec<CompiledPoly>,
}

impl FrameEvaluator {
    pub fn new(f: &MixedPolynomial) -> Self {
        let fam = SymbolicFamily::of(f);
        Self {
            n: f.n_vars(),
            holo: fam.holo.iter().map(MixedPolynomial::compile).collect(),
            anti: fam.anti.iter().map(MixedPolynomial::compile).collect(),
        }
    }

    /// `(conj(dF)(z), ∂̄F(z))`.
    pub fn parts(&self, z: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        (self.holo.iter().map(|p| p.eval(z)).collect(), self.anti.iter().map(|p| p.eval(z)).collect())
    }

    pub fn frame(&self, z: &[Complex64]) -> NormalFrame {
        let (a, b) = self.parts(z);
        let i = Complex64::i();
        NormalFrame {
            n_one: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            n_i: a.iter().zip(&b).map(|(x, y)| i * (x - y)).collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }
}

pub fn normal_family(f: &MixedPolynomial, z: &ComplexPoint) -> Result<NormalFrame, MixError> {
    if z.dim() != f.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: z.dim() });
    }
    Ok(FrameEvaluator::new(f).frame(&z.coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn p(s: &str) -> MixedPolynomial {
        parse_with(s, &XYZ).unwrap()
    }

    #[test]
    fn displayed_families() {
        let fam = SymbolicFamily::of(&p("(x^2 - z*y^2)*y~"));
        assert_eq!(fam.holo, vec![p("2*x~*y"), p("-2*y*y~*z~"), p("-y~^2*y")]);
        assert_eq!(fam.anti, vec![p("0"), p("x^2 - z*y^2"), p("0")]);
        let fam = SymbolicFamily::of(&p("x~*y*(x+z^3)"));
        assert_eq!(fam.holo, vec![p("x*y~"), p("x*x~ + x*z~^3"), p("3*x*z~^2*y~")]);
        assert_eq!(fam.anti, vec![p("y*(x+z^3)"), p("0"), p("0")]);
        let pair = SymbolicFamily::of_pair(&p("y*(x+z^3)"), &p("x")).unwrap();
        assert_eq!(pair, fam);
    }

    #[test]
    fn frame_at_a_point() {
        let f = p("(x^2 - z*y^2)*y~");
        let one = Complex64::new(1.0, 0.0);
        let z = ComplexPoint::new(vec![one, one, Complex64::new(0.0, 0.0)]).unwrap();
        let fr = normal_family(&f, &z).unwrap();
        let expect = [Complex64::new(2.0, 0.0), one, -one];
        for (a, b) in fr.n_one.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
