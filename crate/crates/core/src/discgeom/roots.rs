//! Numeric roots of univariate complex polynomials (companion-matrix Schur
//! form followed by Newton polishing).

use nalgebra::DMatrix;
use num_complex::Complex64;

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All roots of `Σ coeffs[k] x^k`, with multiplicity. Trailing zero
/// coefficients are dropped; a constant polynomial has no roots.
pub fn univariate_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let mut zeros = 0;
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return roots;
    }
    let lead = c[deg];
    let mut m = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -c[i] / lead;
    }
    let eig = nalgebra::Schur::new(m)
        .eigenvalues()
        .expect("complex Schur form is triangular");
    for mut x in eig.iter().copied() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, x);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-3 * (1.0 + x.norm()) {
                break;
            }
            x -= step;
        }
        roots.push(x);
    }
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_known_polynomials() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        // (x - 1)(x + 2)(x - i) = x^3 + (1 - i) x^2 + (-2 - i) x + 2i
        let r = univariate_roots(&[c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)]);
        let expect = [c(-2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)];
        for (a, b) in r.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
        assert_eq!(univariate_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]).len(), 2);
        assert!(univariate_roots(&[c(5.0, 0.0)]).is_empty());
    }
}
