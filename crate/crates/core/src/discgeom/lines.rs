//! Lines through the origin contained in, or tangent to, a plane curve.

use num_complex::Complex64;
use serde::Serialize;

use super::discriminant::PlaneCurve;
use super::roots::univariate_roots;
use crate::algebra::{coefficients_in, exact_div, gcd_all};
use crate::mixed::{ExponentPair, MixedPolynomial};
use crate::parser::format_named;
use crate::rational::{rationalize, ComplexRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    /// `{v = 0}`.
    AxisU,
    /// `{u = 0}`.
    AxisV,
    /// `{v = a·u}` with `a ≠ 0`.
    Slope,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineComponent {
    pub kind: LineKind,
    /// Exact slope when it lies in `Q(i)`.
    pub slope: Option<ComplexRational>,
    /// Numeric slope, also present for irrational slopes.
    pub slope_approx: Option<[f64; 2]>,
    /// Irreducible-over-`Q(i)` factor `G(a)` carrying irrational slopes.
    pub slope_factor: Option<String>,
}

impl LineComponent {
    fn axis(kind: LineKind) -> Self {
        Self { kind, slope: None, slope_approx: None, slope_factor: None }
    }

    pub fn is_axis(&self) -> bool {
        self.kind != LineKind::Slope
    }
}

/// `H(1, a)` as a polynomial in the second variable.
fn dehomogenize(h: &MixedPolynomial) -> MixedPolynomial {
    h.eval_var(0, &ComplexRational::one())
}

/// Lines common to every homogeneous form in `forms`.
fn common_lines(forms: &[MixedPolynomial]) -> Vec<LineComponent> {
    let mut out = Vec::new();
    let zero_on = |var_kept: usize| {
        forms.iter().all(|h| {
            let d = h.order().unwrap_or(0);
            let mut e = ExponentPair::zero(2);
            e.nu[var_kept] = d;
            h.coeff(&e).is_zero()
        })
    };
    if zero_on(0) {
        out.push(LineComponent::axis(LineKind::AxisU));
    }
    if zero_on(1) {
        out.push(LineComponent::axis(LineKind::AxisV));
    }
    let affine: Vec<MixedPolynomial> = forms.iter().map(dehomogenize).collect();
    let mut g = gcd_all(affine.iter(), 2);
    if g.is_zero() || g.is_constant() {
        return out;
    }
    // Strip the root a = 0, which is the u-axis.
    let a = MixedPolynomial::var(2, 1);
    while let Some(q) = exact_div(&g, &a) {
        g = q;
    }
    let mut slopes = Vec::new();
    let numeric: Vec<Complex64> = {
        let coeffs: Vec<Complex64> = coefficients_in(&g, 1).iter().map(|c| c.constant_term().to_complex64()).collect();
        univariate_roots(&coeffs)
    };
    for r in &numeric {
        let exact = rationalize(*r, 10_000);
        let lin = &a - &MixedPolynomial::constant(2, exact.clone());
        if let Some(q) = exact_div(&g, &lin) {
            g = q;
            slopes.push(exact);
        }
    }
    slopes.sort_by_key(|s| s.canonical_string());
    slopes.dedup();
    for s in slopes {
        let approx = s.to_complex64();
        out.push(LineComponent {
            kind: LineKind::Slope,
            slope: Some(s),
            slope_approx: Some([approx.re, approx.im]),
            slope_factor: None,
        });
    }
    if !g.is_constant() {
        let factor = format_named(&g, &["u", "a"]);
        let coeffs: Vec<Complex64> = coefficients_in(&g, 1).iter().map(|c| c.constant_term().to_complex64()).collect();
        for r in univariate_roots(&coeffs) {
            out.push(LineComponent {
                kind: LineKind::Slope,
                slope: None,
                slope_approx: Some([r.re, r.im]),
                slope_factor: Some(factor.clone()),
            });
        }
    }
    out
}

fn homogeneous_parts(h: &MixedPolynomial) -> Vec<MixedPolynomial> {
    (0..=h.total_degree()).map(|d| h.homogeneous_part(d)).filter(|p| !p.is_zero()).collect()
}

/// All lines through the origin contained in the curve: `h(u, a·u) ≡ 0`
/// means every homogeneous part vanishes at `(1, a)`.
pub fn line_components(curve: &PlaneCurve) -> Vec<LineComponent> {
    match curve {
        PlaneCurve::Curve(h) if h.constant_term().is_zero() => common_lines(&homogeneous_parts(h)),
        _ => Vec::new(),
    }
}

/// Lines of the tangent cone at the origin: the factors of the lowest
/// homogeneous part of `h`.
pub fn tangent_lines(curve: &PlaneCurve) -> Vec<LineComponent> {
    match curve {
        PlaneCurve::Curve(h) if h.constant_term().is_zero() => {
            let m = h.order().unwrap_or(0);
            common_lines(&[h.homogeneous_part(m)])
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::from_polynomial(&parse_with(s, &["u", "v"]).unwrap()).unwrap()
    }

    #[test]
    fn lines_of_simple_curves() {
        let l = line_components(&curve("v - u"));
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].slope, Some(ComplexRational::one()));
        let kinds: Vec<_> = line_components(&curve("u*v")).iter().map(|l| l.kind).collect();
        assert_eq!(kinds, vec![LineKind::AxisU, LineKind::AxisV]);
        assert!(line_components(&curve("v^2 - u^3")).is_empty());
    }

    #[test]
    fn complex_and_irrational_slopes() {
        let l = line_components(&curve("(v - i*u)*(v + 2*u)*(v^2 - u^3)"));
        let slopes: Vec<_> = l.iter().filter_map(|c| c.slope.clone()).collect();
        assert_eq!(slopes.len(), 2);
        assert!(slopes.contains(&ComplexRational::i()));
        assert!(slopes.contains(&ComplexRational::from_int(-2)));
        let l = line_components(&curve("v^2 - 2*u^2"));
        assert_eq!(l.len(), 2);
        assert!(l.iter().all(|c| c.slope.is_none() && c.slope_factor.is_some()));
        let r = l[0].slope_approx.unwrap();
        assert!((r[0].abs() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn tangent_cone_sees_curved_branches() {
        assert!(line_components(&curve("v - u - u^2")).is_empty());
        let t = tangent_lines(&curve("v - u - u^2"));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].slope, Some(ComplexRational::one()));
        let t = tangent_lines(&curve("v^2 - u^3"));
        assert_eq!(t.iter().map(|l| l.kind).collect::<Vec<_>>(), vec![LineKind::AxisU]);
    }
}
