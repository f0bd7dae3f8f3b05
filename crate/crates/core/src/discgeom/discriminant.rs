//! Discriminant curves of holomorphic pairs `(f, g)` on `C²`.
//!
//! The curve is the image of `{J = 0}` under `(f, g)`. It is eliminated with
//! iterated resultants after a shear `x = X + cY`, once per shear parameter
//! `c`; a factor coming from two different critical points over the same `X`
//! moves with `c`, so the gcd over several shears keeps only the image curve.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jacobian::{check_pair, jacobian_det};
use super::roots::univariate_roots;
use crate::algebra::{coefficients_in, degree_in, gcd, resultant, squarefree};
use crate::error::MixError;
use crate::mixed::{ExponentPair, MixedPolynomial};
use crate::rational::ComplexRational;

/// Total degree bound for elimination inputs.
pub const DEGREE_BOUND: u32 = 8;

/// Bound on the predicted degree of the eliminated curve; past it the exact
/// gcd and squarefree steps get too expensive.
pub const ELIMINANT_DEGREE_BOUND: u32 = 40;

const SHEARS: [i64; 6] = [1, 2, 3, 5, 7, 11];
const SAMPLE_SEED: u64 = 0x0d15_c0de;
const CONTAINMENT_TOL: f64 = 1e-8;

/// Germ of the discriminant at the origin of the target plane.
#[derive(Debug, Clone, PartialEq)]
pub enum PlaneCurve {
    /// Squarefree defining polynomial `h(u, v)` in two variables.
    Curve(MixedPolynomial),
    /// The critical set is nonempty and every critical value near `0` is `0`.
    OriginOnly,
    /// No critical points map near the origin.
    Empty,
}

impl PlaneCurve {
    /// Builds a curve from any nonzero polynomial, taking its squarefree part.
    pub fn from_polynomial(h: &MixedPolynomial) -> Result<Self, MixError> {
        if h.n_vars() != 2 {
            return Err(MixError::WrongArity { expected: 2, found: h.n_vars() });
        }
        if !h.is_holomorphic() {
            return Err(MixError::NotHolomorphic);
        }
        if h.is_zero() {
            return Err(MixError::ZeroPolynomial);
        }
        if h.is_constant() {
            return Ok(PlaneCurve::Empty);
        }
        Ok(PlaneCurve::Curve(squarefree(h)))
    }

    pub fn polynomial(&self) -> Option<&MixedPolynomial> {
        match self {
            PlaneCurve::Curve(h) => Some(h),
            _ => None,
        }
    }

    /// Whether the curve passes through `(0, 0)`; components missing the
    /// origin do not belong to the germ and are flagged by callers.
    pub fn passes_through_origin(&self) -> bool {
        match self {
            PlaneCurve::Curve(h) => h.constant_term().is_zero(),
            PlaneCurve::OriginOnly => true,
            PlaneCurve::Empty => false,
        }
    }
}

/// Drops variables `X, Y` from a polynomial in `(X, Y, u, v)`.
fn to_uv(p: &MixedPolynomial) -> MixedPolynomial {
    MixedPolynomial::from_terms(
        2,
        p.terms().map(|(e, c)| {
            debug_assert!(e.nu[0] == 0 && e.nu[1] == 0);
            (ExponentPair::new(vec![e.nu[2], e.nu[3]], vec![0, 0]), c.clone())
        }),
    )
}

fn eliminant(f: &MixedPolynomial, g: &MixedPolynomial, jac: &MixedPolynomial, c: i64) -> Result<MixedPolynomial, MixError> {
    let pos = [0, 1];
    let shear = &MixedPolynomial::var(4, 0) + &MixedPolynomial::var(4, 1).scale(&ComplexRational::from_int(c));
    let lift = |p: &MixedPolynomial| p.embed(4, &pos).substitute(0, &shear);
    let fu = &lift(f) - &MixedPolynomial::var(4, 2);
    let gv = &lift(g) - &MixedPolynomial::var(4, 3);
    let j = lift(jac);
    let r1 = resultant(&fu, &j, 1);
    let r2 = resultant(&gv, &j, 1);
    let deg = |p: &MixedPolynomial, v: usize| degree_in(p, v).unwrap_or(0);
    let predicted = deg(&r2, 0) * deg(&r1, 2) + deg(&r1, 0) * deg(&r2, 3);
    if predicted > ELIMINANT_DEGREE_BOUND {
        return Err(MixError::DegreeBound { degree: predicted, bound: ELIMINANT_DEGREE_BOUND });
    }
    Ok(to_uv(&resultant(&r1, &r2, 0)))
}

/// Discriminant curve germ of `(f, g)` at the origin.
pub fn discriminant_curve(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<PlaneCurve, MixError> {
    let n = check_pair(f, g)?;
    if n != 2 {
        return Err(MixError::WrongArity { expected: 2, found: n });
    }
    for p in [f, g] {
        if p.total_degree() > DEGREE_BOUND {
            return Err(MixError::DegreeBound { degree: p.total_degree(), bound: DEGREE_BOUND });
        }
    }
    let jac = jacobian_det(f, g)?;
    if jac.is_zero() {
        return Err(MixError::EliminationDegenerate("f and g are functionally dependent".into()));
    }
    if jac.is_constant() {
        return Ok(PlaneCurve::Empty);
    }

    let mut h = MixedPolynomial::zero(2);
    let mut used = 0;
    for c in SHEARS {
        let e = eliminant(f, g, &jac, c)?;
        if e.is_zero() {
            continue;
        }
        let next = gcd(&h, &e);
        used += 1;
        let stable = next == h;
        h = next;
        if used >= 3 && stable {
            break;
        }
    }
    if used == 0 {
        return Err(MixError::EliminationDegenerate("every sheared resultant vanished".into()));
    }
    let through_origin = jac.constant_term().is_zero();
    let curve = if h.is_constant() {
        if through_origin {
            PlaneCurve::OriginOnly
        } else {
            PlaneCurve::Empty
        }
    } else {
        PlaneCurve::Curve(squarefree(&h))
    };
    if let PlaneCurve::Curve(h) = &curve {
        let bad = containment_failures(f, g, &jac, h, 20, SAMPLE_SEED);
        if bad > 0 {
            return Err(MixError::EliminationDegenerate(format!(
                "{bad} sampled critical values are off the eliminated curve"
            )));
        }
    }
    Ok(curve)
}

/// Relative size of `h(u, v)` against the sum of its term magnitudes.
pub fn relative_residual(h: &MixedPolynomial, u: Complex64, v: Complex64) -> f64 {
    let pt = [u, v];
    let scale: f64 = h
        .terms()
        .map(|(e, c)| c.to_complex64().norm() * u.norm().powi(e.nu[0] as i32) * v.norm().powi(e.nu[1] as i32))
        .sum();
    h.eval_slice(&pt).norm() / scale.max(f64::MIN_POSITIVE)
}

/// Numeric points of `{J = 0}`: random `x` (or `y` when `J` ignores `y`),
/// then roots in the other variable.
pub fn sample_critical_points(jac: &MixedPolynomial, count: usize, seed: u64) -> Vec<[Complex64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let solve_var = if degree_in(jac, 1).unwrap_or(0) > 0 { 1 } else { 0 };
    let fixed_var = 1 - solve_var;
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 10 * count {
        attempts += 1;
        let a = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let coeffs: Vec<Complex64> = coefficients_in(jac, solve_var)
            .iter()
            .map(|c| {
                let mut pt = [Complex64::new(0.0, 0.0); 2];
                pt[fixed_var] = a;
                c.eval_slice(&pt)
            })
            .collect();
        for r in univariate_roots(&coeffs) {
            let mut pt = [Complex64::new(0.0, 0.0); 2];
            pt[fixed_var] = a;
            pt[solve_var] = r;
            out.push(pt);
        }
    }
    out.truncate(count);
    out
}

/// Number of sampled critical points whose image is not on `h = 0`.
pub fn containment_failures(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
    jac: &MixedPolynomial,
    h: &MixedPolynomial,
    count: usize,
    seed: u64,
) -> usize {
    let fc = f.compile();
    let gc = g.compile();
    sample_critical_points(jac, count, seed)
        .into_iter()
        .filter(|pt| relative_residual(h, fc.eval(pt), gc.eval(pt)) > CONTAINMENT_TOL)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    fn p(s: &str) -> MixedPolynomial {
        parse_with(s, &["x", "y"]).unwrap()
    }
    fn uv(s: &str) -> MixedPolynomial {
        parse_with(s, &["u", "v"]).unwrap()
    }

    #[test]
    fn classic_pairs() {
        assert_eq!(discriminant_curve(&p("x"), &p("x+y^2")).unwrap(), PlaneCurve::Curve(uv("u - v")));
        assert_eq!(discriminant_curve(&p("x*y"), &p("x")).unwrap(), PlaneCurve::OriginOnly);
        assert_eq!(discriminant_curve(&p("x^2"), &p("y^3")).unwrap(), PlaneCurve::Curve(uv("u*v")));
    }

    #[test]
    fn curved_and_empty_discriminants() {
        let c = discriminant_curve(&p("x"), &p("x+x^2+y^2")).unwrap();
        assert_eq!(c, PlaneCurve::Curve(uv("v - u - u^2").monic()));
        assert_eq!(discriminant_curve(&p("x"), &p("y")).unwrap(), PlaneCurve::Empty);
        let c = discriminant_curve(&p("x^2 + y"), &p("y^2 + x^3")).unwrap();
        assert!(c.passes_through_origin());
    }
}
