use nalgebra::{DVector, Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::MixError;
use crate::mixed::{ComplexPoint, MixedPolynomial};
use crate::thomprobe::frame::{norm, FrameEvaluator};
use crate::thomprobe::grassmann::{to_real, Subspace};

/// Rank tolerance for the numeric normal plane.
pub const FRAME_RANK_TOL: f64 = 1e-12;

/// `(‖a‖‖b‖ − |⟨a,b⟩|) + (‖a‖ − ‖b‖)²` for `a = conj(dF)(z)`, `b = ∂̄F(z)`:
/// zero exactly when `a = λ·b` for some `|λ| = 1` (including `a = b = 0`).
pub fn sing_residual_parts(a: &[Complex64], b: &[Complex64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    ((na * nb - inner.norm()).max(0.0)) + (na - nb).powi(2)
}

pub fn sing_residual(f: &MixedPolynomial, z: &ComplexPoint) -> Result<f64, MixError> {
    check_dim(f, z)?;
    let (a, b) = FrameEvaluator::new(f).parts(&z.coords);
    Ok(sing_residual_parts(&a, &b))
}

/// Scale-free variant: the residual divided by `(‖a‖ + ‖b‖)²`, in `[0, 1]`.
pub fn relative_sing_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let s = (norm(a) + norm(b)).powi(2);
    if s == 0.0 {
        0.0
    } else {
        sing_residual_parts(a, b) / s
    }
}

fn check_dim(f: &MixedPolynomial, z: &ComplexPoint) -> Result<(), MixError> {
    if z.dim() != f.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: z.dim() });
    }
    Ok(())
}

/// Distance from `z/|z|` to the real normal plane of the fibre through `z`.
pub fn milnor_residual_with(eval: &FrameEvaluator, z: &[Complex64]) -> Result<f64, MixError> {
    let r = norm(z);
    if r == 0.0 {
        return Err(MixError::InvalidArgument("milnor residual is undefined at the origin".into()));
    }
    let fr = eval.frame(z);
    let plane = Subspace::span(&[to_real(&fr.n_one), to_real(&fr.n_i)], FRAME_RANK_TOL, 2 * z.len());
    if plane.dim() == 0 {
        return Err(MixError::DegenerateFrame);
    }
    let radial: DVector<f64> = to_real(z) / r;
    Ok((&radial - plane.project(&radial)).norm().clamp(0.0, 1.0))
}

pub fn milnor_residual(f: &MixedPolynomial, z: &ComplexPoint) -> Result<f64, MixError> {
    check_dim(f, z)?;
    milnor_residual_with(&FrameEvaluator::new(f), &z.coords)
}

/// First-order distance from `z` to `V = F⁻¹(0)`: the Gauss–Newton step
/// `‖Jᵀ(JJᵀ)⁺ (Re F, Im F)‖` with `J` the real Jacobian of `(Re F, Im F)`.
pub fn distance_to_zero_set(eval: &FrameEvaluator, value: Complex64, z: &[Complex64]) -> f64 {
    let fr = eval.frame(z);
    let g1 = to_real(&fr.n_one);
    let g2 = to_real(&fr.n_i);
    let gram = Matrix2::new(g1.dot(&g1), g1.dot(&g2), g2.dot(&g1), g2.dot(&g2));
    let rhs = Vector2::new(value.re, value.im);
    let coef = match gram.try_inverse() {
        Some(inv) if gram.determinant().abs() > 1e-24 * gram.norm_squared() => inv * rhs,
        _ => gram.pseudo_inverse(1e-14).map(|p| p * rhs).unwrap_or_else(|_| Vector2::zeros()),
    };
    (g1 * coef[0] + g2 * coef[1]).norm()
}
