use crate::error::MixError;
use crate::mixed::MixedPolynomial;

/// Rejects pairs that are not holomorphic on a common set of variables.
pub fn check_pair(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<usize, MixError> {
    if f.n_vars() != g.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: g.n_vars() });
    }
    if !f.is_holomorphic() || !g.is_holomorphic() {
        return Err(MixError::NotHolomorphic);
    }
    Ok(f.n_vars())
}

/// `det [[∂f/∂x, ∂f/∂y], [∂g/∂x, ∂g/∂y]]` for a pair in two variables.
pub fn jacobian_det(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<MixedPolynomial, MixError> {
    let n = check_pair(f, g)?;
    if n != 2 {
        return Err(MixError::WrongArity { expected: 2, found: n });
    }
    Ok(&(&f.d_z(0) * &g.d_z(1)) - &(&f.d_z(1) * &g.d_z(0)))
}

/// All nonzero 2×2 minors of the holomorphic Jacobian of `(f, g)`; their
/// common zero set is the critical locus `Sing(f, g)`.
pub fn jacobian_minors(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<Vec<MixedPolynomial>, MixError> {
    let n = check_pair(f, g)?;
    let df: Vec<_> = (0..n).map(|j| f.d_z(j)).collect();
    let dg: Vec<_> = (0..n).map(|j| g.d_z(j)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    fn p(s: &str) -> MixedPolynomial {
        parse_with(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(jacobian_det(&p("x"), &p("x+y^2")).unwrap(), p("2*y"));
        assert_eq!(jacobian_det(&p("x*y"), &p("x")).unwrap(), p("-x"));
        assert_eq!(jacobian_det(&p("x^2"), &p("y^3")).unwrap(), p("6*x*y^2"));
        assert!(matches!(jacobian_det(&p("x~"), &p("y")), Err(MixError::NotHolomorphic)));
    }

    #[test]
    fn minors_in_three_variables() {
        let v = ["x", "y", "z"];
        let f = parse_with("y*(x+z^2)", &v).unwrap();
        let g = parse_with("x", &v).unwrap();
        let m = jacobian_minors(&f, &g).unwrap();
        assert_eq!(m, vec![parse_with("-(x+z^2)", &v).unwrap(), parse_with("-2*y*z", &v).unwrap()]);
    }
}
