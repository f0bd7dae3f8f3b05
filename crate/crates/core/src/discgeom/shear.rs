//! Shears `(f + λ g^k, g)` that move a discriminant off non-axis lines.

use serde::Serialize;

use super::jacobian::check_pair;
use super::verdict::{isolated_value_verdict_with, Isolation, IsolatedVerdict, VerdictOptions};
use crate::error::MixError;
use crate::mixed::MixedPolynomial;
use crate::rational::ComplexRational;

pub const DEFAULT_MAX_K: u32 = 8;

pub fn axis_shear(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
    k: u32,
    lambda: &ComplexRational,
) -> Result<(MixedPolynomial, MixedPolynomial), MixError> {
    check_pair(f, g)?;
    if k == 0 {
        return Err(MixError::InvalidArgument("shear exponent k must be positive".into()));
    }
    Ok((f + &g.pow(k).scale(lambda), g.clone()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShearAttempt {
    pub k: u32,
    pub status: Option<Isolation>,
    /// Set when the candidate could not be decided (e.g. degree bound).
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShearResult {
    pub k: u32,
    pub f: MixedPolynomial,
    pub g: MixedPolynomial,
    pub verdict: IsolatedVerdict,
    /// The unsheared pair was isolated already.
    pub already_isolated: bool,
    pub attempts: Vec<ShearAttempt>,
}

/// Smallest `k ∈ 2..=max_k` whose shear has an isolated critical value.
pub fn shear_search(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
    lambda: &ComplexRational,
    max_k: u32,
    opts: &VerdictOptions,
) -> Result<ShearResult, MixError> {
    let original = isolated_value_verdict_with(f, g, opts)?;
    let already_isolated = original.status == Isolation::Isolated;
    let mut attempts = Vec::new();
    for k in 2..=max_k {
        let (fs, gs) = axis_shear(f, g, k, lambda)?;
        match isolated_value_verdict_with(&fs, &gs, opts) {
            Ok(v) => {
                attempts.push(ShearAttempt { k, status: Some(v.status), error: None });
                if v.status == Isolation::Isolated {
                    return Ok(ShearResult { k, f: fs, g: gs, verdict: v, already_isolated, attempts });
                }
            }
            Err(MixError::DegreeBound { .. }) => {
                // Larger k only raises the degree further.
                attempts.push(ShearAttempt { k, status: None, error: Some("degree bound exceeded".into()) });
                break;
            }
            Err(e) => attempts.push(ShearAttempt { k, status: None, error: Some(e.to_string()) }),
        }
    }
    Err(MixError::SearchExhausted { max_k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discgeom::verdict::Criterion;
    use crate::parser::parse_with;

    fn p(s: &str) -> MixedPolynomial {
        parse_with(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn shear_formula() {
        let (fs, gs) = axis_shear(&p("x"), &p("x+y^2"), 2, &ComplexRational::one()).unwrap();
        assert_eq!(fs, p("x + (x+y^2)^2"));
        assert_eq!(gs, p("x+y^2"));
    }

    #[test]
    fn search_outcomes() {
        let one = ComplexRational::one();
        let r = shear_search(&p("x^2"), &p("y^3"), &one, 8, &VerdictOptions::default()).unwrap();
        assert_eq!((r.k, r.already_isolated), (2, true));
        let lines = VerdictOptions { criterion: Criterion::LineComponents, branches: Vec::new() };
        let r = shear_search(&p("x"), &p("x+y^2"), &one, 8, &lines).unwrap();
        assert_eq!((r.k, r.already_isolated), (2, false));
        assert!(matches!(
            shear_search(&p("x"), &p("x+y^2"), &one, 8, &VerdictOptions::default()),
            Err(MixError::SearchExhausted { max_k: 8 })
        ));
    }
}
