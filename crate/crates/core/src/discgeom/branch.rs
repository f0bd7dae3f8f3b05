//! Puiseux branches `u = t^p`, `v = Σ a_i t^{q_i}` of a discriminant curve
//! and the behaviour of `u·v̄` restricted to them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{MixError, ParseError};
use crate::parser::parse_real_parameter_poly;
use crate::rational::ComplexRational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PuiseuxBranch {
    pub p: u32,
    /// `(a_i, q_i)` with nonzero `a_i` and strictly increasing `q_i ≥ 1`.
    pub terms: Vec<(ComplexRational, u32)>,
}

impl PuiseuxBranch {
    pub fn new(p: u32, terms: Vec<(ComplexRational, u32)>) -> Result<Self, MixError> {
        if p == 0 {
            return Err(MixError::InvalidArgument("branch exponent p must be positive".into()));
        }
        if terms.is_empty() || terms.iter().any(|(a, q)| a.is_zero() || *q == 0) {
            return Err(MixError::InvalidArgument("branch terms must be nonzero with positive exponents".into()));
        }
        if terms.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(MixError::InvalidArgument("branch exponents must increase strictly".into()));
        }
        Ok(Self { p, terms })
    }

    /// Parses `"u = t^p; v = a1*t^q1 + a2*t^q2 + ..."`.
    pub fn parse(text: &str) -> Result<Self, MixError> {
        let (u_part, v_part) = text
            .split_once(';')
            .ok_or_else(|| ParseError::new(text.len(), "expected `u = ...; v = ...`"))?;
        let rhs = |part: &str, name: &str, base: usize| -> Result<(String, usize), MixError> {
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| ParseError::new(base, format!("expected `{name} = ...`")))?;
            if lhs.trim() != name {
                return Err(ParseError::new(base, format!("expected `{name}` on the left")).into());
            }
            Ok((rhs.to_string(), base + lhs.len() + 1))
        };
        let (u_rhs, u_off) = rhs(u_part, "u", 0)?;
        let (v_rhs, v_off) = rhs(v_part, "v", u_part.len() + 1)?;
        let shift = |off: usize| move |e: ParseError| ParseError::new(e.position + off, e.message);
        let u = parse_real_parameter_poly(&u_rhs).map_err(shift(u_off))?;
        let v = parse_real_parameter_poly(&v_rhs).map_err(shift(v_off))?;
        let nonzero: Vec<(usize, &ComplexRational)> = u.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let p = match nonzero.as_slice() {
            [(d, c)] if c.is_one() && *d > 0 => *d as u32,
            _ => return Err(MixError::InvalidArgument("u must be exactly t^p".into())),
        };
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(q, c)| (c.clone(), q as u32))
            .collect();
        Self::new(p, terms)
    }

    pub fn leading_exponent(&self) -> u32 {
        self.terms[0].1
    }

    /// `(u(t), v(t))` at a complex parameter.
    pub fn eval(&self, t: Complex64) -> (Complex64, Complex64) {
        let u = t.powu(self.p);
        let v = self.terms.iter().map(|(a, q)| a.to_complex64() * t.powu(*q)).sum();
        (u, v)
    }
}

/// True iff `t ↦ u(t)·conj(v(t))` fails to be a submersion at every point of
/// the punctured branch, which happens exactly when the branch is the line
/// `(t^p, a t^p)`.
pub fn branch_restriction_singular(b: &PuiseuxBranch) -> bool {
    b.terms.len() == 1 && b.leading_exponent() == b.p
}

/// True iff points where the restriction of `u·v̄` is not a submersion
/// accumulate at the origin along the branch.
///
/// When `q_1 = p` the leading part `ā_1 |t|^{2p}` has rank one and any higher
/// term tilts it; the degenerate locus is then a real curve through `t = 0`.
/// When `q_1 ≠ p` the leading part `ā_1 t^p t̄^{q_1}` has nonvanishing
/// Jacobian `(p² − q_1²)|a_1|²|t|^{…}` and dominates near the origin.
pub fn branch_accumulates_critical_points(b: &PuiseuxBranch) -> bool {
    b.leading_exponent() == b.p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        let line = PuiseuxBranch::parse("u = t; v = (2+i)*t").unwrap();
        assert!(branch_restriction_singular(&line));
        let cusp = PuiseuxBranch::parse("u = t^2; v = t^3").unwrap();
        assert!(!branch_restriction_singular(&cusp));
        assert!(!branch_accumulates_critical_points(&cusp));
        let curved = PuiseuxBranch::parse("u = t; v = t + t^2").unwrap();
        assert!(!branch_restriction_singular(&curved));
        assert!(branch_accumulates_critical_points(&curved));
    }

    #[test]
    fn parse_errors() {
        assert!(PuiseuxBranch::parse("u = t^2").is_err());
        assert!(PuiseuxBranch::parse("u = 2*t; v = t").is_err());
        assert!(PuiseuxBranch::parse("u = t; v = 0").is_err());
        match PuiseuxBranch::parse("u = t; v = t + w") {
            Err(MixError::Parse(e)) => assert_eq!(e.position, 15),
            other => panic!("{other:?}"),
        }
    }
}
