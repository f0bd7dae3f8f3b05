//! Whether `f·ḡ` has an isolated critical value at the origin.

use serde::Serialize;

use super::branch::{branch_accumulates_critical_points, branch_restriction_singular, PuiseuxBranch};
use super::discriminant::{discriminant_curve, PlaneCurve};
use super::jacobian::{check_pair, jacobian_minors};
use super::lines::{line_components, tangent_lines, LineComponent, LineKind};
use crate::error::MixError;
use crate::groebner::{radical_member, DEFAULT_PAIR_BUDGET};
use crate::mixed::MixedPolynomial;
use crate::parser::format_named;

/// How discriminant geometry is turned into a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Isolated iff every tangent of the discriminant at the origin is an
    /// axis. A branch tangent to `v = a·u` (`a ≠ 0`) already carries
    /// singular points of `f·ḡ` off `V` accumulating at the origin.
    #[default]
    TangentCone,
    /// Isolated iff the discriminant contains no line other than the axes.
    LineComponents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isolation {
    Isolated,
    NotIsolated,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolatedVerdict {
    pub status: Isolation,
    pub criterion: Criterion,
    pub method: String,
    /// `h(u, v)`, `"origin-only"` or `"empty"`; absent for `n ≥ 3`.
    pub discriminant: Option<String>,
    pub passes_through_origin: Option<bool>,
    pub lines: Vec<LineComponent>,
    pub tangents: Vec<LineComponent>,
    /// Non-axis lines responsible for a `not-isolated` verdict.
    pub witnesses: Vec<LineComponent>,
}

#[derive(Debug, Clone, Default)]
pub struct VerdictOptions {
    pub criterion: Criterion,
    /// Discriminant branches supplied by the caller for `n ≥ 3`.
    pub branches: Vec<PuiseuxBranch>,
}

fn describe(curve: &PlaneCurve) -> String {
    match curve {
        PlaneCurve::Curve(h) => format_named(h, &["u", "v"]),
        PlaneCurve::OriginOnly => "origin-only".into(),
        PlaneCurve::Empty => "empty".into(),
    }
}

pub fn isolated_value_verdict(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<IsolatedVerdict, MixError> {
    isolated_value_verdict_with(f, g, &VerdictOptions::default())
}

pub fn isolated_value_verdict_with(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
    opts: &VerdictOptions,
) -> Result<IsolatedVerdict, MixError> {
    let n = check_pair(f, g)?;
    if n == 2 {
        return Ok(plane_verdict(&discriminant_curve(f, g)?, opts.criterion));
    }
    higher_verdict(f, g, opts)
}

/// Verdict from an already computed discriminant curve.
pub fn plane_verdict(curve: &PlaneCurve, criterion: Criterion) -> IsolatedVerdict {
    let lines = line_components(curve);
    let tangents = tangent_lines(curve);
    let witnesses: Vec<LineComponent> = match criterion {
        Criterion::TangentCone => tangents.iter().filter(|l| !l.is_axis()).cloned().collect(),
        Criterion::LineComponents => lines.iter().filter(|l| !l.is_axis()).cloned().collect(),
    };
    let status = if witnesses.is_empty() { Isolation::Isolated } else { Isolation::NotIsolated };
    IsolatedVerdict {
        status,
        criterion,
        method: "discriminant-curve".into(),
        discriminant: Some(describe(curve)),
        passes_through_origin: Some(curve.passes_through_origin()),
        lines,
        tangents,
        witnesses,
    }
}

fn higher_verdict(f: &MixedPolynomial, g: &MixedPolynomial, opts: &VerdictOptions) -> Result<IsolatedVerdict, MixError> {
    let minors = jacobian_minors(f, g)?;
    if minors.is_empty() {
        return Err(MixError::EliminationDegenerate("f and g are functionally dependent".into()));
    }
    let base = |status, method: &str, witnesses| IsolatedVerdict {
        status,
        criterion: opts.criterion,
        method: method.into(),
        discriminant: None,
        passes_through_origin: None,
        lines: Vec::new(),
        tangents: Vec::new(),
        witnesses,
    };
    let member = |p: &MixedPolynomial| radical_member(p, &minors, DEFAULT_PAIR_BUDGET);
    let (mf, mg) = (member(f), member(g));
    if mf == Some(true) && mg == Some(true) {
        return Ok(base(Isolation::Isolated, "critical-set-in-zero-fibre", Vec::new()));
    }
    if member(&(f * g)) == Some(true) {
        return Ok(base(Isolation::Isolated, "critical-set-in-axis-preimage", Vec::new()));
    }
    if opts.branches.is_empty() {
        return Ok(base(Isolation::Unknown, "no-certificate", Vec::new()));
    }
    let hit = |b: &PuiseuxBranch| match opts.criterion {
        Criterion::TangentCone => branch_accumulates_critical_points(b),
        Criterion::LineComponents => branch_restriction_singular(b),
    };
    let witnesses: Vec<LineComponent> = opts
        .branches
        .iter()
        .filter(|b| hit(b))
        .map(|b| {
            let a = b.terms[0].0.clone();
            let z = a.to_complex64();
            LineComponent { kind: LineKind::Slope, slope: Some(a), slope_approx: Some([z.re, z.im]), slope_factor: None }
        })
        .collect();
    let status = if witnesses.is_empty() { Isolation::Isolated } else { Isolation::NotIsolated };
    Ok(base(status, "supplied-branches", witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;
    use crate::rational::ComplexRational;

    fn verdict(f: &str, g: &str, v: &[&str], criterion: Criterion) -> IsolatedVerdict {
        let opts = VerdictOptions { criterion, branches: Vec::new() };
        isolated_value_verdict_with(&parse_with(f, v).unwrap(), &parse_with(g, v).unwrap(), &opts).unwrap()
    }

    #[test]
    fn plane_pairs() {
        let xy = ["x", "y"];
        for c in [Criterion::TangentCone, Criterion::LineComponents] {
            assert_eq!(verdict("x^2", "y^3", &xy, c).status, Isolation::Isolated);
            assert_eq!(verdict("x*y", "x", &xy, c).status, Isolation::Isolated);
            let v = verdict("x", "x+y^2", &xy, c);
            assert_eq!(v.status, Isolation::NotIsolated);
            assert_eq!(v.witnesses[0].slope, Some(ComplexRational::one()));
        }
        // A discriminant tangent to a non-axis line without containing it.
        assert_eq!(verdict("x", "x+x^2+y^2", &xy, Criterion::TangentCone).status, Isolation::NotIsolated);
        assert_eq!(verdict("x", "x+x^2+y^2", &xy, Criterion::LineComponents).status, Isolation::Isolated);
    }

    #[test]
    fn three_variable_pairs() {
        let xyz = ["x", "y", "z"];
        let v = verdict("x^2 - z*y^2", "y", &xyz, Criterion::TangentCone);
        assert_eq!((v.status, v.method.as_str()), (Isolation::Isolated, "critical-set-in-zero-fibre"));
        let v = verdict("y*(x+z^2)", "x", &xyz, Criterion::TangentCone);
        assert_eq!((v.status, v.method.as_str()), (Isolation::Isolated, "critical-set-in-axis-preimage"));
        let v = verdict("x + y^2 + z^2", "x", &xyz, Criterion::TangentCone);
        assert_eq!(v.status, Isolation::Unknown);
        let opts = VerdictOptions {
            criterion: Criterion::TangentCone,
            branches: vec![PuiseuxBranch::parse("u = t; v = t").unwrap()],
        };
        let f = parse_with("x + y^2 + z^2", &xyz).unwrap();
        let g = parse_with("x", &xyz).unwrap();
        assert_eq!(isolated_value_verdict_with(&f, &g, &opts).unwrap().status, Isolation::NotIsolated);
    }
}
