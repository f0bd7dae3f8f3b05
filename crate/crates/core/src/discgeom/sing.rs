//! Singular set of `f·ḡ` on `V = {f·g = 0}`: the common zeros of `f, g`
//! together with `Sing f` and `Sing g`.

use serde::Serialize;

use super::jacobian::{check_pair, jacobian_minors};
use crate::algebra::squarefree;
use crate::error::MixError;
use crate::groebner::{groebner_basis, is_unit_ideal, DEFAULT_PAIR_BUDGET};
use crate::mixed::MixedPolynomial;
use crate::parser::format_named;

/// Each component as a reduced Gröbner basis; the basis `[1]` is the empty set.
#[derive(Debug, Clone, PartialEq)]
pub struct SingDecomposition {
    pub common_zero_set: Vec<MixedPolynomial>,
    pub sing_f: Vec<MixedPolynomial>,
    pub sing_g: Vec<MixedPolynomial>,
    /// Generators of `Sing(f, g)`; off `V` the singular points of `f·ḡ`
    /// lie in their common zero set.
    pub critical_minors: Vec<MixedPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderedComponent {
    pub empty: bool,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderedSing {
    pub common_zero_set: RenderedComponent,
    pub sing_f: RenderedComponent,
    pub sing_g: RenderedComponent,
    pub critical_minors: Vec<String>,
}

fn render(c: &[MixedPolynomial], names: &[&str]) -> RenderedComponent {
    if is_unit_ideal(c) {
        return RenderedComponent { empty: true, generators: Vec::new() };
    }
    RenderedComponent { empty: false, generators: c.iter().map(|p| format_named(p, names)).collect() }
}

impl SingDecomposition {
    pub fn render(&self, names: &[&str]) -> RenderedSing {
        RenderedSing {
            common_zero_set: render(&self.common_zero_set, names),
            sing_f: render(&self.sing_f, names),
            sing_g: render(&self.sing_g, names),
            critical_minors: self.critical_minors.iter().map(|p| format_named(p, names)).collect(),
        }
    }
}

/// Reduced basis of the radical-leaning ideal: squarefree generators, basis,
/// then squarefree basis elements once more.
fn simplify(gens: Vec<MixedPolynomial>) -> Result<Vec<MixedPolynomial>, MixError> {
    let run = |g: &[MixedPolynomial]| {
        groebner_basis(g, DEFAULT_PAIR_BUDGET)
            .ok_or_else(|| MixError::EliminationDegenerate("Gröbner basis budget exhausted".into()))
    };
    let gens: Vec<_> = gens.iter().filter(|p| !p.is_zero()).map(squarefree).collect();
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let gb = run(&gens)?;
    if is_unit_ideal(&gb) {
        return Ok(gb);
    }
    run(&gb.iter().map(squarefree).collect::<Vec<_>>())
}

fn singular_locus(f: &MixedPolynomial) -> Result<Vec<MixedPolynomial>, MixError> {
    let mut gens = vec![f.clone()];
    gens.extend((0..f.n_vars()).map(|j| f.d_z(j)));
    simplify(gens)
}

pub fn sing_decomposition(f: &MixedPolynomial, g: &MixedPolynomial) -> Result<SingDecomposition, MixError> {
    check_pair(f, g)?;
    Ok(SingDecomposition {
        common_zero_set: simplify(vec![f.clone(), g.clone()])?,
        sing_f: singular_locus(f)?,
        sing_g: singular_locus(g)?,
        critical_minors: jacobian_minors(f, g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    fn decomp(f: &str, g: &str, v: &[&str]) -> RenderedSing {
        let f = parse_with(f, v).unwrap();
        let g = parse_with(g, v).unwrap();
        sing_decomposition(&f, &g).unwrap().render(v)
    }

    #[test]
    fn worked_decompositions() {
        let d = decomp("x*y", "x", &["x", "y"]);
        assert_eq!(d.common_zero_set.generators, vec!["1*x"]);
        assert_eq!(d.sing_f.generators, vec!["1*y", "1*x"]);
        assert!(d.sing_g.empty);

        let d = decomp("y*(x+z^2)", "x", &["x", "y", "z"]);
        assert_eq!(d.common_zero_set.generators, vec!["1*x", "1*y*z"]);
        assert_eq!(d.sing_f.generators, vec!["1*y", "1*x + 1*z^2"]);
        assert!(d.sing_g.empty);

        let d = decomp("x^2", "y^3", &["x", "y"]);
        assert_eq!(d.common_zero_set.generators, vec!["1*y", "1*x"]);
        assert_eq!(d.sing_f.generators, vec!["1*x"]);
        assert_eq!(d.sing_g.generators, vec!["1*y"]);
    }
}
