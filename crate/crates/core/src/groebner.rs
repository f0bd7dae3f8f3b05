//! Buchberger's algorithm over `Q(i)` in the canonical graded lexicographic
//! order, used for critical-set containment and ideal simplification.

use crate::mixed::MixedPolynomial;

/// Work cap on S-polynomial reductions; exceeded means "undecided".
pub const DEFAULT_PAIR_BUDGET: usize = 4000;

/// Full reduction of `p` modulo `basis`.
pub fn normal_form(p: &MixedPolynomial, basis: &[MixedPolynomial]) -> MixedPolynomial {
    let n = p.n_vars();
    let mut rem = MixedPolynomial::zero(n);
    let mut cur = p.clone();
    'outer: while let Some((e, c)) = cur.leading_term() {
        let (e, c) = (e.clone(), c.clone());
        for b in basis {
            let (be, bc) = match b.leading_term() {
                Some(t) => t,
                None => continue,
            };
            if let Some(m) = e.checked_div(be) {
                let q = &c / bc;
                cur.sub_scaled_monomial(b, &m, &q);
                continue 'outer;
            }
        }
        cur.add_term(e.clone(), -&c);
        rem.add_term(e, c);
    }
    rem
}

fn s_polynomial(a: &MixedPolynomial, b: &MixedPolynomial) -> MixedPolynomial {
    let (ae, ac) = a.leading_term().unwrap();
    let (be, bc) = b.leading_term().unwrap();
    let l = ae.lcm(be);
    let ma = l.checked_div(ae).unwrap();
    let mb = l.checked_div(be).unwrap();
    &a.mul_monomial(&ma, &ac.inv().unwrap()) - &b.mul_monomial(&mb, &bc.inv().unwrap())
}

/// Reduced Gröbner basis of the ideal generated by `gens`, or `None` when the
/// pair budget runs out. The unit ideal yields `[1]`.
pub fn groebner_basis(gens: &[MixedPolynomial], budget: usize) -> Option<Vec<MixedPolynomial>> {
    let mut basis: Vec<MixedPolynomial> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(MixedPolynomial::is_constant) {
        let n = gens[0].n_vars();
        return Some(vec![MixedPolynomial::one(n)]);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut work = 0;
    while let Some((i, j)) = pairs.pop() {
        work += 1;
        if work > budget {
            return None;
        }
        let (ei, ej) = (basis[i].leading_term().unwrap().0, basis[j].leading_term().unwrap().0);
        if ei.is_coprime(ej) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Some(vec![MixedPolynomial::one(r.n_vars())]);
        }
        basis.push(r.monic());
        let k = basis.len() - 1;
        for i in 0..k {
            pairs.insert(0, (i, k));
        }
    }
    Some(reduce_basis(basis))
}

fn reduce_basis(mut basis: Vec<MixedPolynomial>) -> Vec<MixedPolynomial> {
    // Drop elements whose leading term is divisible by another's.
    let mut keep: Vec<MixedPolynomial> = Vec::new();
    basis.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    for b in basis {
        let be = b.leading_term().unwrap().0.clone();
        if keep.iter().any(|k| be.checked_div(k.leading_term().unwrap().0).is_some()) {
            continue;
        }
        keep.push(b);
    }
    let mut out = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<MixedPolynomial> =
            keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, p)| p.clone()).collect();
        out.push(normal_form(&keep[idx], &others).monic());
    }
    out.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    out
}

pub fn is_unit_ideal(basis: &[MixedPolynomial]) -> bool {
    basis.len() == 1 && basis[0].is_constant() && !basis[0].is_zero()
}

/// Decides `f ∈ √⟨gens⟩` with the Rabinowitsch trick. `None` if the
/// computation exceeded its budget.
pub fn radical_member(f: &MixedPolynomial, gens: &[MixedPolynomial], budget: usize) -> Option<bool> {
    let n = f.n_vars();
    if f.is_zero() {
        return Some(true);
    }
    let positions: Vec<usize> = (0..n).collect();
    let mut ext: Vec<MixedPolynomial> = gens.iter().map(|g| g.embed(n + 1, &positions)).collect();
    let t = MixedPolynomial::var(n + 1, n);
    let one = MixedPolynomial::one(n + 1);
    ext.push(&one - &(&t * &f.embed(n + 1, &positions)));
    groebner_basis(&ext, budget).map(|gb| is_unit_ideal(&gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    const V: [&str; 3] = ["x", "y", "z"];

    fn p(s: &str) -> MixedPolynomial {
        parse_with(s, &V).unwrap()
    }

    #[test]
    fn basis_of_simple_ideals() {
        let gb = groebner_basis(&[p("2*x"), p("y^2")], 100).unwrap();
        assert_eq!(gb, vec![p("x"), p("y^2")]);
        let gb = groebner_basis(&[p("x*y - 1"), p("y")], 100).unwrap();
        assert!(is_unit_ideal(&gb));
    }

    #[test]
    fn normal_form_membership() {
        let gb = groebner_basis(&[p("x^2 + y"), p("x*y - z")], 1000).unwrap();
        let member = &(&p("x^2 + y") * &p("z + 3")) + &(&p("x*y - z") * &p("x"));
        assert!(normal_form(&member, &gb).is_zero());
        assert!(!normal_form(&p("x"), &gb).is_zero());
    }

    #[test]
    fn radical_membership() {
        let ideal = [p("2*x"), p("y^2")];
        assert_eq!(radical_member(&p("y"), &ideal, 1000), Some(true));
        assert_eq!(radical_member(&p("x^2 - z*y^2"), &ideal, 1000), Some(true));
        assert_eq!(radical_member(&p("z"), &ideal, 1000), Some(false));
        // Critical set of (y(x+z^2), x): {x + z^2 = 0, y z = 0}.
        let crit = [p("x + z^2"), p("2*y*z")];
        assert_eq!(radical_member(&p("y*(x+z^2)"), &crit, 1000), Some(true));
        assert_eq!(radical_member(&p("x"), &crit, 1000), Some(false));
        assert_eq!(radical_member(&p("x*y*(x+z^2)"), &crit, 1000), Some(true));
    }
}
