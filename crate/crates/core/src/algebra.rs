//! Exact commutative algebra over `Q(i)` on holomorphic polynomials:
//! division, recursive gcd, squarefree parts and resultants.
//!
//! Everything here treats [`MixedPolynomial`] values with `μ = 0` as ordinary
//! polynomials; callers guarantee holomorphic inputs.

use crate::mixed::{ExponentPair, MixedPolynomial};
use crate::rational::ComplexRational;

/// Coefficients of `p` viewed as a polynomial in `z_var`, lowest degree
/// first. The coefficients no longer contain `z_var`.
pub fn coefficients_in(p: &MixedPolynomial, var: usize) -> Vec<MixedPolynomial> {
    let n = p.n_vars();
    let mut out: Vec<MixedPolynomial> = Vec::new();
    for (e, c) in p.terms() {
        let d = e.nu[var] as usize;
        if out.len() <= d {
            out.resize(d + 1, MixedPolynomial::zero(n));
        }
        let mut rest = e.clone();
        rest.nu[var] = 0;
        out[d].add_term(rest, c.clone());
    }
    out
}

/// Inverse of [`coefficients_in`].
pub fn from_coefficients(coeffs: &[MixedPolynomial], var: usize, n: usize) -> MixedPolynomial {
    let mut out = MixedPolynomial::zero(n);
    for (d, c) in coeffs.iter().enumerate() {
        let mut e = ExponentPair::zero(n);
        e.nu[var] = d as u32;
        out = &out + &c.mul_monomial(&e, &ComplexRational::one());
    }
    out
}

pub fn degree_in(p: &MixedPolynomial, var: usize) -> Option<u32> {
    p.terms().map(|(e, _)| e.nu[var]).max()
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &MixedPolynomial, b: &MixedPolynomial) -> Option<MixedPolynomial> {
    let (lb_e, lb_c) = b.leading_term()?;
    let (lb_e, lb_c) = (lb_e.clone(), lb_c.clone());
    let lb_inv = lb_c.inv()?;
    let mut rem = a.clone();
    let mut quot = MixedPolynomial::zero(a.n_vars());
    while let Some((e, c)) = rem.leading_term() {
        let m = e.checked_div(&lb_e)?;
        let q = c * &lb_inv;
        rem.sub_scaled_monomial(b, &m, &q);
        quot.add_term(m, q);
    }
    Some(quot)
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn prem(a: &MixedPolynomial, b: &MixedPolynomial, var: usize) -> MixedPolynomial {
    let n = a.n_vars();
    let db = degree_in(b, var).unwrap_or(0);
    let cb = coefficients_in(b, var);
    let lcb = cb[db as usize].clone();
    let mut r = a.clone();
    loop {
        let dr = match degree_in(&r, var) {
            Some(d) if !r.is_zero() && d >= db => d,
            _ => return r,
        };
        let lcr = coefficients_in(&r, var)[dr as usize].clone();
        let mut shift = ExponentPair::zero(n);
        shift.nu[var] = dr - db;
        r = &(&r * &lcb) - &(&lcr * &b.mul_monomial(&shift, &ComplexRational::one()));
    }
}

/// Gcd of the coefficients of `p` as a polynomial in `var`.
pub fn content(p: &MixedPolynomial, var: usize) -> MixedPolynomial {
    let mut cs: Vec<MixedPolynomial> = coefficients_in(p, var).into_iter().filter(|c| !c.is_zero()).collect();
    // Small coefficients first: a unit content then shows up early.
    cs.sort_by_key(|c| (c.total_degree(), c.terms().count()));
    let mut g = MixedPolynomial::zero(p.n_vars());
    for c in cs {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return MixedPolynomial::one(p.n_vars());
        }
    }
    g
}

fn primitive_part(p: &MixedPolynomial, var: usize) -> MixedPolynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, var);
    exact_div(p, &c).expect("content divides").monic()
}

fn highest_var(a: &MixedPolynomial, b: &MixedPolynomial) -> Option<usize> {
    let mut vs = a.support_vars();
    vs.extend(b.support_vars());
    vs.into_iter().max()
}

const SAMPLE_VALUES: [(i64, i64); 5] = [(3, 7), (-5, 11), (13, 4), (-2, 9), (17, 23)];

/// Degree in `var` of the gcd after fixing every other variable at a sample
/// rational point where neither leading coefficient vanishes. It bounds the
/// degree of the true gcd from above.
fn specialized_gcd_degree(p: &MixedPolynomial, q: &MixedPolynomial, var: usize) -> Option<u32> {
    let mut others = p.support_vars();
    others.extend(q.support_vars());
    others.sort_unstable();
    others.dedup();
    others.retain(|&j| j != var);
    if others.is_empty() {
        return None;
    }
    for k in 0..SAMPLE_VALUES.len() {
        let (mut ps, mut qs) = (p.clone(), q.clone());
        for (i, &j) in others.iter().enumerate() {
            let (num, den) = SAMPLE_VALUES[(k + i) % SAMPLE_VALUES.len()];
            let c = ComplexRational::from_frac(num, den);
            ps = ps.eval_var(j, &c);
            qs = qs.eval_var(j, &c);
        }
        if degree_in(&ps, var) == degree_in(p, var) && degree_in(&qs, var) == degree_in(q, var) {
            return degree_in(&gcd(&ps, &qs), var);
        }
    }
    None
}

fn leading_coefficient(p: &MixedPolynomial, var: usize) -> MixedPolynomial {
    let cs = coefficients_in(p, var);
    cs[cs.len() - 1].clone()
}

fn value_at(p: &MixedPolynomial, var: usize, x: &ComplexRational) -> ComplexRational {
    p.eval_var(var, x).constant_term()
}

/// Newton interpolation in `z_var` through `(xs[k], ys[k])`; the values are
/// polynomials free of `z_var`.
fn interpolate(xs: &[ComplexRational], ys: &[MixedPolynomial], var: usize) -> MixedPolynomial {
    let n = ys[0].n_vars();
    let mut dd = ys.to_vec();
    for j in 1..xs.len() {
        for i in (j..xs.len()).rev() {
            let w = (&xs[i] - &xs[i - j]).inv().expect("distinct nodes");
            dd[i] = (&dd[i] - &dd[i - 1]).scale(&w);
        }
    }
    let z = MixedPolynomial::var(n, var);
    let mut out = MixedPolynomial::zero(n);
    for i in (0..xs.len()).rev() {
        let shift = &z - &MixedPolynomial::constant(n, xs[i].clone());
        out = &(&out * &shift) + &dd[i];
    }
    out
}

/// Integer interpolation nodes `0, -1, 1, -2, 2, …`.
fn node(t: i64) -> ComplexRational {
    ComplexRational::from_int(if t % 2 == 0 { t / 2 } else { -(t / 2) - 1 })
}

/// Gcd of primitive `p, q` in `z_var` whose only other variable is
/// `z_other`, by specializing `z_other` at integers, taking univariate gcds
/// and interpolating. The candidate is checked by exact division; `None`
/// means the check failed.
fn dense_bivariate_gcd(p: &MixedPolynomial, q: &MixedPolynomial, var: usize, other: usize) -> Option<MixedPolynomial> {
    let n = p.n_vars();
    let (lp, lq) = (leading_coefficient(p, var), leading_coefficient(q, var));
    let gamma = gcd(&lp, &lq);
    let bound = degree_in(&gamma, other).unwrap_or(0)
        + degree_in(p, other).unwrap_or(0).min(degree_in(q, other).unwrap_or(0));
    let needed = bound as usize + 1;
    let mut best: Option<u32> = None;
    let mut xs: Vec<ComplexRational> = Vec::new();
    let mut images: Vec<Vec<ComplexRational>> = Vec::new();
    let mut t = 0i64;
    while xs.len() < needed {
        if t > 4 * needed as i64 + 16 {
            return None;
        }
        let x = node(t);
        t += 1;
        let g_x = value_at(&gamma, other, &x);
        if value_at(&lp, other, &x).is_zero() || value_at(&lq, other, &x).is_zero() {
            continue;
        }
        let g = gcd(&p.eval_var(other, &x), &q.eval_var(other, &x));
        let d = degree_in(&g, var).unwrap_or(0);
        if d == 0 {
            return Some(MixedPolynomial::one(n));
        }
        match best {
            Some(b) if d > b => continue,
            Some(b) if d == b => {}
            _ => {
                best = Some(d);
                xs.clear();
                images.clear();
            }
        }
        let cs = coefficients_in(&g, var);
        images.push(cs.iter().map(|c| &c.constant_term() * &g_x).collect());
        xs.push(x);
    }
    let d = best? as usize;
    let mut h = MixedPolynomial::zero(n);
    for i in 0..=d {
        let ys: Vec<MixedPolynomial> = images.iter().map(|im| MixedPolynomial::constant(n, im[i].clone())).collect();
        let mut shift = ExponentPair::zero(n);
        shift.nu[var] = i as u32;
        h = &h + &interpolate(&xs, &ys, other).mul_monomial(&shift, &ComplexRational::one());
    }
    let g = primitive_part(&h, var);
    (exact_div(p, &g).is_some() && exact_div(q, &g).is_some()).then_some(g)
}

/// Monic gcd over `Q(i)[z_1..z_n]` (recursive primitive remainder
/// sequences). `gcd(0, 0) = 0`.
pub fn gcd(a: &MixedPolynomial, b: &MixedPolynomial) -> MixedPolynomial {
    let n = a.n_vars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let var = match highest_var(a, b) {
        None => return MixedPolynomial::one(n),
        Some(v) => v,
    };
    let da = degree_in(a, var).unwrap_or(0);
    let db = degree_in(b, var).unwrap_or(0);
    if da == 0 {
        return gcd(a, &content(b, var));
    }
    if db == 0 {
        return gcd(&content(a, var), b);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd(&ca, &cb);
    let (mut p, mut q) = (exact_div(a, &ca).unwrap(), exact_div(b, &cb).unwrap());
    let mut others = p.support_vars();
    others.extend(q.support_vars());
    others.retain(|&j| j != var);
    others.dedup();
    if let [other] = others[..] {
        if let Some(g) = dense_bivariate_gcd(&p, &q, var, other) {
            return (&c * &g).monic();
        }
    }
    if specialized_gcd_degree(&p, &q, var) == Some(0) {
        return c.monic();
    }
    if degree_in(&p, var) < degree_in(&q, var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if degree_in(&q, var) == Some(0) {
            // A primitive polynomial constant in `var` is a unit here.
            p = MixedPolynomial::one(n);
            break;
        }
        let r = prem(&p, &q, var);
        p = q;
        q = primitive_part(&r, var);
    }
    let g = p;
    (&c * &g).monic()
}

/// Gcd of a list of polynomials.
pub fn gcd_all<'a>(ps: impl IntoIterator<Item = &'a MixedPolynomial>, n: usize) -> MixedPolynomial {
    let mut g = MixedPolynomial::zero(n);
    for p in ps {
        g = gcd(&g, p);
    }
    g
}

/// Squarefree part: `p / gcd(p, ∂p/∂z_1, …, ∂p/∂z_n)`, made monic.
pub fn squarefree(p: &MixedPolynomial) -> MixedPolynomial {
    if p.is_zero() || p.is_constant() {
        return p.monic();
    }
    let mut g = p.clone();
    for j in p.support_vars() {
        g = gcd(&g, &p.d_z(j));
        if g.is_constant() {
            break;
        }
    }
    exact_div(p, &g).expect("gcd divides").monic()
}

/// Resultant of `a` and `b` with respect to `z_var`. Other variables are
/// specialized at integer nodes and interpolated back, so the Sylvester
/// determinant is only ever taken over constants.
pub fn resultant(a: &MixedPolynomial, b: &MixedPolynomial, var: usize) -> MixedPolynomial {
    let n = a.n_vars();
    if a.is_zero() || b.is_zero() {
        return MixedPolynomial::zero(n);
    }
    let da = degree_in(a, var).unwrap_or(0);
    let db = degree_in(b, var).unwrap_or(0);
    if da == 0 {
        return a.pow(db);
    }
    if db == 0 {
        return b.pow(da);
    }
    let mut others = a.support_vars();
    others.extend(b.support_vars());
    others.retain(|&j| j != var);
    let Some(&s) = others.iter().min() else {
        let dense = |p: &MixedPolynomial| coefficients_in(p, var).iter().map(|c| c.constant_term()).collect();
        return MixedPolynomial::constant(n, univariate_resultant(dense(a), dense(b)));
    };
    let bound = da * degree_in(b, s).unwrap_or(0) + db * degree_in(a, s).unwrap_or(0);
    let (la, lb) = (leading_coefficient(a, var), leading_coefficient(b, var));
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t = 0;
    while xs.len() <= bound as usize {
        let x = node(t);
        t += 1;
        if la.eval_var(s, &x).is_zero() || lb.eval_var(s, &x).is_zero() {
            continue;
        }
        ys.push(resultant(&a.eval_var(s, &x), &b.eval_var(s, &x), var));
        xs.push(x);
    }
    interpolate(&xs, &ys, s)
}

/// Resultant of two dense univariate polynomials (lowest degree first, both
/// of positive degree with nonzero leading coefficients) by the Euclidean
/// remainder sequence.
fn univariate_resultant(mut a: Vec<ComplexRational>, mut b: Vec<ComplexRational>) -> ComplexRational {
    let mut acc = ComplexRational::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return &acc * &b[0].pow(da as u32);
        }
        // a mod b
        let inv = b[db].inv().expect("nonzero leading coefficient");
        let mut r = a;
        while r.len() > db {
            let top = r.len() - 1;
            let q = &r[top] * &inv;
            if !q.is_zero() {
                for k in 0..=db {
                    let t = &q * &b[k];
                    r[top - db + k] -= &t;
                }
            }
            r.pop();
        }
        while r.last().is_some_and(ComplexRational::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            return ComplexRational::zero();
        }
        // res(a, b) = (-1)^(da·db) · lc(b)^(da - dr) · res(b, r)
        let dr = r.len() - 1;
        acc = &acc * &b[db].pow((da - dr) as u32);
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        a = b;
        b = r;
    }
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
    fn exact_division() {
        let a = p("(x+y)*(x-2*y*z)");
        assert_eq!(exact_div(&a, &p("x+y")).unwrap(), p("x-2*y*z"));
        assert!(exact_div(&a, &p("x+z")).is_none());
    }

    #[test]
    fn gcd_examples() {
        let g = gcd(&p("(x+y)^2*(x-z)"), &p("(x+y)*(x+z)"));
        assert_eq!(g, p("x+y").monic());
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x*y + y^2")), p("x+y").monic());
        assert!(gcd(&p("x+1"), &p("y+1")).is_constant());
        assert_eq!(gcd(&p("2*x*y"), &p("4*x^2")), p("x"));
        let g = gcd(&p("(x - i*y)*(z+1)"), &p("(x - i*y)*(z-1)"));
        assert_eq!(g, p("x - i*y").monic());
    }

    #[test]
    fn bivariate_gcd_by_interpolation() {
        let h = p("(x + y^2)*(x - y)");
        let a = &(&h * &p("(x - y)*(x + 3)")) * &p("y^3 - x*y + 7");
        let b = &h * &p("(y + 2)*(x^2 + y^2 - 5)");
        assert_eq!(gcd(&a, &b), h.monic());
        assert_eq!(gcd(&p("x^3 - y^2"), &p("x^2 + y")), MixedPolynomial::one(3));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree(&p("x^2*y^3")), p("x*y"));
        assert_eq!(squarefree(&p("(x+y)^2*(x-y)")), p("(x+y)*(x-y)").monic());
        assert_eq!(squarefree(&p("y^2")), p("y"));
    }

    #[test]
    fn resultant_univariate_roots() {
        // Res_x(x^2 - 1, x - a) = a^2 - 1 up to sign.
        let r = resultant(&p("x^2 - 1"), &p("x - y"), 0);
        assert_eq!(r, p("y^2 - 1"));
        // Three variables, checked against lc(a)^deg(b)·∏ b(roots of a).
        let r = resultant(&p("x^2 - y"), &p("x + z"), 0);
        assert_eq!(r, p("z^2 - y"));
        let r = resultant(&p("2*x - y"), &p("x^2*z - 1"), 0);
        assert_eq!(r, p("y^2*z - 4"));
        // Common root => zero resultant.
        assert!(resultant(&p("(x-1)*(x+2)"), &p("(x-1)*y"), 0).is_zero());
    }

    #[test]
    fn resultant_eliminates_to_implicit_equation() {
        // (t^2, t^3) parametrization: eliminate x from y - x^2, z - x^3.
        let r = resultant(&p("y - x^2"), &p("z - x^3"), 0);
        assert_eq!(r.monic(), p("z^2 - y^3").monic());
    }
}
