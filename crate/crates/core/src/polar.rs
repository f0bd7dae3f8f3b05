//! Polar weighted-homogeneity: integer weights `p` and degree `k` with
//! `Σ p_j (ν_j − μ_j) = k` on every monomial, and the S¹-orbit identity
//! `F(λ·z) = λ^k F(z)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::MixError;
use crate::lattice::integer_kernel;
use crate::mixed::{ComplexPoint, MixedPolynomial};

/// Default bound on `Σ|p_j|` for the admissibility search.
pub const DEFAULT_WEIGHT_BOUND: u32 = 64;

const ENUMERATION_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarWeights {
    pub p: Vec<i64>,
    pub k: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarSolution {
    pub polar: PolarStatus,
    pub canonical: Option<PolarWeights>,
    /// Z-basis of all `(p_1, …, p_n, k)` solving the linear system.
    pub lattice_basis: Vec<Vec<i64>>,
    pub bound_used: u32,
    /// Why the answer is `no` or `unknown`.
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct PolarOptions {
    /// Accept `k = 0`.
    pub allow_zero_k: bool,
    pub bound: u32,
}

impl Default for PolarOptions {
    fn default() -> Self {
        Self { allow_zero_k: false, bound: DEFAULT_WEIGHT_BOUND }
    }
}

/// Exponent differences `ν − μ`, one row per term, deduplicated.
fn difference_rows(f: &MixedPolynomial) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = f.terms().map(|(e, _)| e.difference()).collect();
    rows.sort();
    rows.dedup();
    rows
}

/// Parametrization of the rational solution space: pivot coordinate
/// `x[pivot] = Σ coef[f] · x[free[f]] / den`.
struct Parametrization {
    free: Vec<usize>,
    pivots: Vec<(usize, Vec<i128>, i128)>,
}

fn parametrize(rows: &[Vec<i64>], cols: usize) -> Result<Parametrization, MixError> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, sel);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut pivots = Vec::new();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        let den = free.iter().fold(BigInt::one(), |acc, &f| acc.lcm(m[row][f].denom()));
        let coefs = free
            .iter()
            .map(|&f| {
                let v = -(&m[row][f] * BigRational::from_integer(den.clone())).to_integer();
                v.to_i128().ok_or(MixError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        pivots.push((pc, coefs, den.to_i128().ok_or(MixError::Overflow)?));
    }
    Ok(Parametrization { free, pivots })
}

/// Calls `visit` on every integer vector of length `dim` with L1 norm `s`.
fn for_each_l1(dim: usize, s: u32, visit: &mut dyn FnMut(&[i64])) {
    fn rec(buf: &mut Vec<i64>, dim: usize, left: u32, visit: &mut dyn FnMut(&[i64])) {
        if buf.len() + 1 == dim {
            buf.push(left as i64);
            visit(buf);
            if left > 0 {
                *buf.last_mut().unwrap() = -(left as i64);
                visit(buf);
            }
            buf.pop();
            return;
        }
        for a in 0..=left {
            buf.push(a as i64);
            rec(buf, dim, left - a, visit);
            if a > 0 {
                *buf.last_mut().unwrap() = -(a as i64);
                rec(buf, dim, left - a, visit);
            }
            buf.pop();
        }
    }
    if dim == 0 {
        if s == 0 {
            visit(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(dim), dim, s, visit);
}

/// Ordering key for canonical weights: `Σ|p|`, then `|k|`, then `k > 0`,
/// then lexicographically greatest `p`.
fn better(a: &PolarWeights, b: &PolarWeights) -> bool {
    let key = |w: &PolarWeights| (w.p.iter().map(|x| x.abs()).sum::<i64>(), w.k.abs(), w.k < 0);
    match key(a).cmp(&key(b)) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a.p > b.p,
    }
}

pub fn solve_polar(f: &MixedPolynomial) -> Result<PolarSolution, MixError> {
    solve_polar_with(f, PolarOptions::default())
}

pub fn solve_polar_with(f: &MixedPolynomial, opts: PolarOptions) -> Result<PolarSolution, MixError> {
    if f.is_zero() {
        return Err(MixError::ZeroPolynomial);
    }
    let n = f.n_vars();
    let diffs = difference_rows(f);
    let rows: Vec<Vec<i64>> = diffs
        .iter()
        .map(|d| {
            let mut r = d.clone();
            r.push(-1);
            r
        })
        .collect();
    let lattice_basis = integer_kernel(&rows, n + 1)?;

    // Exact existence test: a lattice vector with all required coordinates
    // nonzero exists iff no such coordinate vanishes on the whole lattice.
    let required: Vec<usize> = if opts.allow_zero_k { (0..n).collect() } else { (0..=n).collect() };
    if let Some(&c) = required.iter().find(|&&c| lattice_basis.iter().all(|v| v[c] == 0)) {
        let what = if c == n { "k".to_string() } else { format!("p{}", c + 1) };
        return Ok(PolarSolution {
            polar: PolarStatus::No,
            canonical: None,
            lattice_basis,
            bound_used: opts.bound,
            certificate: Some(format!("{what} vanishes on every solution of the exponent system")),
        });
    }

    let par = parametrize(&rows, n + 1)?;
    let dmax = diffs.iter().flatten().map(|d| d.unsigned_abs()).max().unwrap_or(0) as i64;
    let mut best: Option<PolarWeights> = None;
    let mut visited: u64 = 0;
    let mut exhausted = false;
    let mut x = vec![0i128; n + 1];
    for s in 1..=opts.bound {
        if let Some(b) = &best {
            let sum_p: i64 = b.p.iter().map(|v| v.abs()).sum();
            if i64::from(s) > sum_p * (1 + dmax) {
                break;
            }
        }
        for_each_l1(par.free.len(), s, &mut |free_vals| {
            visited += 1;
            if visited > ENUMERATION_BUDGET {
                exhausted = true;
                return;
            }
            for (slot, &v) in par.free.iter().zip(free_vals) {
                x[*slot] = v as i128;
            }
            for (pc, coefs, den) in &par.pivots {
                let num: i128 = coefs.iter().zip(free_vals).map(|(c, &v)| c * v as i128).sum();
                if num % den != 0 {
                    return;
                }
                x[*pc] = num / den;
            }
            if x[..n].contains(&0) || (!opts.allow_zero_k && x[n] == 0) {
                return;
            }
            let g = x[..n].iter().fold(0i128, |g, &v| g.gcd(&v));
            if g != 1 {
                return;
            }
            let sum_p: i128 = x[..n].iter().map(|v| v.abs()).sum();
            if sum_p > i128::from(opts.bound) {
                return;
            }
            let cand = PolarWeights { p: x[..n].iter().map(|&v| v as i64).collect(), k: x[n] as i64 };
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        });
        if exhausted {
            break;
        }
    }
    let (polar, certificate) = match &best {
        Some(_) => (PolarStatus::Yes, None),
        None => (
            PolarStatus::Unknown,
            Some(format!("admissible weights exist but none with sum |p| <= {} was found", opts.bound)),
        ),
    };
    Ok(PolarSolution { polar, canonical: best, lattice_basis, bound_used: opts.bound, certificate })
}

/// Residual `|F(λ·z) − λ^k F(z)|` where coordinate `j` is multiplied by `λ^{p_j}`.
pub fn orbit_check(
    f: &MixedPolynomial,
    w: &PolarWeights,
    lambda: Complex64,
    z: &ComplexPoint,
) -> Result<f64, MixError> {
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(MixError::InvalidArgument(format!("|lambda| = {} is not 1", lambda.norm())));
    }
    if z.dim() != f.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: z.dim() });
    }
    if w.p.len() != f.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: w.p.len() });
    }
    let moved: Vec<Complex64> =
        z.coords.iter().zip(&w.p).map(|(c, &p)| c * lambda.powi(p as i32)).collect();
    let lhs = f.eval_slice(&moved);
    let rhs = lambda.powi(w.k as i32) * f.eval_slice(&z.coords);
    Ok((lhs - rhs).norm())
}

/// Verifies exactly that `w` satisfies the exponent condition on every term.
pub fn weights_valid(f: &MixedPolynomial, w: &PolarWeights) -> bool {
    w.p.len() == f.n_vars()
        && f.terms().all(|(e, _)| e.difference().iter().zip(&w.p).map(|(d, p)| d * p).sum::<i64>() == w.k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    fn sol(s: &str, vars: &[&str]) -> PolarSolution {
        solve_polar(&parse_with(s, vars).unwrap()).unwrap()
    }

    #[test]
    fn canonical_weights() {
        let s = sol("x*y*x~", &["x", "y"]);
        assert_eq!(s.canonical, Some(PolarWeights { p: vec![1, 1], k: 1 }));
        let s = sol("x~*y*(x+z^2)", &["x", "y", "z"]);
        assert_eq!(s.canonical, Some(PolarWeights { p: vec![2, 1, 1], k: 1 }));
        let s = sol("x*y + x~*y~", &["x", "y"]);
        assert_eq!(s.polar, PolarStatus::No);
        assert!(s.canonical.is_none());
    }

    #[test]
    fn relaxed_k_admits_zero_degree() {
        let f = parse_with("x*y + x~*y~", &["x", "y"]).unwrap();
        let s = solve_polar_with(&f, PolarOptions { allow_zero_k: true, bound: 64 }).unwrap();
        assert_eq!(s.canonical, Some(PolarWeights { p: vec![1, -1], k: 0 }));
    }

    #[test]
    fn orbit_identity() {
        let f = parse_with("x~*y*(x+z^2)", &["x", "y", "z"]).unwrap();
        let w = PolarWeights { p: vec![2, 1, 1], k: 1 };
        let one = Complex64::new(1.0, 0.0);
        let z = ComplexPoint::new(vec![one; 3]).unwrap();
        assert!(orbit_check(&f, &w, Complex64::i(), &z).unwrap() < 1e-14);
        let g = parse_with("x*y*x~", &["x", "y"]).unwrap();
        let bad = PolarWeights { p: vec![1, 2], k: 1 };
        let z = ComplexPoint::new(vec![one; 2]).unwrap();
        assert!(orbit_check(&g, &bad, Complex64::i(), &z).unwrap() > 0.5);
        assert!(orbit_check(&g, &bad, Complex64::new(2.0, 0.0), &z).is_err());
    }
}
