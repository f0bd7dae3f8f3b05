//! Limits of normal planes along curves and the Thom `(a_F)` test against a
//! stratum.
//!
//! Along a curve the frame vectors are exact polynomials in `t`. Each shell
//! estimate divides by the lowest power of `t` before evaluating, and the
//! plane itself is read from the Plücker coordinates `n_one ∧ n_i`, so tiny
//! shells lose no precision to cancellation.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::curve::{realify, restrict, rpoly_eval_shifted, rpoly_mul, rpoly_order, rpoly_sub, CurveGerm, RPoly, Schedule};
use super::frame::SymbolicFamily;
use super::grassmann::{to_complex, to_real, Subspace};
use crate::error::MixError;
use crate::mixed::MixedPolynomial;
use crate::rational::ComplexRational;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeOptions {
    pub schedule: Schedule,
    /// Grassmann distance below which consecutive shells agree.
    pub converge_tol: f64,
    /// Number of trailing agreeing shells required.
    pub converge_run: usize,
    pub fail_tol: f64,
    pub compatible_tol: f64,
    pub rank_tol: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            schedule: Schedule::default(),
            converge_tol: 1e-6,
            converge_run: 3,
            fail_tol: 1e-4,
            compatible_tol: 1e-8,
            rank_tol: 1e-9,
        }
    }
}

/// Candidate stratum through `base` with real tangent directions.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub base: Vec<ComplexRational>,
    pub tangent: Vec<Vec<Complex64>>,
}

impl Stratum {
    pub fn new(base: Vec<ComplexRational>, tangent: Vec<Vec<Complex64>>) -> Result<Self, MixError> {
        if tangent.iter().any(|v| v.len() != base.len()) {
            return Err(MixError::DimensionMismatch { expected: base.len(), found: tangent[0].len() });
        }
        let s = Self { base, tangent };
        if s.tangent_space(1e-9).dim() != s.tangent.len() {
            return Err(MixError::InvalidArgument("stratum tangent vectors are not real-independent".into()));
        }
        Ok(s)
    }

    /// Complex line `C·v` through `base`: real span of `v` and `i·v`.
    pub fn complex_line(base: Vec<ComplexRational>, v: Vec<Complex64>) -> Result<Self, MixError> {
        let iv = v.iter().map(|c| c * Complex64::i()).collect();
        Self::new(base, vec![v, iv])
    }

    pub fn tangent_space(&self, rank_tol: f64) -> Subspace {
        let vs: Vec<DVector<f64>> = self.tangent.iter().map(|v| to_real(v)).collect();
        Subspace::span(&vs, rank_tol, 2 * self.base.len())
    }
}

/// Real unit vector rounded to 12 digits, as complex pairs.
pub type ComplexVector = Vec<[f64; 2]>;

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub(crate) fn export(v: &DVector<f64>) -> ComplexVector {
    to_complex(v).iter().map(|c| [round12(c.re), round12(c.im)]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveProbe {
    pub curve: String,
    pub converged: bool,
    /// Real dimension of the normal space along the curve, when constant.
    pub dimension: Option<usize>,
    pub distances: Vec<f64>,
    pub limit_plane: Option<Vec<ComplexVector>>,
    /// Largest projection of a unit stratum tangent onto the limit plane.
    pub projection: Option<f64>,
    #[serde(skip)]
    pub(crate) limit: Option<Subspace>,
    #[serde(skip)]
    pub(crate) last_frame: Option<ScaledFrame>,
}

/// Frame at the last shell divided by `t^{order}`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ScaledFrame {
    t: f64,
    one: Option<(DVector<f64>, usize)>,
    imag: Option<(DVector<f64>, usize)>,
}

impl ScaledFrame {
    /// `μ` (unit) whose `n_μ` points along `w` in the limit.
    fn mu_for(&self, w: &DVector<f64>) -> Complex64 {
        let (alpha, beta) = match (&self.one, &self.imag) {
            (Some(_), None) => (1.0, 0.0),
            (None, Some(_)) => (0.0, 1.0),
            (Some((a, ma)), Some((b, mb))) => {
                let m = nalgebra::DMatrix::from_columns(&[a.clone(), b.clone()]);
                let sol = m.svd(true, true).solve(w, 1e-14).expect("svd solve");
                let top = (*ma).max(*mb);
                // Undo the scalings: α = α'·t^{-m_a}, then multiply both by t^{top}.
                (sol[0] * self.t.powi((top - ma) as i32), sol[1] * self.t.powi((top - mb) as i32))
            }
            (None, None) => (0.0, 0.0),
        };
        let mu = Complex64::new(alpha, beta);
        if mu.norm() == 0.0 {
            mu
        } else {
            mu / mu.norm()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProbeVerdict {
    /// Every curve converged with limit planes orthogonal to the stratum.
    /// Evidence only: no failure found on the sampled curves.
    Compatible,
    FailWitness {
        curve_index: usize,
        curve: String,
        mu: [f64; 2],
        normal: ComplexVector,
        tangent: ComplexVector,
        projection: f64,
    },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub verdict: ProbeVerdict,
    pub curves: Vec<CurveProbe>,
    pub options: ProbeOptions,
}

/// Exact data of the frame along one curve.
struct CurveFrame {
    n: usize,
    one: Vec<RPoly>,
    imag: Vec<RPoly>,
    plucker: Vec<((usize, usize), RPoly)>,
}

fn vector_order(v: &[RPoly]) -> Option<usize> {
    v.iter().filter_map(rpoly_order).min()
}

fn eval_scaled(v: &[RPoly], shift: usize, t: f64) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().map(|p| rpoly_eval_shifted(p, shift, t)))
}

impl CurveFrame {
    fn new(f: &MixedPolynomial, curve: &CurveGerm) -> Result<Self, MixError> {
        let (one, imag) = SymbolicFamily::of(f).generators();
        let lift = |v: &[MixedPolynomial]| -> Result<Vec<RPoly>, MixError> {
            let tp = v.iter().map(|p| restrict(p, curve)).collect::<Result<Vec<_>, _>>()?;
            Ok(realify(&tp))
        };
        let one = lift(&one)?;
        let imag = lift(&imag)?;
        let d = one.len();
        let mut plucker = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let p = rpoly_sub(&rpoly_mul(&one[a], &imag[b]), &rpoly_mul(&one[b], &imag[a]));
                if !p.is_empty() {
                    plucker.push(((a, b), p));
                }
            }
        }
        Ok(Self { n: f.n_vars(), one, imag, plucker })
    }

    fn plane_at(&self, t: f64, rank_tol: f64) -> Subspace {
        let d = 2 * self.n;
        if let Some(m) = self.plucker.iter().filter_map(|(_, p)| rpoly_order(p)).min() {
            let vals: Vec<((usize, usize), f64)> =
                self.plucker.iter().map(|(ab, p)| (*ab, rpoly_eval_shifted(p, m, t))).collect();
            let &((a, b), top) = vals
                .iter()
                .max_by(|x, y| x.1.abs().partial_cmp(&y.1.abs()).unwrap())
                .unwrap();
            if top.abs() <= f64::MIN_POSITIVE {
                return Subspace::span(&[], rank_tol, d);
            }
            // Columns a and b of the antisymmetric Plücker matrix lie in the plane.
            let mut ca = DVector::zeros(d);
            let mut cb = DVector::zeros(d);
            for &((i, j), v) in &vals {
                if j == a {
                    ca[i] = v;
                }
                if i == a {
                    ca[j] = -v;
                }
                if j == b {
                    cb[i] = v;
                }
                if i == b {
                    cb[j] = -v;
                }
            }
            return Subspace::span(&[ca, cb], rank_tol, d);
        }
        for v in [&self.one, &self.imag] {
            if let Some(m) = vector_order(v) {
                return Subspace::span(&[eval_scaled(v, m, t)], rank_tol, d);
            }
        }
        Subspace::span(&[], rank_tol, d)
    }

    fn scaled_frame(&self, t: f64) -> ScaledFrame {
        let scaled = |v: &[RPoly]| vector_order(v).map(|m| (eval_scaled(v, m, t), m));
        ScaledFrame { t, one: scaled(&self.one), imag: scaled(&self.imag) }
    }
}

/// Shell-by-shell estimates of the limiting normal plane along `curve`.
pub fn limit_normal_plane(f: &MixedPolynomial, curve: &CurveGerm, opts: &ProbeOptions) -> Result<CurveProbe, MixError> {
    opts.schedule.validate()?;
    let frame = CurveFrame::new(f, curve)?;
    let planes: Vec<Subspace> = opts.schedule.times().map(|t| frame.plane_at(t, opts.rank_tol)).collect();
    let dims: Vec<usize> = planes.iter().map(Subspace::dim).collect();
    let dimension = if dims.iter().all(|&d| d == dims[0]) && dims[0] > 0 { Some(dims[0]) } else { None };
    let distances: Vec<f64> = planes
        .windows(2)
        .map(|w| w[0].distance(&w[1]).unwrap_or(f64::INFINITY))
        .collect();
    let run = opts.converge_run.min(distances.len());
    let converged = dimension.is_some() && distances[distances.len() - run..].iter().all(|&d| d < opts.converge_tol);
    let last = planes.last().cloned();
    let t_last = opts.schedule.times().last().unwrap();
    Ok(CurveProbe {
        curve: curve.label(),
        converged,
        dimension,
        distances,
        limit_plane: if converged {
            last.as_ref().map(|s| s.basis.column_iter().map(|c| export(&c.into_owned())).collect())
        } else {
            None
        },
        projection: None,
        limit: if converged { last } else { None },
        last_frame: Some(frame.scaled_frame(t_last)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionProbe {
    pub converged: bool,
    pub distances: Vec<f64>,
    /// Unit limit of `n_μ`, phase-normalized so its largest entry is real
    /// and positive.
    pub direction: Option<ComplexVector>,
}

/// Limit of the single normal `n_μ` along `curve`.
pub fn limit_normal_direction(
    f: &MixedPolynomial,
    curve: &CurveGerm,
    mu: &ComplexRational,
    opts: &ProbeOptions,
) -> Result<DirectionProbe, MixError> {
    opts.schedule.validate()?;
    let member = SymbolicFamily::of(f).member(mu);
    let tp = member.iter().map(|p| restrict(p, curve)).collect::<Result<Vec<_>, _>>()?;
    let v = realify(&tp);
    let Some(m) = vector_order(&v) else {
        return Ok(DirectionProbe { converged: false, distances: Vec::new(), direction: None });
    };
    let d = 2 * f.n_vars();
    let lines: Vec<Subspace> =
        opts.schedule.times().map(|t| Subspace::span(&[eval_scaled(&v, m, t)], opts.rank_tol, d)).collect();
    let distances: Vec<f64> =
        lines.windows(2).map(|w| w[0].distance(&w[1]).unwrap_or(f64::INFINITY)).collect();
    let run = opts.converge_run.min(distances.len());
    let converged = distances[distances.len() - run..].iter().all(|&x| x < opts.converge_tol);
    let last = lines.last().unwrap();
    let direction = (last.dim() == 1).then(|| {
        let c = to_complex(&last.basis.column(0).into_owned());
        let top = c.iter().copied().max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap()).unwrap();
        let phase = top.conj() / top.norm();
        let fixed: Vec<Complex64> = c.iter().map(|z| z * phase).collect();
        export(&to_real(&fixed))
    });
    Ok(DirectionProbe { converged, distances, direction })
}

/// Thom test of `F` along `stratum`, probing each curve independently.
pub fn thom_test(
    f: &MixedPolynomial,
    stratum: &Stratum,
    curves: &[CurveGerm],
    opts: &ProbeOptions,
) -> Result<ProbeResult, MixError> {
    if stratum.base.len() != f.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: stratum.base.len() });
    }
    for c in curves {
        if c.dim() != f.n_vars() {
            return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: c.dim() });
        }
        if c.origin() != stratum.base {
            return Err(MixError::InvalidArgument(format!("curve {} does not start at the stratum base", c.label())));
        }
    }
    let tangent = stratum.tangent_space(opts.rank_tol);
    let mut probes: Vec<CurveProbe> = curves
        .par_iter()
        .map(|c| limit_normal_plane(f, c, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let mut witness = None;
    for (idx, p) in probes.iter_mut().enumerate() {
        let Some(plane) = &p.limit else { continue };
        let (s, w, v) = plane.max_alignment(&tangent);
        p.projection = Some(s);
        if s > opts.fail_tol && witness.is_none() {
            let mu = p.last_frame.as_ref().map(|fr| fr.mu_for(&w)).unwrap_or_default();
            witness = Some(ProbeVerdict::FailWitness {
                curve_index: idx,
                curve: p.curve.clone(),
                mu: [round12(mu.re), round12(mu.im)],
                normal: export(&w),
                tangent: export(&v),
                projection: s,
            });
        }
    }
    let verdict = match witness {
        Some(w) => w,
        None if !probes.is_empty()
            && probes.iter().all(|p| p.converged && p.projection.is_some_and(|s| s < opts.compatible_tol)) =>
        {
            ProbeVerdict::Compatible
        }
        None => ProbeVerdict::Inconclusive,
    };
    Ok(ProbeResult { verdict, curves: probes, options: *opts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;
    use crate::thomprobe::curve::default_battery;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn base(v: &[i64]) -> Vec<ComplexRational> {
        v.iter().map(|&x| ComplexRational::from_int(x)).collect()
    }

    #[test]
    fn polar_family_witness_on_the_y_axis() {
        let f = parse_with("x~*y*(x+z^2)", &XYZ).unwrap();
        let curve = CurveGerm::parse(&["t", "1", "0"]).unwrap();
        let opts = ProbeOptions::default();
        let dir = limit_normal_direction(&f, &curve, &ComplexRational::i(), &opts).unwrap();
        assert!(dir.converged);
        let d = dir.direction.unwrap();
        assert_eq!(d, vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]);

        let probe = limit_normal_plane(&f, &curve, &opts).unwrap();
        assert!(probe.converged);
        assert_eq!(probe.dimension, Some(2));

        let stratum = Stratum::complex_line(base(&[0, 1, 0]), vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = thom_test(&f, &stratum, &[curve], &opts).unwrap();
        match r.verdict {
            ProbeVerdict::FailWitness { mu, projection, .. } => {
                assert!((projection - 1.0).abs() < 1e-9);
                assert!(mu[0].abs() < 1e-9 && (mu[1].abs() - 1.0).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sabbah_battery_is_compatible() {
        let f = parse_with("(x^2 - z*y^2)*y~", &XYZ).unwrap();
        let b = base(&[0, 0, 1]);
        let stratum = Stratum::complex_line(b.clone(), vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let curves = default_battery(&b, 11);
        let r = thom_test(&f, &stratum, &curves, &ProbeOptions::default()).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::Compatible, "{:#?}", r.curves.iter().map(|c| (&c.curve, c.converged, c.projection)).collect::<Vec<_>>());
    }

    #[test]
    fn two_variable_example_fails_on_x_zero() {
        let f = parse_with("x*y*x~", &["x", "y"]).unwrap();
        let curve = CurveGerm::parse(&["t", "1"]).unwrap();
        let stratum = Stratum::complex_line(base(&[0, 1]), vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = thom_test(&f, &stratum, &[curve], &ProbeOptions::default()).unwrap();
        assert!(matches!(r.verdict, ProbeVerdict::FailWitness { .. }));
    }
}
