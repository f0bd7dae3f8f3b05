//! Sampling scans on spheres `|z| = r`: points of the Milnor set off `V`,
//! and singular points of `F` off `V`.

use argmin::core::{CostFunction, Error as ArgminError, Executor};
use argmin::solver::neldermead::NelderMead;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::residual::{distance_to_zero_set, milnor_residual_with, relative_sing_residual};
use crate::error::MixError;
use crate::mixed::{CompiledPoly, MixedPolynomial};
use crate::thomprobe::frame::FrameEvaluator;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOptions {
    /// Strictly decreasing sphere radii.
    pub radii: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Residual below which a minimizer counts as a hit.
    pub residual_tol: f64,
    /// Hits need `|F(z)|` above this.
    pub value_tol: f64,
    pub max_iters: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            radii: vec![0.2, 0.1, 0.05, 0.025],
            samples: 200,
            seed: 0,
            residual_tol: 1e-6,
            value_tol: 1e-6,
            max_iters: 400,
        }
    }
}

impl ScanOptions {
    pub fn validate(&self) -> Result<(), MixError> {
        if self.radii.is_empty() || self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(MixError::InvalidArgument("shell radii must be positive".into()));
        }
        if self.radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(MixError::InvalidArgument("shell radii must be strictly decreasing".into()));
        }
        if self.samples == 0 {
            return Err(MixError::InvalidArgument("samples per shell must be positive".into()));
        }
        Ok(())
    }
}

/// One row of the evidence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShellEvidence {
    pub radius: f64,
    pub found: usize,
    /// Smallest estimated distance to `V` among the hits.
    pub min_distance: Option<f64>,
    /// `min_distance / radius`.
    pub min_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MilnorScan {
    pub shells: Vec<ShellEvidence>,
    /// Smallest ratio over shells with hits.
    pub fitted_c: Option<f64>,
    /// Least-squares slope of `log min_distance` against `log radius`.
    pub slope: Option<f64>,
    pub supports_b: bool,
    pub distance_method: &'static str,
    pub options: ScanOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingShell {
    pub radius: f64,
    pub found: usize,
    /// Smallest `|F|` among the hits.
    pub min_value: Option<f64>,
    /// Largest `|F|` among the hits.
    pub max_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingScan {
    pub shells: Vec<SingShell>,
    /// Singular points with `F ≠ 0` were found on every shell.
    pub accumulates: bool,
    pub options: ScanOptions,
}

/// Slope above which distances shrink too fast to be read as `≥ c·r`.
const SLOPE_LIMIT: f64 = 1.5;

struct Compiled {
    value: CompiledPoly,
    frame: FrameEvaluator,
}

/// Point of the sphere of radius `r` addressed by an unnormalized real vector.
fn on_sphere(x: &[f64], r: f64) -> Vec<Complex64> {
    let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    x.chunks(2).map(|p| Complex64::new(p[0], p[1]) * (r / nx)).collect()
}

struct Objective<'a> {
    c: &'a Compiled,
    radius: f64,
    kind: Kind,
}

#[derive(Clone, Copy)]
enum Kind {
    Milnor,
    Sing,
}

impl Objective<'_> {
    fn residual(&self, z: &[Complex64]) -> f64 {
        match self.kind {
            Kind::Milnor => milnor_residual_with(&self.c.frame, z).unwrap_or(1.0),
            Kind::Sing => {
                let (a, b) = self.c.frame.parts(z);
                relative_sing_residual(&a, &b)
            }
        }
    }
}

impl CostFunction for Objective<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> Result<f64, ArgminError> {
        let r = self.residual(&on_sphere(x, self.radius));
        // The Milnor residual is a distance; squaring makes it smooth at its zeros.
        Ok(match self.kind {
            Kind::Milnor => r * r,
            Kind::Sing => r,
        })
    }
}

fn sample_rng(seed: u64, shell: usize, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((shell as u64) << 32) | sample as u64);
    rng
}

/// Local Nelder–Mead descent from a seeded random start; returns the
/// minimizer on the sphere and its residual.
fn descend(obj: &Objective, dim: usize, rng: &mut ChaCha8Rng, max_iters: u64) -> (Vec<Complex64>, f64) {
    let x0: Vec<f64> = (0..2 * dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut simplex = vec![x0.clone()];
    for k in 0..2 * dim {
        let mut v = x0.clone();
        v[k] += 0.25;
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex).with_sd_tolerance(1e-15).expect("positive tolerance");
    let best = Executor::new(obj, solver)
        .configure(|s| s.max_iters(max_iters))
        .run()
        .ok()
        .and_then(|res| res.state.best_param.clone())
        .unwrap_or(x0);
    let z = on_sphere(&best, obj.radius);
    let r = obj.residual(&z);
    (z, r)
}

impl CostFunction for &Objective<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Self::Param) -> Result<f64, ArgminError> {
        (*self).cost(x)
    }
}

/// Hits per shell, ordered by sample index: `(z, |F(z)|)`.
fn run(
    f: &MixedPolynomial,
    opts: &ScanOptions,
    kind: Kind,
) -> Result<Vec<Vec<(Vec<Complex64>, f64)>>, MixError> {
    opts.validate()?;
    let c = Compiled { value: f.compile(), frame: FrameEvaluator::new(f) };
    let n = f.n_vars();
    let jobs: Vec<(usize, usize)> =
        (0..opts.radii.len()).flat_map(|s| (0..opts.samples).map(move |k| (s, k))).collect();
    let results: Vec<(usize, Option<(Vec<Complex64>, f64)>)> = jobs
        .par_iter()
        .map(|&(s, k)| {
            let obj = Objective { c: &c, radius: opts.radii[s], kind };
            let mut rng = sample_rng(opts.seed, s, k);
            let (z, res) = descend(&obj, n, &mut rng, opts.max_iters);
            let value = c.value.eval(&z).norm();
            let hit = res < opts.residual_tol && value > opts.value_tol;
            (s, hit.then_some((z, value)))
        })
        .collect();
    let mut out = vec![Vec::new(); opts.radii.len()];
    for (s, hit) in results {
        if let Some(h) = hit {
            out[s].push(h);
        }
    }
    Ok(out)
}

/// Searches each shell for points of the Milnor set off `V` and records
/// how close they come to `V`.
pub fn milnor_scan(f: &MixedPolynomial, opts: &ScanOptions) -> Result<MilnorScan, MixError> {
    let hits = run(f, opts, Kind::Milnor)?;
    let frame = FrameEvaluator::new(f);
    let value = f.compile();
    let shells: Vec<ShellEvidence> = opts
        .radii
        .iter()
        .zip(&hits)
        .map(|(&radius, hs)| {
            let min_distance = hs
                .iter()
                .map(|(z, _)| distance_to_zero_set(&frame, value.eval(z), z))
                .min_by(f64::total_cmp);
            ShellEvidence { radius, found: hs.len(), min_distance, min_ratio: min_distance.map(|d| d / radius) }
        })
        .collect();
    let fitted_c = shells.iter().filter_map(|s| s.min_ratio).min_by(f64::total_cmp);
    let pts: Vec<(f64, f64)> = shells
        .iter()
        .filter_map(|s| s.min_distance.filter(|d| *d > 0.0).map(|d| (s.radius.ln(), d.ln())))
        .collect();
    let slope = fit_slope(&pts);
    let supports_b = match (fitted_c, slope) {
        (None, _) => true,
        (Some(c), Some(m)) => c > 0.0 && m < SLOPE_LIMIT,
        (Some(c), None) => c > 0.0,
    };
    Ok(MilnorScan { shells, fitted_c, slope, supports_b, distance_method: "gauss-newton", options: opts.clone() })
}

/// The singular points off `V` found by [`sing_scan`], shell by shell.
pub fn singular_points(f: &MixedPolynomial, opts: &ScanOptions) -> Result<Vec<Vec<Vec<Complex64>>>, MixError> {
    Ok(run(f, opts, Kind::Sing)?.into_iter().map(|hs| hs.into_iter().map(|h| h.0).collect()).collect())
}

fn fit_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Searches each shell for singular points of `F` with `F ≠ 0`, minimizing
/// the scale-free singular residual.
pub fn sing_scan(f: &MixedPolynomial, opts: &ScanOptions) -> Result<SingScan, MixError> {
    let hits = run(f, opts, Kind::Sing)?;
    let shells: Vec<SingShell> = opts
        .radii
        .iter()
        .zip(&hits)
        .map(|(&radius, hs)| SingShell {
            radius,
            found: hs.len(),
            min_value: hs.iter().map(|h| h.1).min_by(f64::total_cmp),
            max_value: hs.iter().map(|h| h.1).max_by(f64::total_cmp),
        })
        .collect();
    let accumulates = shells.iter().all(|s| s.found > 0);
    Ok(SingScan { shells, accumulates, options: opts.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_with;

    fn quick() -> ScanOptions {
        ScanOptions { samples: 24, ..ScanOptions::default() }
    }

    #[test]
    fn linear_function_has_unit_ratio() {
        let f = parse_with("z1", &["z1", "z2"]).unwrap();
        let scan = milnor_scan(&f, &quick()).unwrap();
        for s in &scan.shells {
            assert!(s.found > 0);
            assert!((s.min_ratio.unwrap() - 1.0).abs() < 1e-4, "{s:?}");
        }
        assert!((scan.slope.unwrap() - 1.0).abs() < 1e-3);
        assert!(scan.supports_b);
    }

    #[test]
    fn scan_is_deterministic() {
        let f = parse_with("x*y*x~", &["x", "y"]).unwrap();
        let a = milnor_scan(&f, &quick()).unwrap();
        let b = milnor_scan(&f, &quick()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.supports_b, "{a:?}");
    }

    #[test]
    fn shear_demo_has_singular_points_off_the_zero_set() {
        let f = parse_with("x*conj(x+y^2)", &["x", "y"]).unwrap();
        let scan = sing_scan(&f, &quick()).unwrap();
        assert!(scan.accumulates, "{scan:?}");
        let z1 = parse_with("z1", &["z1", "z2"]).unwrap();
        assert!(!sing_scan(&z1, &quick()).unwrap().accumulates);
    }

    #[test]
    fn rejects_bad_radii() {
        let f = parse_with("z1", &["z1"]).unwrap();
        let bad = ScanOptions { radii: vec![0.1, 0.2], ..quick() };
        assert!(milnor_scan(&f, &bad).is_err());
    }
}
