//! Combines the sufficient-condition routes into a tube / Thom verdict.
//!
//! Routes are tried in a fixed order and the first one that decides a
//! question wins; later routes that disagree are kept as notes.

use num_complex::Complex64;
use serde::Serialize;

use super::scan::{milnor_scan, sing_scan, MilnorScan, ScanOptions, SingScan};
use crate::discgeom::{isolated_value_verdict_with, Isolation, IsolatedVerdict, VerdictOptions};
use crate::error::MixError;
use crate::mixed::MixedPolynomial;
use crate::polar::{solve_polar_with, PolarOptions, PolarSolution, PolarStatus};
use crate::rational::ComplexRational;
use crate::thomprobe::probe::{export, ComplexVector};
use crate::thomprobe::{default_battery, thom_test, CurveGerm, ProbeOptions, ProbeResult, ProbeVerdict, Stratum};

pub const SEPARATE_VARIABLES: &str = "separate-variables";
pub const ICIS_FLAG: &str = "icis-flag";
pub const POLAR: &str = "polar";
pub const DISC_LINES: &str = "disc-lines";
pub const PROBE_WITNESS: &str = "probe-witness";

#[derive(Debug, Clone, PartialEq)]
pub enum TubeInput {
    Mixed(MixedPolynomial),
    Pair { f: MixedPolynomial, g: MixedPolynomial },
}

impl TubeInput {
    pub fn polynomial(&self) -> Result<MixedPolynomial, MixError> {
        match self {
            TubeInput::Mixed(p) => Ok(p.clone()),
            TubeInput::Pair { f, g } => MixedPolynomial::from_pair(f, g),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TubeOptions {
    /// Caller asserts `(f, g)` is an ICIS (or Thom regular).
    pub assert_icis: bool,
    pub polar: PolarOptions,
    pub isolation: VerdictOptions,
    pub probe: ProbeOptions,
    /// Strata to probe; `None` means every coordinate axis contained in `V`.
    pub strata: Option<Vec<Stratum>>,
    /// Extra curves, used for every stratum whose base they start at.
    pub curves: Vec<CurveGerm>,
    pub battery_seed: u64,
    pub scan: Option<ScanOptions>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TubeStatus {
    Yes { route: String },
    No { route: String },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ThomStatus {
    Regular { route: String },
    Fail { route: String, stratum: usize, witness: ProbeVerdict },
    /// Probes ran and found nothing; this is not a proof of regularity.
    NoFailureFound,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteRecord {
    pub route: String,
    pub inputs: String,
    pub conclusion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumProbe {
    pub base: Vec<String>,
    pub tangent: Vec<ComplexVector>,
    pub result: ProbeResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubeEvidence {
    pub polar: Option<PolarSolution>,
    pub isolation: Option<IsolatedVerdict>,
    pub probes: Vec<StratumProbe>,
    pub milnor: Option<MilnorScan>,
    pub sing: Option<SingScan>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubeVerdict {
    pub tube: TubeStatus,
    pub thom: ThomStatus,
    /// Routes that fired, in firing order.
    pub routes: Vec<RouteRecord>,
    pub notes: Vec<String>,
    pub evidence: TubeEvidence,
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn separate_variables(f: &MixedPolynomial, g: &MixedPolynomial) -> bool {
    let (sf, sg) = (f.support_vars(), g.support_vars());
    !sf.is_empty() && !sg.is_empty() && sf.iter().all(|j| !sg.contains(j))
}

/// Coordinate axes `C·e_j` on which `F` vanishes identically, based at `e_j`.
pub fn axis_strata(f: &MixedPolynomial) -> Result<Vec<Stratum>, MixError> {
    let n = f.n_vars();
    let mut out = Vec::new();
    for j in 0..n {
        let on_axis = f.terms().any(|(e, _)| (0..n).all(|k| k == j || (e.nu[k] == 0 && e.mu[k] == 0)));
        if !on_axis {
            let base = (0..n).map(|k| if k == j { ComplexRational::one() } else { ComplexRational::zero() }).collect();
            let dir = (0..n).map(|k| Complex64::new(if k == j { 1.0 } else { 0.0 }, 0.0)).collect();
            out.push(Stratum::complex_line(base, dir)?);
        }
    }
    Ok(out)
}

/// Runs the routes in order and attaches all evidence gathered on the way.
pub fn tube_verdict(input: &TubeInput, opts: &TubeOptions) -> Result<TubeVerdict, MixError> {
    let f = input.polynomial()?;
    let mut tube = TubeStatus::Unknown;
    let mut thom = ThomStatus::Unknown;
    let mut routes = Vec::new();
    let mut notes = Vec::new();
    let fire = |routes: &mut Vec<RouteRecord>, route: &str, inputs: String, conclusion: &str| {
        routes.push(RouteRecord { route: route.into(), inputs, conclusion: conclusion.into() });
    };

    let isolation = match input {
        TubeInput::Pair { f: p, g: q } => match isolated_value_verdict_with(p, q, &opts.isolation) {
            Ok(v) => Some(v),
            Err(e @ (MixError::DegreeBound { .. } | MixError::EliminationDegenerate(_))) => {
                notes.push(format!("isolation check skipped: {e}"));
                None
            }
            Err(e) => return Err(e),
        },
        TubeInput::Mixed(_) => None,
    };

    if let TubeInput::Pair { f: p, g: q } = input {
        if separate_variables(p, q) {
            let inputs = format!("f in {:?}, g in {:?}", p.support_vars(), q.support_vars());
            fire(&mut routes, SEPARATE_VARIABLES, inputs, "thom regular, tube yes");
            thom = ThomStatus::Regular { route: SEPARATE_VARIABLES.into() };
            tube = TubeStatus::Yes { route: SEPARATE_VARIABLES.into() };
        }
        if opts.assert_icis && matches!(tube, TubeStatus::Unknown) {
            match isolation.as_ref().map(|v| v.status) {
                Some(Isolation::Isolated) => {
                    fire(&mut routes, ICIS_FLAG, "asserted; no non-axis discriminant lines".into(), "thom regular, tube yes");
                    thom = ThomStatus::Regular { route: ICIS_FLAG.into() };
                    tube = TubeStatus::Yes { route: ICIS_FLAG.into() };
                }
                _ => notes.push("icis flag ignored: isolated critical value not certified".into()),
            }
        }
    }

    let polar = solve_polar_with(&f, opts.polar)?;
    if polar.polar == PolarStatus::Yes {
        if let Some(w) = &polar.canonical {
            let inputs = format!("p={} k={}", fmt_vec(&w.p), w.k);
            if matches!(tube, TubeStatus::Unknown) {
                fire(&mut routes, POLAR, inputs, "tube yes");
                tube = TubeStatus::Yes { route: POLAR.into() };
            }
        }
    }

    if let Some(v) = isolation.as_ref().filter(|v| v.status == Isolation::NotIsolated) {
        let inputs = format!("{} via {}", v.discriminant.clone().unwrap_or_default(), v.method);
        match tube {
            TubeStatus::Unknown => {
                fire(&mut routes, DISC_LINES, inputs, "tube no");
                tube = TubeStatus::No { route: DISC_LINES.into() };
            }
            _ => notes.push(format!("{DISC_LINES} disagrees with an earlier route ({inputs})")),
        }
    }

    let mut probes = Vec::new();
    if !matches!(thom, ThomStatus::Regular { .. }) {
        let strata = match &opts.strata {
            Some(s) => s.clone(),
            None => axis_strata(&f)?,
        };
        for (idx, s) in strata.iter().enumerate() {
            let mut curves: Vec<CurveGerm> = opts.curves.iter().filter(|c| c.origin() == s.base).cloned().collect();
            curves.extend(default_battery(&s.base, opts.battery_seed.wrapping_add(idx as u64)));
            let result = thom_test(&f, s, &curves, &opts.probe)?;
            if matches!(thom, ThomStatus::Unknown | ThomStatus::NoFailureFound) {
                if let ProbeVerdict::FailWitness { curve, mu, .. } = &result.verdict {
                    let inputs = format!("stratum {idx}, curve {curve}, mu=({}, {})", mu[0], mu[1]);
                    fire(&mut routes, PROBE_WITNESS, inputs, "thom fail");
                    thom = ThomStatus::Fail { route: PROBE_WITNESS.into(), stratum: idx, witness: result.verdict.clone() };
                } else {
                    thom = ThomStatus::NoFailureFound;
                }
            }
            probes.push(StratumProbe {
                base: s.base.iter().map(ComplexRational::canonical_string).collect(),
                tangent: s.tangent.iter().map(|v| export(&crate::thomprobe::grassmann::to_real(v))).collect(),
                result,
            });
        }
    }

    let (milnor, sing) = match &opts.scan {
        Some(so) => (Some(milnor_scan(&f, so)?), Some(sing_scan(&f, so)?)),
        None => (None, None),
    };

    Ok(TubeVerdict { tube, thom, routes, notes, evidence: TubeEvidence { polar: Some(polar), isolation, probes, milnor, sing } })
}
