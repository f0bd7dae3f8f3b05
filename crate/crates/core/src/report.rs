//! The full analysis pipeline and its JSON report.

use serde::Serialize;

use crate::discgeom::{sing_decomposition, Criterion, IsolatedVerdict, VerdictOptions};
use crate::discgeom::sing::RenderedSing;
use crate::error::MixError;
use crate::fixture::{Expected, Fixture};
use crate::milnor::verdict::StratumProbe;
use crate::milnor::{tube_verdict, MilnorScan, RouteRecord, ScanOptions, SingScan, ThomStatus, TubeInput, TubeOptions, TubeStatus};
use crate::parser::format_named;
use crate::polar::{PolarOptions, PolarSolution};
use crate::thomprobe::{CurveGerm, ProbeOptions, Stratum};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub seed: u64,
    /// Overrides the fixture strata; `None` keeps them (or the axis default).
    pub strata: Option<Vec<Stratum>>,
    pub curves: Vec<CurveGerm>,
    pub scan: ScanOptions,
    pub probe: ProbeOptions,
    pub polar: PolarOptions,
    pub criterion: Criterion,
    pub assert_icis: bool,
    /// Skip the sampling scans.
    pub skip_scan: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub name: Option<String>,
    pub variables: Vec<String>,
    pub f: Option<String>,
    pub g: Option<String>,
    /// Canonical form of `F`.
    pub polynomial: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictSection {
    pub tube: TubeStatus,
    pub thom: ThomStatus,
    pub routes: Vec<RouteRecord>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectationCheck {
    pub matches: bool,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Seeds {
    pub battery: u64,
    pub scan: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub probe: ProbeOptions,
    pub scan: Option<ScanOptions>,
    pub polar_bound: u32,
    pub allow_zero_k: bool,
    pub criterion: Criterion,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub polar: Option<PolarSolution>,
    pub discriminant: Option<IsolatedVerdict>,
    pub sing: Option<RenderedSing>,
    pub thom_probes: Vec<StratumProbe>,
    pub milnor: Option<MilnorScan>,
    pub sing_scan: Option<SingScan>,
    pub verdict: VerdictSection,
    pub expected: Option<ExpectationCheck>,
    pub seeds: Seeds,
    pub tolerances: Tolerances,
}

impl AnalysisReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn status_word(t: &TubeStatus) -> (&'static str, Option<&str>) {
    match t {
        TubeStatus::Yes { route } => ("yes", Some(route)),
        TubeStatus::No { route } => ("no", Some(route)),
        TubeStatus::Unknown => ("unknown", None),
    }
}

fn thom_word(t: &ThomStatus) -> (&'static str, Option<&str>) {
    match t {
        ThomStatus::Regular { route } => ("regular", Some(route)),
        ThomStatus::Fail { route, .. } => ("fail", Some(route)),
        ThomStatus::NoFailureFound => ("no-failure-found", None),
        ThomStatus::Unknown => ("unknown", None),
    }
}

/// Lists every field of `expected` that the report contradicts.
pub fn check_expected(expected: &Expected, report: &AnalysisReport) -> ExpectationCheck {
    let mut bad = Vec::new();
    let mut cmp = |what: &str, want: &Option<String>, got: Option<&str>| {
        if let Some(w) = want {
            if Some(w.as_str()) != got {
                bad.push(format!("{what}: expected {w}, got {}", got.unwrap_or("none")));
            }
        }
    };
    let (tube, tube_route) = status_word(&report.verdict.tube);
    let (thom, thom_route) = thom_word(&report.verdict.thom);
    cmp("tube", &expected.tube, Some(tube));
    cmp("tube_route", &expected.tube_route, tube_route);
    cmp("thom", &expected.thom, Some(thom));
    cmp("thom_route", &expected.thom_route, thom_route);
    let iso = report.discriminant.as_ref().map(|d| match d.status {
        crate::discgeom::Isolation::Isolated => "isolated",
        crate::discgeom::Isolation::NotIsolated => "not-isolated",
        crate::discgeom::Isolation::Unknown => "unknown",
    });
    cmp("isolation", &expected.isolation, iso);
    if let Some(want) = &expected.polar {
        let got = report.polar.as_ref().and_then(|p| p.canonical.as_ref()).map(|w| {
            let mut v = w.p.clone();
            v.push(w.k);
            v
        });
        if got.as_ref() != Some(want) {
            bad.push(format!("polar: expected {want:?}, got {got:?}"));
        }
    }
    ExpectationCheck { matches: bad.is_empty(), mismatches: bad }
}

/// Runs every stage on `input` and assembles the report.
pub fn analyze(
    name: Option<&str>,
    variables: &[String],
    input: &TubeInput,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, MixError> {
    let f = input.polynomial()?;
    if variables.len() != f.n_vars() {
        return Err(MixError::DimensionMismatch { expected: f.n_vars(), found: variables.len() });
    }
    let names: Vec<&str> = variables.iter().map(String::as_str).collect();
    let scan = (!opts.skip_scan).then(|| ScanOptions { seed: opts.seed, ..opts.scan.clone() });
    let tube_opts = TubeOptions {
        assert_icis: opts.assert_icis,
        polar: opts.polar,
        isolation: VerdictOptions { criterion: opts.criterion, branches: Vec::new() },
        probe: opts.probe,
        strata: opts.strata.clone(),
        curves: opts.curves.clone(),
        battery_seed: opts.seed,
        scan: scan.clone(),
    };
    let verdict = tube_verdict(input, &tube_opts)?;
    let (fe, ge, sing) = match input {
        TubeInput::Pair { f: p, g: q } => {
            let sing = sing_decomposition(p, q).ok().map(|s| s.render(&names));
            (Some(format_named(p, &names)), Some(format_named(q, &names)), sing)
        }
        TubeInput::Mixed(_) => (None, None, None),
    };
    let ev = verdict.evidence;
    Ok(AnalysisReport {
        schema: SCHEMA,
        tool: ToolInfo { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") },
        input: InputEcho {
            name: name.map(str::to_string),
            variables: variables.to_vec(),
            f: fe,
            g: ge,
            polynomial: format_named(&f, &names),
        },
        polar: ev.polar,
        discriminant: ev.isolation,
        sing,
        thom_probes: ev.probes,
        milnor: ev.milnor,
        sing_scan: ev.sing,
        verdict: VerdictSection { tube: verdict.tube, thom: verdict.thom, routes: verdict.routes, notes: verdict.notes },
        expected: None,
        seeds: Seeds { battery: opts.seed, scan: opts.seed },
        tolerances: Tolerances {
            probe: opts.probe,
            scan,
            polar_bound: opts.polar.bound,
            allow_zero_k: opts.polar.allow_zero_k,
            criterion: opts.criterion,
        },
    })
}

/// Analyzes a fixture, using its strata and curves unless `opts` overrides
/// them, and checks its expected block.
pub fn analyze_fixture(fx: &Fixture, opts: &AnalyzeOptions) -> Result<AnalysisReport, MixError> {
    let mut o = opts.clone();
    if o.strata.is_none() && !fx.strata.is_empty() {
        o.strata = Some(fx.strata()?);
    }
    o.curves.extend(fx.curves()?);
    o.assert_icis |= fx.assert_icis;
    let mut report = analyze(Some(&fx.name), &fx.variables, &fx.input()?, &o)?;
    if let Some(e) = &fx.expected {
        report.expected = Some(check_expected(e, &report));
    }
    Ok(report)
}
