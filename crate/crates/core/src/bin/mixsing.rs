use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use mixsing::discgeom::{isolated_value_verdict_with, shear_search, Criterion, PuiseuxBranch, VerdictOptions};
use mixsing::error::MixError;
use mixsing::fixture;
use mixsing::milnor::{milnor_scan, sing_scan, ScanOptions, TubeInput};
use mixsing::mixed::MixedPolynomial;
use mixsing::parser::{format_named, parse_mixed, parse_real_parameter_poly, SourceExpr};
use mixsing::polar::{solve_polar_with, PolarOptions};
use mixsing::rational::ComplexRational;
use mixsing::report::{analyze, analyze_fixture, AnalyzeOptions};
use mixsing::thomprobe::{default_battery, thom_test, CurveGerm, ProbeOptions, Schedule, Stratum, SymbolicFamily};

#[derive(Parser)]
#[command(name = "mixsing", version, about = "Isolated critical values, Thom probes and Milnor tubes of mixed germs f·ḡ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on a fixture or an inline germ.
    Analyze(AnalyzeArgs),
    /// Wirtinger derivatives and the normal family of F.
    Wirtinger(InputArgs),
    /// Polar weights of F.
    Polar(PolarArgs),
    /// Discriminant and isolated critical value of a pair.
    Disc(DiscArgs),
    /// Thom (a_F) probe along a stratum.
    ThomProbe(ProbeArgs),
    /// Milnor set and singular point scans on shrinking spheres.
    MilnorScan(ScanArgs),
    /// Search for a shear (f + λg^k, g) with an isolated critical value.
    Shear(ShearArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Mixed expression for F, e.g. "x*y*x~".
    expr: Option<String>,
    /// Holomorphic pair (f, g) with F = f·conj(g).
    #[arg(long, num_args = 2, value_names = ["F", "G"])]
    pair: Option<Vec<String>>,
    /// Comma-separated variable names; inferred from the input when absent.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    TangentCone,
    LineComponents,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::TangentCone => Criterion::TangentCone,
            CriterionArg::LineComponents => Criterion::LineComponents,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Bundled fixture name or path to a fixture file.
    #[arg(long, conflicts_with_all = ["expr", "pair"])]
    fixture: Option<String>,
    #[command(flatten)]
    input: InputArgs,
    /// Stratum as "base:direction", e.g. "0,1,0:0,1,0" (repeatable).
    #[arg(long)]
    stratum: Vec<String>,
    /// Extra curve, comma-separated components in t, e.g. "t,1,0" (repeatable).
    #[arg(long)]
    curves: Vec<String>,
    /// Milnor scan radii, strictly decreasing, e.g. "0.2,0.1,0.05,0.025".
    #[arg(long)]
    shells: Option<String>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on Σ|p_j| for the polar weight search.
    #[arg(long, default_value_t = 64)]
    k_bound: u32,
    #[arg(long)]
    allow_zero_k: bool,
    /// Assert that (f, g) is an ICIS.
    #[arg(long)]
    assert_icis: bool,
    #[arg(long, value_enum, default_value = "tangent-cone")]
    criterion: CriterionArg,
    /// Skip the sampling scans.
    #[arg(long)]
    no_scan: bool,
    #[command(flatten)]
    probe: ProbeTolArgs,
}

#[derive(Args, Clone)]
struct ProbeTolArgs {
    #[arg(long, default_value_t = 0.1)]
    t0: f64,
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long, default_value_t = 60)]
    probe_shells: usize,
    #[arg(long, default_value_t = 1e-6)]
    converge_tol: f64,
    #[arg(long, default_value_t = 1e-4)]
    fail_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    compatible_tol: f64,
}

impl ProbeTolArgs {
    fn options(&self) -> Result<ProbeOptions, MixError> {
        let schedule = Schedule { t0: self.t0, rho: self.rho, shells: self.probe_shells };
        schedule.validate()?;
        Ok(ProbeOptions {
            schedule,
            converge_tol: self.converge_tol,
            fail_tol: self.fail_tol,
            compatible_tol: self.compatible_tol,
            ..ProbeOptions::default()
        })
    }
}

#[derive(Args)]
struct PolarArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 64)]
    k_bound: u32,
    #[arg(long)]
    allow_zero_k: bool,
}

#[derive(Args)]
struct DiscArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "tangent-cone")]
    criterion: CriterionArg,
    /// Discriminant branch "u = t^p; v = a*t^q + ..." for three or more variables (repeatable).
    #[arg(long)]
    branch: Vec<String>,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Stratum as "base:direction" (repeatable); default: axes inside V.
    #[arg(long)]
    stratum: Vec<String>,
    #[arg(long)]
    curves: Vec<String>,
    /// Only probe the given curves, without the default battery.
    #[arg(long)]
    no_battery: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    probe: ProbeTolArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    shells: Option<String>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    residual_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    value_tol: f64,
    #[arg(long, default_value_t = 400)]
    max_iters: u64,
}

#[derive(Args)]
struct ShearArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 8)]
    max_k: u32,
    /// Shear coefficient λ.
    #[arg(long, default_value = "1")]
    lambda: String,
    #[arg(long, value_enum, default_value = "tangent-cone")]
    criterion: CriterionArg,
}

/// Identifiers in the input other than `i` and `conj`, sorted.
fn infer_vars(texts: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in texts {
        let mut cur = String::new();
        for ch in t.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                cur.push(ch);
            } else {
                if cur.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') && cur != "i" && cur != "conj" {
                    out.push(cur.clone());
                }
                cur.clear();
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

impl InputArgs {
    fn variables(&self) -> Vec<String> {
        match &self.vars {
            Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            None => {
                let texts: Vec<&str> = self.expr.iter().chain(self.pair.iter().flatten()).map(String::as_str).collect();
                infer_vars(&texts)
            }
        }
    }

    fn resolve(&self) -> Result<(Vec<String>, TubeInput), MixError> {
        let vars = self.variables();
        if vars.is_empty() {
            return Err(MixError::InvalidArgument("no variables: pass --vars".into()));
        }
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let parse = |t: &str| parse_mixed(&SourceExpr::new(t, &names)).map_err(MixError::from);
        let input = match (&self.expr, &self.pair) {
            (Some(e), None) => TubeInput::Mixed(parse(e)?),
            (None, Some(p)) => TubeInput::Pair { f: parse(&p[0])?, g: parse(&p[1])? },
            _ => return Err(MixError::InvalidArgument("give either an expression or --pair F G".into())),
        };
        Ok((vars, input))
    }

    fn pair(&self) -> Result<(Vec<String>, MixedPolynomial, MixedPolynomial), MixError> {
        match self.resolve()? {
            (vars, TubeInput::Pair { f, g }) => Ok((vars, f, g)),
            _ => Err(MixError::InvalidArgument("this command needs --pair F G".into())),
        }
    }
}

fn constant(text: &str) -> Result<ComplexRational, MixError> {
    let p = parse_real_parameter_poly(text.trim())?;
    if p.len() > 1 {
        return Err(MixError::InvalidArgument(format!("expected a constant, found '{text}'")));
    }
    Ok(p.into_iter().next().unwrap_or_else(ComplexRational::zero))
}

fn parse_stratum(text: &str) -> Result<Stratum, MixError> {
    let (base, dir) = text
        .split_once(':')
        .ok_or_else(|| MixError::InvalidArgument(format!("stratum '{text}' is not of the form base:direction")))?;
    let base = base.split(',').map(constant).collect::<Result<Vec<_>, _>>()?;
    let dir: Vec<Complex64> =
        dir.split(',').map(|t| constant(t).map(|c| c.to_complex64())).collect::<Result<_, _>>()?;
    if dir.len() != base.len() {
        return Err(MixError::DimensionMismatch { expected: base.len(), found: dir.len() });
    }
    Stratum::complex_line(base, dir)
}

fn parse_curve(text: &str) -> Result<CurveGerm, MixError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    CurveGerm::parse(&parts)
}

fn parse_radii(text: &Option<String>) -> Result<Option<Vec<f64>>, MixError> {
    text.as_ref()
        .map(|t| {
            t.split(',')
                .map(|r| r.trim().parse::<f64>().map_err(|_| MixError::InvalidArgument(format!("bad radius '{r}'"))))
                .collect()
        })
        .transpose()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cli: Cli) -> Result<Value, MixError> {
    match cli.command {
        Command::Analyze(a) => {
            let mut opts = AnalyzeOptions {
                seed: a.seed,
                strata: if a.stratum.is_empty() {
                    None
                } else {
                    Some(a.stratum.iter().map(|s| parse_stratum(s)).collect::<Result<_, _>>()?)
                },
                curves: a.curves.iter().map(|c| parse_curve(c)).collect::<Result<_, _>>()?,
                probe: a.probe.options()?,
                polar: PolarOptions { allow_zero_k: a.allow_zero_k, bound: a.k_bound },
                criterion: a.criterion.into(),
                assert_icis: a.assert_icis,
                skip_scan: a.no_scan,
                ..AnalyzeOptions::default()
            };
            opts.scan.samples = a.samples;
            if let Some(r) = parse_radii(&a.shells)? {
                opts.scan.radii = r;
            }
            let report = match &a.fixture {
                Some(name) => analyze_fixture(&fixture::resolve(name)?, &opts)?,
                None => {
                    let (vars, input) = a.input.resolve()?;
                    analyze(None, &vars, &input, &opts)?
                }
            };
            Ok(to_value(&report))
        }
        Command::Wirtinger(i) => {
            let (vars, input) = i.resolve()?;
            let f = input.polynomial()?;
            let fmt = |ps: &[MixedPolynomial]| ps.iter().map(|p| format_named(p, &vars)).collect::<Vec<_>>();
            let w = f.wirtinger();
            let fam = match &input {
                TubeInput::Pair { f: p, g: q } => SymbolicFamily::of_pair(p, q)?,
                TubeInput::Mixed(_) => SymbolicFamily::of(&f),
            };
            let (one, imag) = fam.generators();
            Ok(json!({
                "polynomial": format_named(&f, &vars),
                "dz": fmt(&w.d),
                "dzbar": fmt(&w.dbar),
                "normal_family": { "holo": fmt(&fam.holo), "anti": fmt(&fam.anti), "n_one": fmt(&one), "n_i": fmt(&imag) },
            }))
        }
        Command::Polar(p) => {
            let (vars, input) = p.input.resolve()?;
            let f = input.polynomial()?;
            let sol = solve_polar_with(&f, PolarOptions { allow_zero_k: p.allow_zero_k, bound: p.k_bound })?;
            Ok(json!({ "polynomial": format_named(&f, &vars), "polar": to_value(&sol) }))
        }
        Command::Disc(d) => {
            let (vars, f, g) = d.input.pair()?;
            let branches = d.branch.iter().map(|b| PuiseuxBranch::parse(b)).collect::<Result<_, _>>()?;
            let v = isolated_value_verdict_with(&f, &g, &VerdictOptions { criterion: d.criterion.into(), branches })?;
            Ok(json!({ "f": format_named(&f, &vars), "g": format_named(&g, &vars), "verdict": to_value(&v) }))
        }
        Command::ThomProbe(p) => {
            let (vars, input) = p.input.resolve()?;
            let f = input.polynomial()?;
            let opts = p.probe.options()?;
            let strata = if p.stratum.is_empty() {
                mixsing::milnor::verdict::axis_strata(&f)?
            } else {
                p.stratum.iter().map(|s| parse_stratum(s)).collect::<Result<_, _>>()?
            };
            let extra: Vec<CurveGerm> = p.curves.iter().map(|c| parse_curve(c)).collect::<Result<_, _>>()?;
            let mut results = Vec::new();
            for (idx, s) in strata.iter().enumerate() {
                let mut curves: Vec<CurveGerm> = extra.iter().filter(|c| c.origin() == s.base).cloned().collect();
                if !p.no_battery {
                    curves.extend(default_battery(&s.base, p.seed.wrapping_add(idx as u64)));
                }
                let base: Vec<String> = s.base.iter().map(ComplexRational::canonical_string).collect();
                results.push(json!({ "base": base, "result": to_value(&thom_test(&f, s, &curves, &opts)?) }));
            }
            Ok(json!({ "polynomial": format_named(&f, &vars), "seed": p.seed, "strata": results }))
        }
        Command::MilnorScan(s) => {
            let (vars, input) = s.input.resolve()?;
            let f = input.polynomial()?;
            let mut opts = ScanOptions {
                samples: s.samples,
                seed: s.seed,
                residual_tol: s.residual_tol,
                value_tol: s.value_tol,
                max_iters: s.max_iters,
                ..ScanOptions::default()
            };
            if let Some(r) = parse_radii(&s.shells)? {
                opts.radii = r;
            }
            Ok(json!({
                "polynomial": format_named(&f, &vars),
                "milnor": to_value(&milnor_scan(&f, &opts)?),
                "sing": to_value(&sing_scan(&f, &opts)?),
            }))
        }
        Command::Shear(s) => {
            let (vars, f, g) = s.input.pair()?;
            let lambda = constant(&s.lambda)?;
            let opts = VerdictOptions { criterion: s.criterion.into(), branches: Vec::new() };
            let r = shear_search(&f, &g, &lambda, s.max_k, &opts)?;
            Ok(json!({
                "k": r.k,
                "f": format_named(&r.f, &vars),
                "g": format_named(&r.g, &vars),
                "already_isolated": r.already_isolated,
                "verdict": to_value(&r.verdict),
                "attempts": to_value(&r.attempts),
            }))
        }
    }
}

fn error_value(e: &MixError) -> Value {
    let mut obj = json!({ "error": { "message": e.to_string(), "exit_code": e.exit_code() } });
    if let MixError::Parse(p) = e {
        obj["error"]["position"] = json!(p.position);
    }
    obj
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(cli) {
        Ok(v) => (v, ExitCode::SUCCESS),
        Err(e) => (error_value(&e), ExitCode::from(e.exit_code() as u8)),
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&value).expect("json"));
    code
}
