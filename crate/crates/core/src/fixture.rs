//! TOML fixture files: an input germ, optional strata and curves, and the
//! verdict it is expected to produce.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::MixError;
use crate::milnor::TubeInput;
use crate::mixed::MixedPolynomial;
use crate::parser::{parse_mixed, parse_real_parameter_poly, SourceExpr};
use crate::rational::ComplexRational;
use crate::thomprobe::{CurveGerm, Stratum};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub variables: Vec<String>,
    /// Mixed expression for `F`.
    pub expression: Option<String>,
    /// Holomorphic pair `(f, g)` with `F = f·ḡ`.
    pub pair: Option<PairSource>,
    #[serde(default)]
    pub assert_icis: bool,
    #[serde(default)]
    pub strata: Vec<StratumSource>,
    #[serde(default)]
    pub curves: Vec<Vec<String>>,
    pub expected: Option<Expected>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSource {
    pub f: String,
    pub g: String,
}

/// Complex line through `base` spanned by `direction` (constants in `i`).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSource {
    pub base: Vec<String>,
    pub direction: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    /// `yes`, `no` or `unknown`.
    pub tube: Option<String>,
    pub tube_route: Option<String>,
    /// `regular`, `fail`, `no-failure-found` or `unknown`.
    pub thom: Option<String>,
    pub thom_route: Option<String>,
    /// `isolated`, `not-isolated` or `unknown`.
    pub isolation: Option<String>,
    /// `[p..., k]`.
    pub polar: Option<Vec<i64>>,
}

fn constant(text: &str) -> Result<ComplexRational, MixError> {
    let p = parse_real_parameter_poly(text)?;
    if p.len() > 1 {
        return Err(MixError::Fixture(format!("expected a constant, found '{text}'")));
    }
    Ok(p.into_iter().next().unwrap_or_else(ComplexRational::zero))
}

impl Fixture {
    pub fn from_toml(text: &str) -> Result<Self, MixError> {
        let fx: Fixture = toml::from_str(text).map_err(|e| MixError::Fixture(e.to_string()))?;
        if fx.expression.is_some() == fx.pair.is_some() {
            return Err(MixError::Fixture(format!("{}: give exactly one of expression or pair", fx.name)));
        }
        Ok(fx)
    }

    pub fn load(path: &Path) -> Result<Self, MixError> {
        let text = std::fs::read_to_string(path).map_err(|e| MixError::Fixture(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    fn vars(&self) -> Vec<&str> {
        self.variables.iter().map(String::as_str).collect()
    }

    fn parse(&self, text: &str) -> Result<MixedPolynomial, MixError> {
        Ok(parse_mixed(&SourceExpr::new(text, &self.vars()))?)
    }

    pub fn input(&self) -> Result<TubeInput, MixError> {
        match (&self.expression, &self.pair) {
            (Some(e), _) => Ok(TubeInput::Mixed(self.parse(e)?)),
            (None, Some(p)) => Ok(TubeInput::Pair { f: self.parse(&p.f)?, g: self.parse(&p.g)? }),
            (None, None) => Err(MixError::Fixture(format!("{}: no input", self.name))),
        }
    }

    pub fn strata(&self) -> Result<Vec<Stratum>, MixError> {
        self.strata
            .iter()
            .map(|s| {
                let base = s.base.iter().map(|t| constant(t)).collect::<Result<Vec<_>, _>>()?;
                let dir = s
                    .direction
                    .iter()
                    .map(|t| constant(t).map(|c| c.to_complex64()))
                    .collect::<Result<Vec<Complex64>, _>>()?;
                if dir.len() != base.len() {
                    return Err(MixError::DimensionMismatch { expected: base.len(), found: dir.len() });
                }
                Stratum::complex_line(base, dir)
            })
            .collect()
    }

    pub fn curves(&self) -> Result<Vec<CurveGerm>, MixError> {
        self.curves.iter().map(|c| CurveGerm::parse(c)).collect()
    }
}

/// Directory holding the bundled fixtures.
pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Resolves a bundled fixture by name, or treats the argument as a path.
pub fn resolve(name_or_path: &str) -> Result<Fixture, MixError> {
    let path = Path::new(name_or_path);
    if path.extension().is_some_and(|e| e == "toml") || path.components().count() > 1 {
        return Fixture::load(path);
    }
    let bundled = fixture_dir().join(format!("{name_or_path}.toml"));
    if bundled.exists() {
        Fixture::load(&bundled)
    } else {
        Err(MixError::Fixture(format!("unknown fixture '{name_or_path}'")))
    }
}

/// All bundled fixtures, sorted by file name.
pub fn bundled() -> Result<Vec<Fixture>, MixError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .map_err(|e| MixError::Fixture(e.to_string()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    paths.sort();
    paths.iter().map(|p| Fixture::load(p)).collect()
}
