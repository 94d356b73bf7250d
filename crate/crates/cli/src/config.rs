//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! scheme = scheme2
//! ring.R = 183.4e-6      # trailing comments are allowed
//! sweep.var = ring.R
//! ```
//!
//! Every numeric value is SI. The accepted keys for each scheme, with their
//! units and defaults, are listed by [`Scheme::keys`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use magsup_core::materials::{GasEnvironment, MagnetSphere, SCRing};
use magsup_core::meissner::DipolePairTrap;
use magsup_core::ringfield::RingPairConfig;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Scheme1,
    Scheme2,
    Meissner,
    QFactor,
}

/// One accepted numeric key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeySpec {
    pub key: &'static str,
    pub unit: &'static str,
    pub default: Option<f64>,
    pub doc: &'static str,
}

const fn req(key: &'static str, unit: &'static str, doc: &'static str) -> KeySpec {
    KeySpec { key, unit, default: None, doc }
}

const fn opt(key: &'static str, unit: &'static str, default: f64, doc: &'static str) -> KeySpec {
    KeySpec { key, unit, default: Some(default), doc }
}

const GAS_P: KeySpec = opt("gas.P", "Pa", 1e-6, "gas pressure");
const GAS_T: KeySpec = opt("gas.T", "K", 0.3, "gas temperature");
const GAS_MG: KeySpec = opt("gas.Mg", "kg", 6.65e-27, "gas molecule mass (helium)");

const SCHEME1_KEYS: &[KeySpec] = &[
    req("magnet.radius", "m", "magnet sphere radius"),
    req("magnet.Br", "T", "magnet remanence"),
    req("magnet.rho", "kg/m^3", "magnet density"),
    req("rings.R", "m", "ring radius"),
    req("rings.I", "A", "ring current"),
    opt("rings.eta", "1", 0.5, "ring half-spacing over ring radius"),
    opt("rings.Bc", "T", 9.78e-3, "ring critical field"),
    req("trap.nu_z", "Hz", "trap frequency"),
    GAS_P,
    GAS_T,
    GAS_MG,
];

const SCHEME2_KEYS: &[KeySpec] = &[
    req("magnet.radius", "m", "magnet sphere radius"),
    req("magnet.Br", "T", "magnet remanence"),
    opt("magnet.rho", "kg/m^3", 7500.0, "magnet density (not used by the model)"),
    req("ring.R", "m", "ring loop radius"),
    req("ring.r", "m", "ring wire radius"),
    req("ring.rho", "kg/m^3", "ring density"),
    req("ring.I", "A", "ring current"),
    GAS_P,
    GAS_T,
    GAS_MG,
];

const MEISSNER_KEYS: &[KeySpec] = &[
    req("dipole.m", "A*m^2", "moment of each trap dipole"),
    req("trap.d", "m", "dipole separation"),
    opt("trap.delta", "m", 0.0, "sphere offset towards the upper dipole"),
    req("sphere.gamma", "m", "superconducting sphere radius"),
    req("sphere.rho", "kg/m^3", "superconducting sphere density"),
];

const QFACTOR_KEYS: &[KeySpec] = &[
    req("osc.rho", "kg/m^3", "oscillator density"),
    req("osc.r", "m", "sphere radius or torus wire radius"),
    req("osc.nu_z", "Hz", "oscillation frequency"),
    GAS_P,
    GAS_T,
    GAS_MG,
];

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Scheme1, Scheme::Scheme2, Scheme::Meissner, Scheme::QFactor];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Scheme1 => "scheme1",
            Scheme::Scheme2 => "scheme2",
            Scheme::Meissner => "meissner",
            Scheme::QFactor => "qfactor",
        }
    }

    /// Accepted numeric keys, in echo order.
    pub fn keys(self) -> &'static [KeySpec] {
        match self {
            Scheme::Scheme1 => SCHEME1_KEYS,
            Scheme::Scheme2 => SCHEME2_KEYS,
            Scheme::Meissner => MEISSNER_KEYS,
            Scheme::QFactor => QFACTOR_KEYS,
        }
    }

    pub fn key(self, key: &str) -> Option<&'static KeySpec> {
        self.keys().iter().find(|k| k.key == key)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scheme `{s}` (expected scheme1, scheme2, meissner or qfactor)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    }
}

/// A one-dimensional sweep of a numeric key.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub var: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(var: impl Into<String>, start: f64, stop: f64, count: usize, scale: Scale) -> Result<Self, String> {
        if count < 2 {
            return Err(format!("count must be >= 2, got {count}"));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(format!("need finite start < stop, got {start:e} .. {stop:e}"));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(format!("log scale needs start > 0, got {start:e}"));
        }
        Ok(SweepSpec { var: var.into(), start, stop, count, scale })
    }

    /// Sample points, endpoints included exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..=n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n {
                    return self.stop;
                }
                let t = i as f64 / n as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

/// An explicit list of values for one key; combined with a sweep it forms
/// the outer loop.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub var: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: Scheme,
    /// Every key of the scheme, defaults filled in.
    pub params: BTreeMap<String, f64>,
    pub sweep: Option<SweepSpec>,
    pub series: Option<SeriesSpec>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn param(&self, key: &str) -> f64 {
        self.params[key]
    }

    /// Parameter sets in evaluation order: series outer, sweep inner.
    pub fn points(&self) -> Vec<BTreeMap<String, f64>> {
        let sweep = self.sweep.as_ref().map(|s| (s.var.as_str(), s.points()));
        let series = self.series.as_ref().map(|s| (s.var.as_str(), s.values.clone()));
        let outer: Vec<Option<(&str, f64)>> = match &series {
            Some((var, vals)) => vals.iter().map(|v| Some((*var, *v))).collect(),
            None => vec![None],
        };
        let inner: Vec<Option<(&str, f64)>> = match &sweep {
            Some((var, vals)) => vals.iter().map(|v| Some((*var, *v))).collect(),
            None => vec![None],
        };
        let mut out = Vec::with_capacity(outer.len() * inner.len());
        for o in &outer {
            for i in &inner {
                let mut p = self.params.clone();
                for (k, v) in [o, i].into_iter().flatten() {
                    p.insert((*k).to_string(), *v);
                }
                out.push(p);
            }
        }
        out
    }

    /// Config text that parses back to this exact config.
    pub fn to_text(&self) -> String {
        let mut s = format!("scheme = {}\n", self.scheme);
        for k in self.scheme.keys() {
            s.push_str(&format!("{} = {:e}\n", k.key, self.params[k.key]));
        }
        if let Some(sw) = &self.sweep {
            s.push_str(&format!(
                "sweep.var = {}\nsweep.start = {:e}\nsweep.stop = {:e}\nsweep.count = {}\nsweep.scale = {}\n",
                sw.var,
                sw.start,
                sw.stop,
                sw.count,
                sw.scale.name()
            ));
        }
        if let Some(se) = &self.series {
            let vals: Vec<String> = se.values.iter().map(|v| format!("{v:e}")).collect();
            s.push_str(&format!("series.var = {}\nseries.values = {}\n", se.var, vals.join(", ")));
        }
        if let Some(p) = &self.output {
            s.push_str(&format!("output.path = {}\n", p.display()));
        }
        s.push_str(&format!("output.format = {}\n", self.format.name()));
        s
    }
}

fn parse_number(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value
        .parse()
        .map_err(|_| ConfigError::Parse { line, message: format!("`{key}` expects a number, got `{value}`") })?;
    if !v.is_finite() {
        return Err(ConfigError::Parse { line, message: format!("`{key}` must be finite, got `{value}`") });
    }
    Ok(v)
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_')
}

/// Parses config text. `default_scheme` applies when the text has no
/// `scheme` line; a `scheme` line that disagrees with it is an error.
pub fn parse_config_for(text: &str, default_scheme: Option<Scheme>) -> Result<RunConfig, ConfigError> {
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((k, v)) = content.split_once('=') else {
            return Err(ConfigError::Parse { line, message: format!("expected `key = value`, got `{content}`") });
        };
        let (k, v) = (k.trim(), v.trim());
        if !valid_key(k) {
            return Err(ConfigError::Parse { line, message: format!("malformed key `{k}`") });
        }
        if v.is_empty() {
            return Err(ConfigError::Parse { line, message: format!("`{k}` has no value") });
        }
        if let Some((first, ..)) = entries.iter().find(|(_, key, _)| key == k) {
            return Err(ConfigError::Parse {
                line,
                message: format!("duplicate key `{k}` (first set on line {first})"),
            });
        }
        entries.push((line, k.to_string(), v.to_string()));
    }

    let scheme = match entries.iter().find(|(_, k, _)| k == "scheme") {
        Some((line, _, v)) => {
            let sc: Scheme = v.parse().map_err(|message| ConfigError::Parse { line: *line, message })?;
            if let Some(d) = default_scheme {
                if d != sc {
                    return Err(ConfigError::Parse {
                        line: *line,
                        message: format!("config is for `{sc}` but `{d}` was requested"),
                    });
                }
            }
            sc
        }
        None => default_scheme.ok_or_else(|| ConfigError::MissingKey("scheme".into()))?,
    };

    let mut params = BTreeMap::new();
    let mut sweep_raw: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut series_raw: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut output = None;
    let mut format = Format::Csv;
    for (line, k, v) in &entries {
        let line = *line;
        match k.as_str() {
            "scheme" => {}
            "output.path" => output = Some(PathBuf::from(v)),
            "output.format" => format = v.parse().map_err(|message| ConfigError::Parse { line, message })?,
            "sweep.var" | "sweep.start" | "sweep.stop" | "sweep.count" | "sweep.scale" => {
                sweep_raw.insert(&k[6..], (line, v.as_str()));
            }
            "series.var" | "series.values" => {
                series_raw.insert(&k[7..], (line, v.as_str()));
            }
            _ => {
                if scheme.key(k).is_none() {
                    return Err(ConfigError::UnknownKey { line, key: k.clone() });
                }
                params.insert(k.clone(), parse_number(line, k, v)?);
            }
        }
    }
    for spec in scheme.keys() {
        if !params.contains_key(spec.key) {
            match spec.default {
                Some(d) => {
                    params.insert(spec.key.to_string(), d);
                }
                None => return Err(ConfigError::MissingKey(spec.key.to_string())),
            }
        }
    }

    let sweep = parse_sweep(scheme, &sweep_raw)?;
    let series = parse_series(scheme, &series_raw)?;
    if let (Some(sw), Some(se)) = (&sweep, &series) {
        if sw.var == se.var {
            return Err(ConfigError::Invalid {
                key: "series.var".into(),
                message: format!("`{}` is already the sweep variable", se.var),
            });
        }
    }
    let cfg = RunConfig { scheme, params, sweep, series, output, format };
    validate(&cfg)?;
    Ok(cfg)
}

/// Parses config text that names its scheme.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_for(text, None)
}

fn sweep_var(scheme: Scheme, group: &str, raw: &BTreeMap<&str, (usize, &str)>) -> Result<String, ConfigError> {
    let (line, var) = raw.get("var").copied().ok_or_else(|| ConfigError::MissingKey(format!("{group}.var")))?;
    if scheme.key(var).is_none() {
        return Err(ConfigError::Parse { line, message: format!("`{var}` is not a {scheme} parameter") });
    }
    Ok(var.to_string())
}

fn parse_sweep(scheme: Scheme, raw: &BTreeMap<&str, (usize, &str)>) -> Result<Option<SweepSpec>, ConfigError> {
    if raw.is_empty() {
        return Ok(None);
    }
    let var = sweep_var(scheme, "sweep", raw)?;
    let get = |name: &str| raw.get(name).copied().ok_or_else(|| ConfigError::MissingKey(format!("sweep.{name}")));
    let (l, v) = get("start")?;
    let start = parse_number(l, "sweep.start", v)?;
    let (l, v) = get("stop")?;
    let stop = parse_number(l, "sweep.stop", v)?;
    let (l, v) = get("count")?;
    let count: usize = v
        .parse()
        .map_err(|_| ConfigError::Parse { line: l, message: format!("`sweep.count` expects an integer, got `{v}`") })?;
    let scale = match raw.get("scale") {
        None => Scale::Linear,
        Some((_, "linear")) => Scale::Linear,
        Some((_, "log")) => Scale::Log,
        Some((line, other)) => {
            return Err(ConfigError::Parse {
                line: *line,
                message: format!("`sweep.scale` must be linear or log, got `{other}`"),
            })
        }
    };
    SweepSpec::new(var, start, stop, count, scale)
        .map(Some)
        .map_err(|message| ConfigError::Invalid { key: "sweep".into(), message })
}

fn parse_series(scheme: Scheme, raw: &BTreeMap<&str, (usize, &str)>) -> Result<Option<SeriesSpec>, ConfigError> {
    if raw.is_empty() {
        return Ok(None);
    }
    let var = sweep_var(scheme, "series", raw)?;
    let (line, list) = raw.get("values").copied().ok_or_else(|| ConfigError::MissingKey("series.values".into()))?;
    let values =
        list.split(',').map(|v| parse_number(line, "series.values", v.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(SeriesSpec { var, values }))
}

fn invalid(key: &str, e: impl fmt::Display) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: e.to_string() }
}

/// Builds the core model objects at the base point so that bad inputs are
/// rejected before any sweep runs.
fn validate(cfg: &RunConfig) -> Result<(), ConfigError> {
    let p = |k: &str| cfg.params[k];
    let gas = || GasEnvironment::new(p("gas.P"), p("gas.T"), p("gas.Mg")).map_err(|e| invalid("gas", e));
    let positive = |k: &str| {
        let v = p(k);
        if v > 0.0 {
            Ok(())
        } else {
            Err(invalid(k, format!("must be > 0, got {v:e}")))
        }
    };
    match cfg.scheme {
        Scheme::Scheme1 => {
            MagnetSphere::new(p("magnet.radius"), p("magnet.Br"), p("magnet.rho")).map_err(|e| invalid("magnet", e))?;
            RingPairConfig::new(p("rings.R"), p("rings.I"), p("rings.eta")).map_err(|e| invalid("rings", e))?;
            positive("rings.Bc")?;
            positive("trap.nu_z")?;
            gas()?;
        }
        Scheme::Scheme2 => {
            MagnetSphere::new(p("magnet.radius"), p("magnet.Br"), p("magnet.rho")).map_err(|e| invalid("magnet", e))?;
            SCRing::new(p("ring.R"), p("ring.r"), p("ring.rho"), p("ring.I")).map_err(|e| invalid("ring", e))?;
            gas()?;
        }
        Scheme::Meissner => {
            positive("sphere.rho")?;
            DipolePairTrap::centered(p("dipole.m"), p("trap.d"), p("trap.delta"), p("sphere.gamma"), 0.0)
                .map_err(|e| invalid("trap", e))?;
        }
        Scheme::QFactor => {
            positive("osc.rho")?;
            positive("osc.r")?;
            positive("osc.nu_z")?;
            gas()?;
        }
    }
    Ok(())
}
