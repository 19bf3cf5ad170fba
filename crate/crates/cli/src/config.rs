//! Run configuration: command-line flags over a key-value file over the
//! family preset.

use std::collections::BTreeMap;
use std::path::PathBuf;

use frenet_core::{preset, Domain, Family, Preset, PRESET_NAMES};

use crate::CliError;

pub const MIN_GRID: usize = 16;
pub const DEFAULT_GRID: usize = 1001;
pub const DEFAULT_FAMILY: &str = "kula";

/// Keys accepted in a configuration file.
pub const CONFIG_KEYS: [&str; 15] = [
    "family",
    "mu",
    "c_m",
    "c_inv",
    "c_derived",
    "radius",
    "a",
    "b",
    "seed",
    "lo",
    "hi",
    "grid_n",
    "tol",
    "out",
    "format",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Unresolved settings from one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub family: Option<String>,
    pub mu: Option<f64>,
    pub c_m: Option<f64>,
    pub c_inv: Option<f64>,
    pub c_derived: Option<f64>,
    pub radius: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub seed: Option<u64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub grid_n: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("line {line}: invalid value `{value}` for `{key}`")))
}

impl Settings {
    /// Parses `key = value` lines. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {line}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(prev) = seen.insert(key.to_string(), line) {
                return Err(CliError::Config(format!(
                    "line {line}: `{key}` already set on line {prev}"
                )));
            }
            match key {
                "family" => s.family = Some(value.to_string()),
                "mu" => s.mu = Some(parse(key, value, line)?),
                "c_m" => s.c_m = Some(parse(key, value, line)?),
                "c_inv" => s.c_inv = Some(parse(key, value, line)?),
                "c_derived" => s.c_derived = Some(parse(key, value, line)?),
                "radius" => s.radius = Some(parse(key, value, line)?),
                "a" => s.a = Some(parse(key, value, line)?),
                "b" => s.b = Some(parse(key, value, line)?),
                "seed" => s.seed = Some(parse(key, value, line)?),
                "lo" => s.lo = Some(parse(key, value, line)?),
                "hi" => s.hi = Some(parse(key, value, line)?),
                "grid_n" => s.grid_n = Some(parse(key, value, line)?),
                "tol" => s.tol = Some(parse(key, value, line)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "format" => {
                    s.format = Some(match value {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        _ => return Err(CliError::Config(format!("line {line}: format must be csv or json"))),
                    })
                }
                other => {
                    return Err(CliError::Config(format!(
                        "line {line}: unknown key `{other}` (known: {})",
                        CONFIG_KEYS.join(", ")
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Fields set in `self` win over `lower`.
    pub fn over(self, lower: Settings) -> Settings {
        Settings {
            family: self.family.or(lower.family),
            mu: self.mu.or(lower.mu),
            c_m: self.c_m.or(lower.c_m),
            c_inv: self.c_inv.or(lower.c_inv),
            c_derived: self.c_derived.or(lower.c_derived),
            radius: self.radius.or(lower.radius),
            a: self.a.or(lower.a),
            b: self.b.or(lower.b),
            seed: self.seed.or(lower.seed),
            lo: self.lo.or(lower.lo),
            hi: self.hi.or(lower.hi),
            grid_n: self.grid_n.or(lower.grid_n),
            tol: self.tol.or(lower.tol),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
        }
    }

    fn family_params(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("mu", self.mu.is_some()),
            ("c_m", self.c_m.is_some()),
            ("c_derived", self.c_derived.is_some()),
            ("radius", self.radius.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("seed", self.seed.is_some()),
        ]
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Preset,
    pub grid_n: usize,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn applicable(family: &Family) -> &'static [&'static str] {
    match family {
        Family::Circle { .. } => &["radius"],
        Family::Helix { .. } => &["a", "b"],
        Family::Monterde { .. } => &["c_m"],
        Family::Kula { .. } => &["mu"],
        Family::DerivedHelix { .. } => &["mu", "c_derived"],
        Family::Fourier { .. } => &["seed"],
    }
}

fn finite(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("`{key}` must be finite")))
    }
}

impl RunConfig {
    pub fn resolve(s: Settings) -> Result<Self, CliError> {
        let name = s.family.clone().unwrap_or_else(|| DEFAULT_FAMILY.to_string());
        let base = preset(&name)
            .ok_or_else(|| CliError::Config(format!("unknown family `{name}` (known: {})", PRESET_NAMES.join(", "))))?;
        let allowed = applicable(&base.family);
        for (key, set) in s.family_params() {
            if set && !allowed.contains(&key) {
                return Err(CliError::Config(format!("`{key}` does not apply to family `{name}`")));
            }
        }
        let family = match base.family {
            Family::Circle { radius } => Family::Circle {
                radius: finite("radius", s.radius.unwrap_or(radius))?,
            },
            Family::Helix { a, b } => Family::Helix {
                a: finite("a", s.a.unwrap_or(a))?,
                b: finite("b", s.b.unwrap_or(b))?,
            },
            Family::Monterde { c_m } => Family::Monterde {
                c_m: finite("c_m", s.c_m.unwrap_or(c_m))?,
            },
            Family::Kula { mu } => Family::Kula {
                mu: finite("mu", s.mu.unwrap_or(mu))?,
            },
            Family::DerivedHelix { mu, c_inv } => Family::DerivedHelix {
                mu: finite("mu", s.mu.unwrap_or(mu))?,
                c_inv: finite("c_derived", s.c_derived.unwrap_or(c_inv))?,
            },
            Family::Fourier { seed } => Family::Fourier {
                seed: s.seed.unwrap_or(seed),
            },
        };

        let bounds = base.domain;
        let lo = finite("lo", s.lo.unwrap_or(bounds.min))?;
        let hi = finite("hi", s.hi.unwrap_or(bounds.max))?;
        if !(lo < hi) {
            return Err(CliError::Config(format!("subdomain needs lo < hi (got [{lo}, {hi}])")));
        }
        if lo < bounds.min || hi > bounds.max {
            return Err(CliError::Config(format!(
                "subdomain [{lo}, {hi}] leaves the `{name}` preset bounds [{}, {}]",
                bounds.min, bounds.max
            )));
        }
        let domain = Domain::new(lo, hi).map_err(|e| CliError::Config(e.to_string()))?;

        let grid_n = s.grid_n.unwrap_or(DEFAULT_GRID);
        if grid_n < MIN_GRID {
            return Err(CliError::Config(format!(
                "grid_n >= {MIN_GRID} required (got {grid_n})"
            )));
        }
        if let Some(t) = s.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("tol must be positive (got {t})")));
            }
        }
        let c_inv = finite("c_inv", s.c_inv.unwrap_or(base.c_inv))?;
        let anchor = base.s_anchor.clamp(lo, hi);
        let preset = Preset {
            s_anchor: anchor,
            ..base.with_family(family).with_domain(domain).with_c_inv(c_inv)
        };
        Ok(RunConfig {
            preset,
            grid_n,
            tol: s.tol,
            out: s.out,
            format: s.format,
        })
    }

    /// Family parameters in a fixed order, for header comments.
    pub fn describe(&self) -> String {
        let p = &self.preset;
        let params = match p.family {
            Family::Circle { radius } => format!("radius={radius:?}"),
            Family::Helix { a, b } => format!("a={a:?} b={b:?}"),
            Family::Monterde { c_m } => format!("c_m={c_m:?}"),
            Family::Kula { mu } => format!("mu={mu:?}"),
            Family::DerivedHelix { mu, c_inv } => format!("mu={mu:?} c_derived={c_inv:?}"),
            Family::Fourier { seed } => format!("seed={seed}"),
        };
        format!(
            "family={} {params} c_inv={:?} domain=[{:?}, {:?}] anchor={:?} grid_n={}",
            p.family.name(),
            p.c_inv,
            p.domain.min,
            p.domain.max,
            p.s_anchor,
            self.grid_n
        )
    }
}
