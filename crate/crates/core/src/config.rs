//! Run configuration: a flat TOML document with validated defaults.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;
use toml::{Table, Value};

use crate::algebra::{make_params, AlgebraError, AlgebraParams, Boundary, Model};
use crate::tensor::{c, C64};

/// One of the check families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Algebra,
    Ybe,
    Re,
    Conditions,
    Transfer,
    Symmetry,
    Exchange,
    Duality,
    Spectrum,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Algebra,
        Suite::Ybe,
        Suite::Re,
        Suite::Conditions,
        Suite::Transfer,
        Suite::Symmetry,
        Suite::Exchange,
        Suite::Duality,
        Suite::Spectrum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Ybe => "ybe",
            Suite::Re => "re",
            Suite::Conditions => "conditions",
            Suite::Transfer => "transfer",
            Suite::Symmetry => "symmetry",
            Suite::Exchange => "exchange",
            Suite::Duality => "duality",
            Suite::Spectrum => "spectrum",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Algebra => "Hecke, blob and quotient relations; quantum-group towers and their centralizer property",
            Suite::Ybe => "Yang-Baxter equation for R(λ)",
            Suite::Re => "reflection equation for K(λ)",
            Suite::Conditions => "unitarity, crossing, twist compatibility, braid limits",
            Suite::Transfer => "commuting transfer matrices, local Hamiltonian, reflection-algebra intertwiner",
            Suite::Symmetry => "preserved and broken quantum-group charges of t(λ)",
            Suite::Exchange => "exchange relations between charges and double-row blocks",
            Suite::Duality => "asymptotic double-row blocks as central elements",
            Suite::Spectrum => "Hamiltonian spectrum diagnostics",
        }
    }

    /// Default selection: everything except the spectrum diagnostics.
    pub fn defaults() -> Vec<Suite> {
        Suite::ALL.into_iter().filter(|&s| s != Suite::Spectrum).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("missing required key {0:?}")]
    Missing(&'static str),
    #[error("{key}: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid { key: key.to_string(), message: message.into() }
    }

    /// The key the error refers to, if any.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Syntax(_) => None,
            ConfigError::UnknownKey(k) => Some(k),
            ConfigError::Missing(k) => Some(k),
            ConfigError::Invalid { key, .. } => Some(key),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: Model,
    pub boundary: Boundary,
    pub n: usize,
    pub mu: f64,
    pub q_rep: C64,
    pub zeta: C64,
    pub seed: u64,
    pub tolerance: f64,
    pub lambda_samples: usize,
    pub suites: Vec<Suite>,
}

const KEYS: [&str; 10] = ["model", "boundary", "N", "mu", "Q", "zeta", "seed", "tolerance", "lambda_samples", "suites"];

/// `"re,im"`, or a bare number for a real value.
pub fn parse_complex(s: &str) -> Option<C64> {
    let mut it = s.split(',').map(str::trim);
    let re = it.next()?.parse::<f64>().ok()?;
    let im = match it.next() {
        Some(t) => t.parse::<f64>().ok()?,
        None => 0.0,
    };
    if it.next().is_some() {
        return None;
    }
    Some(c(re, im))
}

fn complex(key: &str, v: &Value) -> Result<C64, ConfigError> {
    match v {
        Value::String(s) => parse_complex(s).ok_or_else(|| ConfigError::invalid(key, format!("expected \"re,im\", got {s:?}"))),
        Value::Float(x) => Ok(c(*x, 0.0)),
        Value::Integer(i) => Ok(c(*i as f64, 0.0)),
        _ => Err(ConfigError::invalid(key, "expected a complex number as \"re,im\"")),
    }
}

fn real(key: &str, v: &Value) -> Result<f64, ConfigError> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(ConfigError::invalid(key, "expected a number")),
    }
}

fn integer(key: &str, v: &Value) -> Result<i64, ConfigError> {
    v.as_integer().ok_or_else(|| ConfigError::invalid(key, "expected an integer"))
}

fn string<'a>(key: &str, v: &'a Value) -> Result<&'a str, ConfigError> {
    v.as_str().ok_or_else(|| ConfigError::invalid(key, "expected a string"))
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Syntax(e.message().to_string()))?;
    if let Some(k) = table.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(ConfigError::UnknownKey(k.clone()));
    }
    let get = |k: &'static str| table.get(k).ok_or(ConfigError::Missing(k));

    let model: Model = string("model", get("model")?)?
        .parse()
        .map_err(|_| ConfigError::invalid("model", "expected xxz or twin"))?;
    let boundary: Boundary = string("boundary", get("boundary")?)?
        .parse()
        .map_err(|_| ConfigError::invalid("boundary", "expected trivial, xxz-m, i, ii, plus or iii"))?;
    if !boundary.compatible_with(model) {
        return Err(ConfigError::invalid("boundary", "boundary incompatible with model"));
    }

    let n = integer("N", get("N")?)?;
    if n < 2 {
        return Err(ConfigError::invalid("N", format!("must be at least 2, got {n}")));
    }
    let mu = real("mu", get("mu")?)?;
    let q_rep = complex("Q", get("Q")?)?;
    let zeta = table.get("zeta").map(|v| complex("zeta", v)).transpose()?.unwrap_or(c(0.3, 0.0));

    let seed = match table.get("seed") {
        Some(v) => u64::try_from(integer("seed", v)?).map_err(|_| ConfigError::invalid("seed", "must be non-negative"))?,
        None => 42,
    };
    let tolerance = table.get("tolerance").map(|v| real("tolerance", v)).transpose()?.unwrap_or(1e-9);
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(ConfigError::invalid("tolerance", format!("must lie in (0, 1), got {tolerance}")));
    }
    let lambda_samples = match table.get("lambda_samples") {
        Some(v) => {
            let k = integer("lambda_samples", v)?;
            if k < 1 {
                return Err(ConfigError::invalid("lambda_samples", format!("must be at least 1, got {k}")));
            }
            k as usize
        }
        None => 10,
    };
    let suites = match table.get("suites") {
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for it in items {
                let s = string("suites", it)?.parse::<Suite>().map_err(|m| ConfigError::invalid("suites", m))?;
                if !out.contains(&s) {
                    out.push(s);
                }
            }
            out
        }
        Some(_) => return Err(ConfigError::invalid("suites", "expected an array of suite names")),
        None => Suite::defaults(),
    };

    let cfg = RunConfig { model, boundary, n: n as usize, mu, q_rep, zeta, seed, tolerance, lambda_samples, suites };
    // Degenerate μ or Q surface here with the key that caused them.
    cfg.params().map_err(|e| match e {
        AlgebraError::DegenerateMu(_) => ConfigError::invalid("mu", e.to_string()),
        AlgebraError::DegenerateQ(_) => ConfigError::invalid("Q", e.to_string()),
        AlgebraError::NonFinite => ConfigError::invalid("mu", e.to_string()),
        other => ConfigError::invalid("model", other.to_string()),
    })?;
    Ok(cfg)
}

impl RunConfig {
    pub fn params(&self) -> Result<AlgebraParams, AlgebraError> {
        make_params(self.mu, self.q_rep, self.zeta, self.model, self.boundary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "model = \"twin\"\nboundary = \"i\"\nN = 2\nmu = 0.7\nQ = \"2,0\"\n";

    #[test]
    fn defaults_are_filled() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.tolerance, 1e-9);
        assert_eq!(c.lambda_samples, 10);
        assert_eq!(c.seed, 42);
        assert_eq!(c.zeta, C64::new(0.3, 0.0));
        assert_eq!(c.suites.len(), 8);
        assert!(!c.suites.contains(&Suite::Spectrum));
        assert_eq!(c.q_rep, C64::new(2.0, 0.0));
    }

    #[test]
    fn incompatible_boundary_names_key() {
        let e = parse_config("model = \"xxz\"\nboundary = \"iii\"\nN = 2\nmu = 0.7\nQ = \"2,0\"\n").unwrap_err();
        assert_eq!(e.key(), Some("boundary"));
        assert!(e.to_string().contains("boundary incompatible with model"));
    }

    #[test]
    fn rejections_name_the_key() {
        let cases = [
            ("N = 1", "N"),
            ("tolerance = 1.5", "tolerance"),
            ("lambda_samples = 0", "lambda_samples"),
            ("suites = [\"nope\"]", "suites"),
            ("bogus = 3", "bogus"),
            ("zeta = \"a,b\"", "zeta"),
        ];
        for (extra, key) in cases {
            let text = MINIMAL.replace("N = 2\n", "") + extra + "\n" + if key == "N" { "" } else { "N = 2\n" };
            let e = parse_config(&text).unwrap_err();
            assert_eq!(e.key(), Some(key), "{extra}: {e}");
        }
        let e = parse_config(&MINIMAL.replace("mu = 0.7", "mu = 0.0")).unwrap_err();
        assert_eq!(e.key(), Some("mu"));
        let e = parse_config(&MINIMAL.replace("Q = \"2,0\"", "Q = \"0,1\"")).unwrap_err();
        assert_eq!(e.key(), Some("Q"));
        assert_eq!(parse_config("model = \"twin\"").unwrap_err(), ConfigError::Missing("boundary"));
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5, -2"), Some(C64::new(1.5, -2.0)));
        assert_eq!(parse_complex("3"), Some(C64::new(3.0, 0.0)));
        assert_eq!(parse_complex("1,2,3"), None);
        let c = parse_config(&(MINIMAL.to_string() + "zeta = 0.5\nsuites = []\n")).unwrap();
        assert_eq!(c.zeta, C64::new(0.5, 0.0));
        assert!(c.suites.is_empty());
    }
}
