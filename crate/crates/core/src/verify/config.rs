use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::is_prime;

/// The verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cocycle,
    Algebra,
    Generators,
    Morita,
    Mrs,
    Vanishing,
    Intertwine,
    Poisson,
    Phi,
    Bimodule,
    Directed,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Cocycle,
        Suite::Algebra,
        Suite::Generators,
        Suite::Morita,
        Suite::Mrs,
        Suite::Vanishing,
        Suite::Intertwine,
        Suite::Poisson,
        Suite::Phi,
        Suite::Bimodule,
        Suite::Directed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Algebra => "algebra",
            Suite::Generators => "generators",
            Suite::Morita => "morita",
            Suite::Mrs => "mrs",
            Suite::Vanishing => "vanishing",
            Suite::Intertwine => "intertwine",
            Suite::Poisson => "poisson",
            Suite::Phi => "phi",
            Suite::Bimodule => "bimodule",
            Suite::Directed => "directed",
        }
    }

    /// Levels used when none are given.
    pub fn default_levels(self) -> (u32, u32) {
        match self {
            Suite::Morita => (0, 3),
            Suite::Generators | Suite::Mrs => (0, 2),
            Suite::Intertwine | Suite::Directed => (0, 1),
            Suite::Vanishing | Suite::Poisson | Suite::Phi | Suite::Bimodule => (1, 1),
            Suite::Cocycle | Suite::Algebra => (0, 0),
        }
    }

    /// Random draws used when `samples` is not set.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Cocycle => 1000,
            Suite::Algebra => 200,
            Suite::Poisson | Suite::Phi => 10,
            Suite::Bimodule => 20,
            _ => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Parameters of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub p: u64,
    pub theta: f64,
    /// Inclusive level range; `None` uses the suite default.
    pub levels: Option<(u32, u32)>,
    /// Real truncation radius `R` for inner-product tables.
    pub radius: f64,
    pub denom_bound: u32,
    pub fourier_range: u32,
    pub quad_tol: f64,
    pub tol: f64,
    pub seed: u64,
    pub samples: Option<usize>,
    pub suite: Suite,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            theta: 0.5477,
            levels: None,
            radius: 6.0,
            denom_bound: 4,
            fourier_range: 64,
            quad_tol: 1e-10,
            tol: 1e-8,
            seed: 0,
            samples: None,
            suite: Suite::Cocycle,
            out: None,
            format: Format::Json,
        }
    }
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single level `a`.
pub fn parse_levels(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Config(format!("bad level range {s:?}"));
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("bad value {v:?} for {key}")))
}

impl RunConfig {
    /// Sets one option by its flag name, with or without leading dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches('-').replace('_', "-");
        match key.as_str() {
            "p" => self.p = parse_num(&key, value)?,
            "theta" => self.theta = parse_num(&key, value)?,
            "levels" => self.levels = Some(parse_levels(value)?),
            "j" => {
                let j = parse_num(&key, value)?;
                self.levels = Some((j, j));
            }
            "radius" => self.radius = parse_num(&key, value)?,
            "denom-bound" => self.denom_bound = parse_num(&key, value)?,
            "fourier-range" => self.fourier_range = parse_num(&key, value)?,
            "quad-tol" => self.quad_tol = parse_num(&key, value)?,
            "tol" => self.tol = parse_num(&key, value)?,
            "seed" => self.seed = parse_num(&key, value)?,
            "samples" => self.samples = Some(parse_num(&key, value)?),
            "suite" => self.suite = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.parse()?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key=value` file; blank lines and `#` comments are skipped.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) || self.p > u64::from(u32::MAX) {
            return Err(Error::InvalidPrime(self.p));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::ThetaOutOfRange(self.theta));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Config(format!("radius must be positive, got {}", self.radius)));
        }
        if self.fourier_range < 1 {
            return Err(Error::Config("fourier range must be at least 1".into()));
        }
        if !(self.tol > 0.0) || !(self.quad_tol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn prime(&self) -> u32 {
        self.p as u32
    }

    pub fn level_range(&self) -> (u32, u32) {
        self.levels.unwrap_or_else(|| self.suite.default_levels())
    }

    pub fn sample_count(&self) -> usize {
        self.samples.unwrap_or_else(|| self.suite.default_samples())
    }
}
