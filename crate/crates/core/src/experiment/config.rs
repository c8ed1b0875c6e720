//! Experiment configuration: flat `key = value` files plus overrides.

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::MIN_CELLS;
use crate::model::Variant;
use crate::topography::TopographyDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    Numbered(u8),
    Custom,
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("custom") {
            return Ok(Self::Custom);
        }
        match s.parse::<u8>() {
            Ok(n @ 1..=8) => Ok(Self::Numbered(n)),
            _ => Err(Error::config(format!("example must be 1..8 or `custom`, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mesh {
    One(usize),
    Two(usize, usize),
}

impl FromStr for Mesh {
    type Err = Error;

    /// `N` or `NxM`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::config(format!("mesh must be `N` or `NxM`, got `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match s.trim().split_once(['x', 'X']) {
            Some((a, b)) => Ok(Self::Two(num(a)?, num(b)?)),
            None => Ok(Self::One(num(s)?)),
        }
    }
}

/// Everything that defines a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub example: ExampleId,
    pub mesh: Option<Mesh>,
    pub t_end: Option<f64>,
    pub snapshots: Option<Vec<f64>>,
    pub variant: Variant,
    pub out_dir: Option<PathBuf>,
    pub g: Option<f64>,
    pub f_c: Option<f64>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub cfl: Option<f64>,
    /// Adds the small depth perturbation of Examples 1, 2 and 5.
    pub perturbed: bool,
    /// Square domain `[lo, hi]` (per axis) overriding the preset.
    pub domain: Option<(f64, f64)>,
    /// Custom runs: constant free surface level and `(u, v, a, b)` in slots 1..5.
    pub custom_state: [f64; 5],
    pub topography: Option<TopographyDescriptor>,
    /// 1-D runs: accumulate the time-averaged balance fields.
    pub balance: bool,
}

fn flag(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        v => Err(Error::config(format!("`{key}` expects a boolean, got `{v}`"))),
    }
}

impl ExperimentConfig {
    pub fn example(n: u8) -> Self {
        Self {
            example: ExampleId::Numbered(n),
            mesh: None,
            t_end: None,
            snapshots: None,
            variant: Variant::WellBalanced,
            out_dir: None,
            g: None,
            f_c: None,
            beta: None,
            theta: None,
            cfl: None,
            perturbed: false,
            domain: None,
            custom_state: [1.0, 0.0, 0.0, 0.0, 0.0],
            topography: None,
            balance: false,
        }
    }

    pub fn with_mesh(mut self, mesh: Mesh) -> Self {
        self.mesh = Some(mesh);
        self
    }

    pub fn with_t_end(mut self, t: f64) -> Self {
        self.t_end = Some(t);
        self
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| Error::config(format!("`{key}` expects a number, got `{v}`")));
        match key.trim() {
            "example" => self.example = value.parse()?,
            "mesh" => self.mesh = Some(value.parse()?),
            "tfinal" | "t_end" => self.t_end = Some(num(value)?),
            "snapshots" => {
                let list = value.split(',').filter(|t| !t.trim().is_empty()).map(num).collect::<Result<Vec<_>>>()?;
                self.snapshots = Some(list);
            }
            "scheme" => self.variant = value.parse()?,
            "out" => self.out_dir = Some(PathBuf::from(value.trim())),
            "g" => self.g = Some(num(value)?),
            "f_c" | "f" => self.f_c = Some(num(value)?),
            "beta" => self.beta = Some(num(value)?),
            "theta" => self.theta = Some(num(value)?),
            "cfl" => self.cfl = Some(num(value)?),
            "perturbed" => self.perturbed = flag(key, value)?,
            "balance" => self.balance = flag(key, value)?,
            "domain" => {
                let (a, b) = value.split_once(',').ok_or_else(|| Error::config("`domain` expects `lo,hi`"))?;
                self.domain = Some((num(a)?, num(b)?));
            }
            "level" => self.custom_state[0] = num(value)?,
            "u" => self.custom_state[1] = num(value)?,
            "v" => self.custom_state[2] = num(value)?,
            "a" => self.custom_state[3] = num(value)?,
            "b" => self.custom_state[4] = num(value)?,
            "topography" => self.topography = Some(TopographyDescriptor::parse(value)?),
            other => return Err(Error::config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Parses a config file body; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::example(1);
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::config(format!("line {}: expected key = value", no + 1)))?;
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let smallest = match self.mesh {
            Some(Mesh::One(n)) => n,
            Some(Mesh::Two(nx, ny)) => nx.min(ny),
            None => MIN_CELLS,
        };
        if smallest < MIN_CELLS {
            return Err(Error::config(format!("mesh needs at least {MIN_CELLS} cells per axis")));
        }
        if let Some(t) = self.t_end {
            if !(t >= 0.0) {
                return Err(Error::config("tfinal must be nonnegative"));
            }
        }
        if let (Some(snaps), Some(t)) = (&self.snapshots, self.t_end) {
            if snaps.iter().any(|&s| !(0.0..=t).contains(&s)) {
                return Err(Error::config("snapshot times must lie in [0, tfinal]"));
            }
        }
        Ok(())
    }
}
