//! Model parameters and pointwise conversions.

use crate::error::{Error, Result};
use crate::topography::TopographyDescriptor;

/// Depths at or below this value are rejected.
pub const H_FLOOR: f64 = 1e-12;

/// Which variables are reconstructed at cell interfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Equilibrium variables (well-balanced).
    #[default]
    WellBalanced,
    /// Conservative variables `(h+Z, hu, hv, ha, hb, B)`.
    NonWellBalanced,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wb" => Ok(Variant::WellBalanced),
            "nwb" => Ok(Variant::NonWellBalanced),
            other => Err(Error::config(format!("unknown scheme `{other}` (expected wb or nwb)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub g: f64,
    /// Coriolis parameter is `f_c + beta * y`.
    pub f_c: f64,
    pub beta: f64,
    /// Generalized minmod parameter.
    pub theta: f64,
    pub cfl: f64,
    pub variant: Variant,
    pub topography: TopographyDescriptor,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            g: 1.0,
            f_c: 0.0,
            beta: 0.0,
            theta: 1.3,
            cfl: 0.25,
            variant: Variant::WellBalanced,
            topography: TopographyDescriptor::Flat,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(Error::config(format!("g must be positive, got {}", self.g)));
        }
        if !(1.0..=2.0).contains(&self.theta) {
            return Err(Error::config(format!("theta must lie in [1, 2], got {}", self.theta)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return Err(Error::config(format!("cfl must lie in (0, 0.5], got {}", self.cfl)));
        }
        if !(self.f_c.is_finite() && self.beta.is_finite()) {
            return Err(Error::config("Coriolis parameters must be finite"));
        }
        Ok(())
    }

    pub fn coriolis(&self, y: f64) -> f64 {
        coriolis_at(self, y)
    }
}

/// `f(y) = f_c + beta * y`.
pub fn coriolis_at(cfg: &ModelConfig, y: f64) -> f64 {
    cfg.f_c + cfg.beta * y
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitives {
    pub h: f64,
    pub u: f64,
    pub v: f64,
    pub a: f64,
    pub b: f64,
}

/// Converts `(h, hu, hv, ha, hb)` to `(h, u, v, a, b)`.
pub fn primitives_from_conserved(q: [f64; 5]) -> Result<Primitives> {
    let h = q[0];
    check_depth(h)?;
    Ok(Primitives { h, u: q[1] / h, v: q[2] / h, a: q[3] / h, b: q[4] / h })
}

#[inline]
pub(crate) fn check_depth(h: f64) -> Result<()> {
    // NaN fails the comparison as well.
    if h > H_FLOOR {
        Ok(())
    } else {
        Err(Error::DepthTooSmall { h })
    }
}
