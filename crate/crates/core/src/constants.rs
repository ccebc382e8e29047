//! Physical constants and numeric tolerances.
//!
//! Every operation that needs `c`, `ε₀`, `μ₀`, `G_N` or `ħ` takes a
//! [`Constants`] reference, so the whole toolkit can be run in SI units
//! (CODATA 2018) or in a nondimensional system (e.g. `c = 1`) for scaled
//! verification runs.

use serde::Deserialize;

use crate::error::{Error, Result};

/// CODATA 2018 exact speed of light [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// CODATA 2018 vacuum magnetic permeability [H/m].
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
/// CODATA 2018 Newtonian constant of gravitation [m³/(kg·s²)].
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
/// CODATA 2018 reduced Planck constant [J·s].
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;
/// Exact elementary charge [C]; converts J to eV.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Physical constants used throughout the crate.
///
/// The vacuum permittivity is not stored: it is derived as
/// `ε₀ = 1/(μ₀c²)` so that `ε₀μ₀c² = 1` holds to rounding for any override.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub c: f64,
    pub mu0: f64,
    pub g_newton: f64,
    pub hbar: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self::codata2018()
    }
}

impl Constants {
    pub const fn codata2018() -> Self {
        Self {
            c: SPEED_OF_LIGHT,
            mu0: VACUUM_PERMEABILITY,
            g_newton: GRAVITATIONAL_CONSTANT,
            hbar: REDUCED_PLANCK,
        }
    }

    /// Natural units: `c = μ₀ = ε₀ = G_N = ħ = 1`.
    pub const fn natural() -> Self {
        Self {
            c: 1.0,
            mu0: 1.0,
            g_newton: 1.0,
            hbar: 1.0,
        }
    }

    pub fn eps0(&self) -> f64 {
        1.0 / (self.mu0 * self.c * self.c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c", self.c),
            ("mu0", self.mu0),
            ("g_newton", self.g_newton),
            ("hbar", self.hbar),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "constant {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_overrides(mut self, o: &ConstantsOverride) -> Result<Self> {
        if let Some(v) = o.speed_of_light_m_per_s {
            self.c = v;
        }
        if let Some(v) = o.vacuum_permeability_h_per_m {
            self.mu0 = v;
        }
        if let Some(v) = o.gravitational_constant_m3_per_kg_s2 {
            self.g_newton = v;
        }
        if let Some(v) = o.reduced_planck_j_s {
            self.hbar = v;
        }
        self.validate()?;
        Ok(self)
    }
}

/// Partial override of [`Constants`], as read from a TOML table.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConstantsOverride {
    pub speed_of_light_m_per_s: Option<f64>,
    pub vacuum_permeability_h_per_m: Option<f64>,
    pub gravitational_constant_m3_per_kg_s2: Option<f64>,
    pub reduced_planck_j_s: Option<f64>,
}

impl ConstantsOverride {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("constants override: {e}")))
    }
}

/// Tolerances shared by the geometric invariant checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericPolicy {
    /// Relative tolerance of tetrad orthonormality and 4-velocity normalization.
    pub orthonormality: f64,
    /// Absolute tolerance of coordinate round trips.
    pub round_trip: f64,
    /// Fraction of the light-cylinder radius `c/Ω` beyond which rotating
    /// coordinates are rejected.
    pub light_cylinder_fraction: f64,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            orthonormality: 1e-12,
            round_trip: 1e-14,
            light_cylinder_fraction: 0.999,
        }
    }
}
