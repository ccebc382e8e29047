//! Scenario files: TOML with one table per command.
//!
//! Every physical quantity carries its unit in the key name
//! (`omega_rad_per_s`, `position_m`, ...). Keys that accept a sweep take
//! either a single value or an array.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::constants::{Constants, ConstantsOverride};
use crate::error::{Error, Result};
use crate::fields::Helicity;
use crate::gem::{GEMSource, SourceCatalog};
use crate::geometry::Vec3;

/// Environment variable naming a TOML file of constant overrides.
pub const CONSTANTS_ENV: &str = "SPINLIGHT_CONSTANTS";

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<String>,
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub constants: Option<ConstantsOverride>,
    pub output: Option<OutputSection>,
    pub dispersion: Option<DispersionConfig>,
    pub residual: Option<ResidualConfig>,
    pub doppler: Option<DopplerConfig>,
    pub sagnac: Option<SagnacConfig>,
    pub gem_field: Option<GemFieldConfig>,
    pub faraday: Option<FaradayConfig>,
    pub gyro_signal: Option<GyroSignalConfig>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Defaults, then the file named by `SPINLIGHT_CONSTANTS`, then the
    /// scenario's own `[constants]` table.
    pub fn constants(&self) -> Result<Constants> {
        let mut k = Constants::default();
        if let Some(path) = std::env::var_os(CONSTANTS_ENV) {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::Config(format!("cannot read constants file {}: {e}", Path::new(&path).display()))
            })?;
            k = k.with_overrides(&ConstantsOverride::from_toml_str(&text)?)?;
        }
        if let Some(o) = &self.constants {
            k = k.with_overrides(o)?;
        }
        Ok(k)
    }
}

fn default_rotation() -> OneOrMany<f64> {
    OneOrMany::One(0.0)
}

fn default_index() -> OneOrMany<f64> {
    OneOrMany::One(1.0)
}

fn default_helicities() -> OneOrMany<i64> {
    OneOrMany::Many(vec![1, -1])
}

/// Parses `±1` helicity values of the key `field`.
pub fn helicities(values: &OneOrMany<i64>, field: &str) -> Result<Vec<Helicity>> {
    values
        .to_vec()
        .into_iter()
        .map(|s| Helicity::from_sign(s).map_err(|_| Error::Config(format!("{field}: helicity must be 1 or -1, got {s}"))))
        .collect()
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DispersionConfig {
    pub omega_rad_per_s: OneOrMany<f64>,
    #[serde(default = "default_rotation")]
    pub rotation_rad_per_s: OneOrMany<f64>,
    #[serde(default = "default_index")]
    pub refractive_index: OneOrMany<f64>,
    #[serde(default = "default_helicities")]
    pub helicity: OneOrMany<i64>,
    /// Presence enables numerical recovery of the wavenumber.
    pub grid: Option<RecoveryGridConfig>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RecoveryGridConfig {
    pub points: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ResidualConfig {
    pub omega_rad_per_s: f64,
    #[serde(default)]
    pub rotation_rad_per_s: f64,
    #[serde(default = "one")]
    pub refractive_index: f64,
    pub helicity: i64,
    /// Overrides the closed-form wavenumber.
    pub wavenumber_rad_per_m: Option<f64>,
    #[serde(default = "one")]
    pub amplitude_a_per_m: f64,
    #[serde(default)]
    pub center_m: [f64; 3],
    pub half_extent_m: [f64; 3],
    pub points: OneOrMany<usize>,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DopplerConfig {
    pub omega0_rad_per_s: f64,
    pub direction: [f64; 3],
    #[serde(default)]
    pub position_m: [f64; 3],
    pub rotation_rad_per_s: [f64; 3],
    #[serde(default = "default_helicities")]
    pub helicity: OneOrMany<i64>,
    pub measurement: Option<MeasurementConfig>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MeasurementConfig {
    /// Synthesized tetrad-frame record: sample spacing and count.
    pub sample_interval_s: Option<f64>,
    pub samples: Option<usize>,
    /// Observer height on the rotation axis.
    #[serde(default)]
    pub height_m: f64,
    /// Recorded signal to analyse, relative to the scenario file.
    pub signal_csv: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SagnacConfig {
    pub omega0_rad_per_s: Option<f64>,
    pub wavelength_m: Option<f64>,
    pub rotation_rad_per_s: [f64; 3],
    pub area_m2: OneOrMany<[f64; 3]>,
}

/// A catalog name or an inline body.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SourceRef {
    Named(String),
    Inline(InlineSource),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InlineSource {
    pub mass_kg: f64,
    pub angular_momentum_kg_m2_per_s: [f64; 3],
    pub radius_m: f64,
}

impl SourceRef {
    pub fn resolve(&self, catalog: &SourceCatalog) -> Result<GEMSource> {
        match self {
            SourceRef::Named(name) => catalog.get(name),
            SourceRef::Inline(s) => {
                GEMSource::new(s.mass_kg, Vec3::from(s.angular_momentum_kg_m2_per_s), s.radius_m)
                    .map_err(|e| Error::Config(format!("source: {e}")))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GemFieldConfig {
    pub source: SourceRef,
    pub positions_m: OneOrMany<[f64; 3]>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FaradayConfig {
    pub source: SourceRef,
    /// `[z_initial, z_final]` pairs along the rotation axis.
    pub paths_m: OneOrMany<[f64; 2]>,
    pub omega_rad_per_s: f64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GyroSignalConfig {
    pub path_length_m: OneOrMany<f64>,
    #[serde(default = "default_index")]
    pub refractive_index: OneOrMany<f64>,
    pub rotation_rad_per_s: OneOrMany<f64>,
}
