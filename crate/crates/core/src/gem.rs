//! Gravitoelectromagnetism of a slowly rotating body: exterior potentials and
//! fields, the linearized metric, gyroscope precession, spin-gravity energy,
//! helicity-dependent dispersion along the rotation axis, and gravitational
//! Faraday rotation.
//!
//! Sign convention: `Φ_g = G_N M/r > 0` outside the body and `E_g = −∇Φ_g`
//! points away from it; the Newtonian acceleration is `−E_g`.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::Matrix4;
use serde::Deserialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::fields::Helicity;
use crate::geometry::{Event, MetricComponents, Vec3};
use crate::quadrature;

/// Largest `Φ_g/c²` accepted by [`gem_metric`].
pub const WEAK_FIELD_LIMIT: f64 = 0.01;

/// Relative tolerance of [`faraday_rotation_numeric`].
pub const FARADAY_QUADRATURE_TOL: f64 = 1e-10;

/// Environment variable naming a catalog file that replaces the built-in one.
pub const CATALOG_ENV: &str = "SPINLIGHT_CATALOG";

const BUILTIN_CATALOG: &str = include_str!("../data/sources.toml");

/// Rotating body of mass `M` and angular momentum `J`; the fields below are
/// valid on and outside the surface `r = body_radius`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GEMSource {
    mass: f64,
    angular_momentum: Vec3,
    body_radius: f64,
}

impl GEMSource {
    pub fn new(mass: f64, angular_momentum: Vec3, body_radius: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidInput(format!("mass must be positive, got {mass}")));
        }
        if !(body_radius > 0.0 && body_radius.is_finite()) {
            return Err(Error::InvalidInput(format!("body radius must be positive, got {body_radius}")));
        }
        if !angular_momentum.iter().all(|j| j.is_finite()) {
            return Err(Error::InvalidInput("angular momentum must be finite".into()));
        }
        Ok(Self { mass, angular_momentum, body_radius })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn angular_momentum(&self) -> Vec3 {
        self.angular_momentum
    }

    pub fn body_radius(&self) -> f64 {
        self.body_radius
    }

    /// Same body with `J → −J`.
    pub fn reversed(&self) -> Self {
        Self { angular_momentum: -self.angular_momentum, ..*self }
    }

    fn exterior(&self, x: &Vec3) -> Result<f64> {
        let r = x.norm();
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("field point must be finite".into()));
        }
        if !(r >= self.body_radius) {
            return Err(Error::InteriorPoint { radius: r, body_radius: self.body_radius });
        }
        Ok(r)
    }

    /// `J_z`, provided `J` lies along the z axis.
    fn axial_angular_momentum(&self) -> Result<f64> {
        let j = self.angular_momentum;
        if j.x.hypot(j.y) > 1e-12 * j.norm() {
            return Err(Error::InvalidInput(
                "axial propagation needs the angular momentum along the z axis".into(),
            ));
        }
        Ok(j.z)
    }
}

/// `Φ_g` [m²/s²] and `A_g` [m²/s²].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GEMPotentials {
    pub phi: f64,
    pub a: Vec3,
}

/// `E_g` and `B_g` [m/s²].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GEMFields {
    pub e: Vec3,
    pub b: Vec3,
}

/// `Φ_g = G_N M/r`, `A_g = (G_N/c)(J × x)/r³`
pub fn gem_potentials(src: &GEMSource, x: &Vec3, k: &Constants) -> Result<GEMPotentials> {
    let r = src.exterior(x)?;
    Ok(GEMPotentials {
        phi: k.g_newton * src.mass / r,
        a: src.angular_momentum.cross(x) * (k.g_newton / (k.c * r.powi(3))),
    })
}

/// `E_g = G_N M x/r³`, `B_g = (G_N/(c r⁵))[3(J·x)x − J r²]`
pub fn gem_fields(src: &GEMSource, x: &Vec3, k: &Constants) -> Result<GEMFields> {
    let r = src.exterior(x)?;
    let j = src.angular_momentum;
    let r2 = r * r;
    Ok(GEMFields {
        e: x * (k.g_newton * src.mass / (r2 * r)),
        b: (x * (3.0 * j.dot(x)) - j * r2) * (k.g_newton / (k.c * r2 * r2 * r)),
    })
}

/// `χ_g = (G_N/c)(J·x)/r³`, with `B_g = −∇χ_g`.
pub fn gravitomagnetic_scalar_potential(src: &GEMSource, x: &Vec3, k: &Constants) -> Result<f64> {
    let r = src.exterior(x)?;
    Ok(k.g_newton * src.angular_momentum.dot(x) / (k.c * r.powi(3)))
}

/// Linearized metric in `(t, x, y, z)`: `g_00 = −(1 − 2Φ_g/c²)c²`,
/// `g_0a = −(2/c)A_g`, `g_ab = (1 + 2Φ_g/c²)δ_ab`.
pub fn gem_metric(src: &GEMSource, at: &Event, k: &Constants) -> Result<MetricComponents> {
    let p = gem_potentials(src, &at.position(), k)?;
    let c = k.c;
    let ratio = p.phi / (c * c);
    if ratio > WEAK_FIELD_LIMIT {
        return Err(Error::WeakFieldViolation { ratio });
    }
    let mut g = Matrix4::identity() * (1.0 + 2.0 * ratio);
    g[(0, 0)] = -(1.0 - 2.0 * ratio) * c * c;
    for a in 0..3 {
        let g0a = -2.0 * p.a[a] / c;
        g[(0, a + 1)] = g0a;
        g[(a + 1, 0)] = g0a;
    }
    MetricComponents::new(g, c)
}

/// Gyroscope precession frequency `Ω_L = −B_g/c`.
pub fn larmor_frequency(b_g: &Vec3, k: &Constants) -> Vec3 {
    -b_g / k.c
}

/// `H = S·B_g/c`
pub fn spin_gravity_energy(spin: &Vec3, b_g: &Vec3, k: &Constants) -> f64 {
    spin.dot(b_g) / k.c
}

/// Wavenumber kept as the helicity-independent carrier `ω/c` plus the
/// helicity-dependent shift, so that differences between helicities do not
/// lose the shift to cancellation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitWavenumber {
    pub carrier: f64,
    pub shift: f64,
}

impl SplitWavenumber {
    pub fn total(&self) -> f64 {
        self.carrier + self.shift
    }

    /// `self − other`, carriers first.
    pub fn difference(&self, other: &Self) -> f64 {
        (self.carrier - other.carrier) + (self.shift - other.shift)
    }
}

/// `ck± = ω ∓ n̂·B_g/c` to first order in `B_g`.
pub fn gravitomagnetic_dispersion(
    omega: f64,
    src: &GEMSource,
    x: &Vec3,
    n_hat: &Vec3,
    helicity: Helicity,
    k: &Constants,
) -> Result<SplitWavenumber> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidInput(format!("frequency must be positive, got {omega}")));
    }
    if !((n_hat.norm() - 1.0).abs() < 1e-9) {
        return Err(Error::InvalidInput(format!(
            "propagation direction must be a unit vector, |n| = {}",
            n_hat.norm()
        )));
    }
    let b = gem_fields(src, x, k)?.b;
    let coupling = n_hat.dot(&b) / k.c;
    if coupling.abs() > 1e-3 * omega {
        log::warn!("gravitomagnetic coupling {coupling:.3e} rad/s is not small against omega = {omega:.3e}");
    }
    Ok(SplitWavenumber {
        carrier: omega / k.c,
        shift: -helicity.sign() * coupling / k.c,
    })
}

fn check_axial_path(src: &GEMSource, z_i: f64, z_f: f64) -> Result<f64> {
    if !(z_i.is_finite() && z_f.is_finite()) {
        return Err(Error::InvalidInput("path endpoints must be finite".into()));
    }
    if z_f < z_i {
        return Err(Error::InvalidInput(format!("path must run outward, got z_i = {z_i} > z_f = {z_f}")));
    }
    if !(z_i >= src.body_radius) {
        return Err(Error::InteriorPoint { radius: z_i.abs(), body_radius: src.body_radius });
    }
    src.axial_angular_momentum()
}

/// `Δ = (G_N J/c³)(1/z_i² − 1/z_f²)` for a path along the rotation axis.
pub fn faraday_rotation_axial(src: &GEMSource, z_i: f64, z_f: f64, k: &Constants) -> Result<f64> {
    let j = check_axial_path(src, z_i, z_f)?;
    Ok(k.g_newton * j / k.c.powi(3) * (1.0 / (z_i * z_i) - 1.0 / (z_f * z_f)))
}

/// `Δ = ½∫(k⁻ − k⁺)dz` by adaptive quadrature in `u = 1/z²`.
pub fn faraday_rotation_numeric(src: &GEMSource, z_i: f64, z_f: f64, omega: f64, k: &Constants) -> Result<f64> {
    check_axial_path(src, z_i, z_f)?;
    if z_i == z_f {
        return Ok(0.0);
    }
    let n_hat = Vec3::z();
    let mut failure = None;
    let integrand = |u: f64| {
        let z = 1.0 / u.sqrt();
        let x = Vec3::new(0.0, 0.0, z);
        let kp = gravitomagnetic_dispersion(omega, src, &x, &n_hat, Helicity::Positive, k);
        let km = gravitomagnetic_dispersion(omega, src, &x, &n_hat, Helicity::Negative, k);
        match (km, kp) {
            (Ok(km), Ok(kp)) => 0.5 * km.difference(&kp) * 0.5 * u.powf(-1.5),
            (Err(e), _) | (_, Err(e)) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let result = quadrature::integrate(integrand, 1.0 / (z_f * z_f), 1.0 / (z_i * z_i), FARADAY_QUADRATURE_TOL);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(result?.value)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    sources: BTreeMap<String, CatalogEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogEntry {
    mass_kg: f64,
    angular_momentum_kg_m2_per_s: [f64; 3],
    radius_m: f64,
}

/// Named gravitating bodies.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceCatalog {
    sources: BTreeMap<String, GEMSource>,
}

impl SourceCatalog {
    /// Catalog shipped with the library (Earth and Sun).
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN_CATALOG).expect("built-in catalog is valid")
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: CatalogFile =
            toml::from_str(text).map_err(|e| Error::Config(format!("source catalog: {e}")))?;
        let sources = file
            .sources
            .into_iter()
            .map(|(name, e)| {
                GEMSource::new(e.mass_kg, Vec3::from(e.angular_momentum_kg_m2_per_s), e.radius_m)
                    .map(|s| (name.clone(), s))
                    .map_err(|err| Error::Config(format!("source catalog entry `{name}`: {err}")))
            })
            .collect::<Result<_>>()?;
        Ok(Self { sources })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read source catalog {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// The file named by `SPINLIGHT_CATALOG` if set, else the built-in catalog.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => Self::load(Path::new(&path)),
            None => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, name: &str) -> Result<GEMSource> {
        self.sources.get(name).copied().ok_or_else(|| {
            let known: Vec<_> = self.sources.keys().map(String::as_str).collect();
            Error::Config(format!("unknown source `{name}`; known: {}", known.join(", ")))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sources.keys().map(String::as_str)
    }
}
